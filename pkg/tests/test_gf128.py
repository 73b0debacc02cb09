import random

import numpy as np
from hypothesis import given, settings
from hypothesis import strategies as st

from gf2poly import gf128
from gf2poly.gf128 import clmul, clmul64, gf128_mul, gf128_reduce, gf128_sqr

u64 = st.integers(0, 2**64 - 1)
u128 = st.integers(0, 2**128 - 1)


def test_clmul64_small_cases():
    assert clmul64(3, 3) == 5
    a = 0xDEADBEEFCAFEF00D
    assert clmul64(a, 2) == a << 1


@given(u64, u64)
def test_clmul64_matches_shift_xor(a, b):
    assert clmul64(a, b) == clmul(a, b)


def test_x64_squared_reduces_to_low_terms():
    assert gf128_mul(1 << 64, 1 << 64) == 0x87


@given(u128, u128)
def test_mul_matches_reduced_oracle(a, b):
    assert gf128_mul(a, b) == gf128_reduce(clmul(a, b))


@given(u128)
def test_identity_and_square(a):
    assert gf128_mul(1, a) == a
    assert gf128_sqr(a) == gf128_mul(a, a)


@given(u128, u128)
def test_square_is_additive(a, b):
    assert gf128_sqr(a ^ b) == gf128_sqr(a) ^ gf128_sqr(b)


def test_field_axioms_sampled():
    rng = np.random.default_rng(7)
    n = 10_000
    a, b, c = (rng.integers(0, 2**64, size=(n, 2), dtype=np.uint64) for _ in range(3))
    mul = gf128.gf128_mul_arrays
    assert np.array_equal(mul(a, b), mul(b, a))
    assert np.array_equal(mul(a, mul(b, c)), mul(mul(a, b), c))
    assert np.array_equal(mul(a, b ^ c), mul(a, b) ^ mul(a, c))
    one = np.zeros_like(a)
    one[:, 0] = 1
    assert np.array_equal(mul(a, one), a)


def test_array_kernel_matches_scalar():
    r = random.Random(1)
    xs = [r.getrandbits(128) for _ in range(200)]
    ys = [r.getrandbits(128) for _ in range(200)]
    got = gf128.from_array(gf128.gf128_mul_arrays(gf128.to_array(xs), gf128.to_array(ys)))
    assert got == [gf128_mul(x, y) for x, y in zip(xs, ys)]


@settings(max_examples=30)
@given(u128)
def test_frobenius_has_order_dividing_128(a):
    assert gf128.gf128_pow2k(a, 128) == a
