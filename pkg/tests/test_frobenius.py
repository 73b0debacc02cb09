import numpy as np
import pytest

from gf2poly import frobenius as F
from gf2poly import gf128
from gf2poly.bitmatrix import BitMatrix
from gf2poly.bitpoly import BitPoly, mul_oracle
from gf2poly.pipeline import multiply


@pytest.fixture(scope="module")
def plan3():
    return F.make_plan(3)


def test_constant_evaluates_to_one(plan3):
    assert gf128.from_array(F.frob_eval(BitPoly.from_int(1), plan3)) == [1] * 8


def test_x_evaluates_to_points(plan3, ctx):
    got = gf128.from_array(F.frob_eval(BitPoly.from_int(2), plan3))
    assert got == [ctx.beta(67) ^ ctx.basis.element(i) for i in range(8)]


def test_random_vs_horner(plan3):
    rng = np.random.default_rng(1)
    a = BitPoly.random(plan3.nbits, rng)
    got = gf128.from_array(F.frob_eval(a, plan3))
    assert got == [F.horner_eval(a, plan3.point(i)) for i in range(8)]


def test_eval_is_multiplicative(plan3):
    rng = np.random.default_rng(2)
    a, b = BitPoly.random(500, rng), BitPoly.random(523, rng)
    ea, eb = F.frob_eval(a, plan3), F.frob_eval(b, plan3)
    assert np.array_equal(F.frob_eval(mul_oracle(a, b), plan3), gf128.gf128_mul_arrays(ea, eb))


def test_eval_linear(plan3):
    rng = np.random.default_rng(3)
    a, b = BitPoly.random(1024, rng), BitPoly.random(1024, rng)
    assert np.array_equal(F.frob_eval(a ^ b, plan3), F.frob_eval(a, plan3) ^ F.frob_eval(b, plan3))


@pytest.mark.parametrize("m", [1, 3, 6])
def test_roundtrip(m):
    plan = F.make_plan(m)
    rng = np.random.default_rng(m)
    for _ in range(1000 if m < 6 else 200):
        a = BitPoly.random(plan.nbits, rng)
        assert F.frob_interp(F.frob_eval(a, plan), plan) == a


def test_zero_and_monomial(plan3):
    assert F.frob_interp(np.zeros((8, 2), dtype=np.uint64), plan3).is_zero()
    x128 = BitPoly.monomial(128)
    assert F.frob_interp(F.frob_eval(x128, plan3), plan3) == x128


def test_encode_matrix(plan3, ctx):
    cols = F.encode_columns(3, 67, ctx)
    assert plan3.encode.matrix.columns == cols
    for j in (1, 2, 5, 127):
        want = 1
        for b in range(7):
            if j >> b & 1:
                want = gf128.gf128_mul(want, plan3.layer_multiplier(b))
        assert cols[j] == want
    # s_{m+b}(beta_{m+64}) = beta_{64-b}
    assert [plan3.layer_multiplier(b) for b in range(7)] == [ctx.beta(64 - b) for b in range(7)]
    assert plan3.decode.matrix.compose(plan3.encode.matrix) == BitMatrix.identity(128)


@pytest.mark.parametrize("m", [0, 2, 6])
def test_matrix_encode_matches_seven_layers(m):
    plan = F.make_plan(m)
    rng = np.random.default_rng(10 + m)
    a = BitPoly.random(plan.nbits, rng)
    assert gf128.from_array(F.frob_eval(a, plan)) == F.truncated_eval_reference(a, plan)
    from gf2poly.novelpoly import basis_cvt

    bits = basis_cvt(a.to_bits().copy())
    lanes = F._lanes_from_bits(bits, plan.n)
    assert gf128.from_array(plan.encode.apply_array(lanes)) == F.seven_layer_encode(bits, plan)


def test_order_check():
    assert F.frob_order_check(F.make_plan(3))
    assert F.frob_order_check(F.make_plan(10))
    assert not F.frob_order_check(F.make_plan(3), 1)


def test_conjugates_cover_128n_points(plan3, ctx):
    pts = F.conjugate_points(plan3)
    assert len(pts) == 128 * plan3.n
    assert {plan3.point(i) for i in range(plan3.n)} <= pts


def test_multiply():
    assert F.frob_multiply(BitPoly.from_int(3), BitPoly.from_int(3)) == BitPoly.from_int(5)
    rng = np.random.default_rng(4)
    a, b = BitPoly.random(1 << 13, rng), BitPoly.random(1 << 13, rng)
    assert F.frob_multiply(a, b) == mul_oracle(a, b)
    a, b = BitPoly.random(1 << 16, rng), BitPoly.random(1 << 16, rng)
    assert F.frob_multiply(a, b) == multiply(a, b, "tower128")


def test_size_cap():
    with pytest.raises(F.FrobeniusSizeError):
        F.make_plan(26)
    with pytest.raises(F.FrobeniusSizeError):
        F.frob_eval(BitPoly.monomial(2000), F.make_plan(3))
