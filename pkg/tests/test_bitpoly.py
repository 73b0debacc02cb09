import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from gf2poly.bitpoly import (
    BitPoly,
    BlockPoly,
    ParseError,
    interleaved_combine,
    mul_oracle,
    mul_schoolbook,
    mul_words,
    mul_words_schoolbook,
    split,
)
from gf2poly.gf128 import clmul

P = lambda v: BitPoly.from_int(v)  # noqa: E731


def test_small_products():
    assert mul_oracle(P(3), P(3)) == P(5)
    assert mul_oracle(P(0b111), P(0b11)) == P(0b1001)
    assert mul_oracle(P(0x1234), BitPoly.zero(10)).is_zero()
    assert mul_oracle(P(0x1234), BitPoly.zero(10)).nbits == 0


def test_result_size():
    a, b = BitPoly.from_int(5, 100), BitPoly.from_int(3, 70)
    assert mul_oracle(a, b).nbits == 170


@settings(max_examples=40)
@given(st.integers(0, 2**3000), st.integers(0, 2**3000))
def test_matches_bigint_clmul(x, y):
    assert mul_oracle(P(x), P(y)).to_int() == clmul(x, y)


def test_ring_laws():
    rng = np.random.default_rng(1)
    for _ in range(10):
        a, b, c = (BitPoly.random(int(rng.integers(1, 1 << 12)), rng) for _ in range(3))
        assert mul_oracle(a, b) == mul_oracle(b, a)
        assert mul_oracle(mul_oracle(a, b), c) == mul_oracle(a, mul_oracle(b, c))
        assert mul_oracle(a, b ^ c) == mul_oracle(a, b) ^ mul_oracle(a, c)


def test_degree_adds():
    rng = np.random.default_rng(2)
    for _ in range(50):
        a = BitPoly.random(int(rng.integers(1, 4000)), rng)
        b = BitPoly.random(int(rng.integers(1, 4000)), rng)
        if a.is_zero() or b.is_zero():
            continue
        assert mul_oracle(a, b).degree() == a.degree() + b.degree()


def test_karatsuba_equals_schoolbook_around_threshold():
    rng = np.random.default_rng(3)
    for _ in range(1000):
        la, lb = rng.integers(56, 140, size=2)
        a = rng.integers(0, 2**64, size=int(la), dtype=np.uint64)
        b = rng.integers(0, 2**64, size=int(lb), dtype=np.uint64)
        assert np.array_equal(mul_words(a, b), mul_words_schoolbook(a, b))


def test_karatsuba_deep_recursion():
    rng = np.random.default_rng(4)
    a, b = BitPoly.random(20000, rng), BitPoly.random(13000, rng)
    assert mul_oracle(a, b, threshold=2) == mul_schoolbook(a, b)


def test_split_examples():
    s = split(BitPoly.from_int(3 << 128, 130), 64)
    assert s.n == 3 and int(s.blocks[2, 0]) == 3
    a = BitPoly.from_int(0xABCDEF, 64)
    s = split(a, 64)
    assert s.n == 1 and int(s.blocks[0, 0]) == 0xABCDEF and int(s.blocks[0, 1]) == 0
    s = split(BitPoly.from_int(1 << 64), 64)
    assert list(s.blocks[:, 0]) == [0, 1]


@pytest.mark.parametrize("w", [64, 128])
def test_split_roundtrip(w):
    rng = np.random.default_rng(w)
    a = BitPoly.random(1000, rng)
    s = split(a, w, 32)
    q = w // 64
    assert not s.blocks[:, q:].any()
    assert interleaved_combine(BlockPoly(s.blocks, w)) == a


def test_combine_examples():
    c = BlockPoly(np.array([[0, 1], [1, 0]], dtype=np.uint64), 64)
    assert interleaved_combine(c).is_zero()
    blk = np.array([[0x1234, 0x5678]], dtype=np.uint64)
    assert interleaved_combine(BlockPoly(blk, 64)).to_int() == 0x1234 | 0x5678 << 64


@pytest.mark.parametrize("w", [64, 128])
def test_combine_of_block_products_is_product(w):
    rng = np.random.default_rng(5)
    a, b = BitPoly.random(512, rng), BitPoly.random(512, rng)
    sa, sb = split(a, w), split(b, w)
    q = w // 64
    n = sa.n + sb.n
    out = np.zeros((n, 2 * q), dtype=np.uint64)
    for i in range(sa.n):
        for j in range(sb.n):
            x = BitPoly(sa.blocks[i, :q])
            y = BitPoly(sb.blocks[j, :q])
            out[i + j] ^= mul_oracle(x, y).resized(2 * w).words
    assert interleaved_combine(BlockPoly(out, w)) == mul_oracle(a, b)


def test_hex_and_binary_io():
    rng = np.random.default_rng(6)
    a = BitPoly.random(777, rng)
    assert BitPoly.from_hex(a.to_hex()) == a
    assert BitPoly.from_hex("0x1f\n") == P(0x1F)
    assert BitPoly.from_bytes(a.to_bytes()) == a
    with pytest.raises(ParseError) as e:
        BitPoly.from_hex("12z3")
    assert e.value.offset == 2
    with pytest.raises(ParseError):
        BitPoly.from_bytes(b"\x00" * 9)


def test_invariants_enforced():
    with pytest.raises(ValueError):
        BitPoly([0xFF], 4)
    p = BitPoly.from_int(0b1011, 130)
    assert len(p.words) == 3
    assert p.degree() == 3 and BitPoly.zero(5).degree() == -1
