import random

import numpy as np
import pytest

from gf2poly import lch_fft
from gf2poly.lch_fft import FFTStats, fft, fft_reference, ifft, multiplier_for, naive_eval


def words(vals, width=2):
    out = np.zeros((len(vals), width), dtype=np.uint64)
    for i, v in enumerate(vals):
        for t in range(width):
            out[i, t] = (v >> (64 * t)) & (2**64 - 1)
    return out


def ints(arr):
    return [sum(int(r[t]) << (64 * t) for t in range(arr.shape[1])) for r in arr]


CASES = [("tower", 7, 2), ("tower", 8, 4), ("gf128", 7, 2)]


@pytest.mark.parametrize("rep,level,width", CASES)
def test_constant_polynomial(ctx, rep, level, width):
    g = [0xABC] + [0] * 15
    assert ints(fft(words(g, width), rep)) == [0xABC] * 16
    assert ints(ifft(words([0xABC] * 16, width), rep)) == g


@pytest.mark.parametrize("rep", ["tower", "gf128"])
def test_size_two_by_hand(rep):
    assert ints(fft(words([3, 5]), rep)) == [3, 3 ^ 5]
    assert ints(ifft(words([3, 6]), rep)) == [3, 3 ^ 6]


@pytest.mark.parametrize("rep,level,width", CASES)
def test_matches_naive_oracle(ctx, rep, level, width):
    r = random.Random(level)
    for m in range(1, 7):
        g = [r.getrandbits(64 * width) for _ in range(1 << m)]
        alpha = r.getrandbits(12) << m
        assert ints(fft(words(g, width), rep, alpha)) == naive_eval(g, rep, alpha, ctx, level)


@pytest.mark.parametrize("rep,level,width", CASES)
def test_matches_recursive_reference(ctx, rep, level, width):
    r = random.Random(11 + level)
    for m in range(0, 11):
        g = [r.getrandbits(64 * width) for _ in range(1 << m)]
        alpha = r.getrandbits(16) << m
        assert ints(fft(words(g, width), rep, alpha)) == fft_reference(g, rep, alpha, ctx, level)


def test_roundtrip_many():
    rng = np.random.default_rng(1)
    for t in range(1000):
        m = int(rng.integers(1, 13))
        rep = ("tower", "gf128")[t % 2]
        g = rng.integers(0, 2**64, size=(1 << m, 2), dtype=np.uint64)
        assert np.array_equal(ifft(fft(g, rep), rep), g)


def test_linear():
    rng = np.random.default_rng(2)
    a, b = (rng.integers(0, 2**64, size=(256, 2), dtype=np.uint64) for _ in range(2))
    for rep in ("tower", "gf128"):
        assert np.array_equal(fft(a ^ b, rep), fft(a, rep) ^ fft(b, rep))


def test_sixteen_point_layer_multipliers():
    r = random.Random(3)
    g = [r.getrandbits(128) | 1 for _ in range(8)] + [0] * 8
    stats = FFTStats()
    fft(words(g), "tower", stats=stats)
    layers = [(x.k, set(x.multipliers), x.fanout) for x in stats.layers]
    assert layers == [
        (3, {0}, True),
        (2, {0, 0x2}, False),
        (1, {0, 0x2, 0x5, 0x7}, False),
        (0, set(range(0, 16, 2)), False),
    ]


def test_multiplier_examples(ctx):
    assert multiplier_for("tower", 2, 0x8) == 0x2
    for k in range(1, 20):
        assert multiplier_for("tower", k, 1 << k) == 1
        assert multiplier_for("gf128", k, 1 << k) == 1
        assert multiplier_for("tower", k, 0) == 0
    with pytest.raises(ValueError):
        multiplier_for("tower", 3, 1 << 40)


@pytest.mark.parametrize("rep", ["tower", "gf128"])
def test_layer_tables_agree_with_lazy_lookup(ctx, rep):
    m, alpha = 9, 0x5A00
    for k in range(m):
        table = lch_fft.layer_multipliers(rep, m, k, alpha, ctx)
        for blk in range(0, len(table), 7):
            w = table[blk]
            val = int(w) if rep == "tower" else int(w[0]) | int(w[1]) << 64
            assert val == multiplier_for(rep, k, blk << (k + 1), alpha, ctx)


@pytest.mark.parametrize("m", range(1, 13))
def test_multiplication_count(m):
    stats = FFTStats()
    fft(np.ones((1 << m, 2), dtype=np.uint64), "tower", stats=stats)
    assert stats.mults <= m << (m - 1)


def test_shift_consistency(ctx):
    r = random.Random(4)
    g = [r.getrandbits(128) for _ in range(16)]
    base = naive_eval(g, "tower", 0, ctx)
    # evaluating on a shifted coset samples the same polynomial elsewhere
    alpha = 0x30
    shifted = ints(fft(words(g), "tower", alpha))
    big = naive_eval(g + [0] * 48, "tower", 0, ctx)
    assert shifted == [big[i ^ alpha] for i in range(16)]
    assert base == big[:16]


def test_bad_size():
    with pytest.raises(ValueError):
        fft(np.zeros((3, 2), dtype=np.uint64))
