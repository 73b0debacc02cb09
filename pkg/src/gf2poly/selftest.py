"""Fast invariant checks grouped for the ``selftest`` command."""

from __future__ import annotations

import random
from typing import Callable

import numpy as np

from . import cantor, frobenius, gf128, lch_fft, novelpoly, pipeline, tower
from .bitmatrix import LinearSolver
from .bitpoly import BitPoly, mul_oracle
from .context import FieldContext, get_context

S_EXPANSIONS = {
    0: {1},
    1: {1, 2},
    2: {1, 4},
    3: {1, 2, 4, 8},
    4: {1, 16},
    5: {1, 2, 16, 32},
    6: {1, 4, 16, 64},
    7: {1, 2, 4, 8, 16, 32, 64, 128},
}

SIXTEEN_POINT_LAYERS = [
    (3, {0}, True),
    (2, {0x0, 0x2}, False),
    (1, {0x0, 0x2, 0x5, 0x7}, False),
    (0, set(range(0, 16, 2)), False),
]


class CheckFailed(AssertionError):
    pass


def _require(cond: bool, what: str) -> None:
    if not cond:
        raise CheckFailed(what)


def words_of(values: list[int], width: int = 2) -> np.ndarray:
    out = np.zeros((len(values), width), dtype=np.uint64)
    for i, v in enumerate(values):
        for t in range(width):
            out[i, t] = (v >> (64 * t)) & gf128.MASK64
    return out


def ints_of(arr: np.ndarray) -> list[int]:
    return [sum(int(row[t]) << (64 * t) for t in range(arr.shape[1])) for row in arr]


def check_cantor(ctx: FieldContext, rng: random.Random) -> None:
    beta = ctx.basis.beta
    _require(beta[0] == 1, "beta_0 is not 1")
    _require(ctx.basis.chain_holds(), "beta_i^2 + beta_i != beta_{i-1}")
    rank = LinearSolver(ctx.iso("cantor", "gf128").matrix).rank
    _require(rank == 128, f"basis rank {rank}")
    c2g = ctx.iso("cantor", "gf128")
    t2g = ctx.iso("tower", "gf128")
    t2c = ctx.iso("tower", "cantor")
    for _ in range(64):
        j = rng.getrandbits(128)
        x = c2g.apply(j)
        _require(gf128.gf128_sqr(x) ^ x == c2g.apply(j >> 1), "s_1 is not a right shift of Cantor indices")
        a, b = rng.getrandbits(128), rng.getrandbits(128)
        _require(
            t2g.apply(tower.tower_mul(a, b, 7)) == gf128.gf128_mul(t2g.apply(a), t2g.apply(b)),
            "tower -> gf128 map is not multiplicative",
        )
        alpha = rng.getrandbits(32)
        i = rng.randrange(32)
        _require(t2c.apply(ctx.sk.eval(i, alpha)) == t2c.apply(alpha) >> i, "tower and Cantor s_i disagree")


def check_expansions(ctx: FieldContext, rng: random.Random) -> None:
    for i, want in S_EXPANSIONS.items():
        _require(set(cantor.linearized_expansion(i)) == want, f"s_{i} expansion")
    for i in range(1, 65):
        two = len(cantor.linearized_expansion(i)) == 2
        _require(two == (i & (i - 1) == 0), f"two-term test for s_{i}")


def check_layers(ctx: FieldContext, rng: random.Random) -> None:
    g = [rng.getrandbits(128) | 1 for _ in range(8)] + [0] * 8
    stats = lch_fft.FFTStats()
    lch_fft.fft(words_of(g), "tower", 0, ctx, stats=stats)
    got = [(r.k, set(r.multipliers), r.fanout) for r in stats.layers]
    _require(got == SIXTEEN_POINT_LAYERS, f"layer multipliers {got}")


def check_props(ctx: FieldContext, rng: random.Random) -> None:
    for k in range(1, 32):
        _require(ctx.sk.eval(k, 1 << k) == 1, f"s_{k}(v_{k}) != 1")
    for i in range(32):
        v = 1 << i
        _require(tower.tower_mul(v, v, 5) ^ v < v, f"v_{i}^2 + v_{i} outside V_{i}")
    for level in range(1, 9):
        g = tower.generator(level)
        _require(tower.tower_mul(g, g, level) ^ g == tower.top_basis(level - 1), f"defining relation at level {level}")
    for _ in range(32):
        i = rng.randrange(1, 32)
        a = rng.getrandbits(32)
        low = rng.getrandbits(i)
        _require(ctx.sk.eval(i, a) == ctx.sk.eval(i, a ^ low), f"s_{i} depends on its low bits")
        _require(ctx.sk.eval(i, a) < 1 << (32 - i), f"s_{i} output too wide")


def check_roundtrip(ctx: FieldContext, rng: random.Random) -> None:
    nrng = np.random.default_rng(rng.getrandbits(32))
    for m in range(1, 9):
        f = nrng.integers(0, 2**63, size=(1 << m, 2), dtype=np.uint64)
        _require(np.array_equal(novelpoly.i_basis_cvt(novelpoly.basis_cvt(f)), f), "basis conversion roundtrip")
        for rep in lch_fft.REPRS:
            alpha = rng.getrandbits(8) << m
            e = lch_fft.fft(f, rep, alpha, ctx)
            _require(np.array_equal(lch_fft.ifft(e, rep, alpha, ctx), f), f"{rep} transform roundtrip")
    for m in (1, 3, 6):
        plan = frobenius.make_plan(m, ctx=ctx)
        _require(frobenius.frob_order_check(plan), "shift element order is not 128")
        a = BitPoly.random(plan.nbits, nrng)
        _require(frobenius.frob_interp(frobenius.frob_eval(a, plan), plan) == a, "Frobenius roundtrip")


def check_oracle(ctx: FieldContext, rng: random.Random, cases: int = 50) -> None:
    nrng = np.random.default_rng(rng.getrandbits(32))
    backends = [b for b in pipeline.BACKENDS if b != "oracle"]
    for c in range(cases):
        a = BitPoly.random(int(nrng.integers(1, 1 << 14)), nrng)
        b = BitPoly.random(int(nrng.integers(1, 1 << 14)), nrng)
        want = mul_oracle(a, b)
        for be in backends:
            _require(pipeline.multiply(a, b, be, ctx) == want, f"{be} differs from the oracle on case {c}")


GROUPS: dict[str, Callable[[FieldContext, random.Random], None]] = {
    "cantor": check_cantor,
    "expansions": check_expansions,
    "layers": check_layers,
    "props": check_props,
    "roundtrip": check_roundtrip,
    "oracle": check_oracle,
}


def run_selftest(seed: int = 0, ctx: FieldContext | None = None) -> dict[str, str | None]:
    """Run every group; value is None on success or the failure message."""
    ctx = ctx or get_context()
    results: dict[str, str | None] = {}
    for name, fn in GROUPS.items():
        rng = random.Random(f"{seed}:{name}")
        try:
            fn(ctx, rng)
            results[name] = None
        except Exception as exc:  # any failure marks the group, the rest still run
            results[name] = f"{type(exc).__name__}: {exc}"
    return results
