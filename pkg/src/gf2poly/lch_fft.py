"""LCH additive FFT: evaluate a polynomial given in the novelpoly basis at
the affine subspace {phi(i) + alpha : 0 <= i < 2^m}.

Two field representations share the butterfly engine:

* ``"tower"``: elements are tower-field words (N, 2) at level 7 or (N, 4) at
  level 8.  Points are tower values; a layer multiplier s_k(point) is a
  subfield element below 2^32 taken from the S_k tables.
* ``"gf128"``: elements are polynomial-basis GF(2^128) words (N, 2).  Points
  are Cantor indices; s_k(phi_beta(j)) = phi_beta(j >> k) is mapped into the
  polynomial basis by the Cantor isomorphism.

The engine runs layer k = m-1 down to 0 in place.  Butterflies whose
multiplier is 0 or 1 issue no field multiplication.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np
from numba import njit

from . import gf128
from .context import FieldContext, get_context
from .gf128 import mul_prepared, prepare_constant
from .tower import addmul_row, prepare_scalar, small_tables, tower_mul

REPRS = ("tower", "gf128")
MAX_LOG_POINTS = 32


@dataclass
class LayerRecord:
    k: int
    multipliers: frozenset
    fanout: bool  # upper halves were all zero, so the layer only copies


@dataclass
class FFTStats:
    mults: int = 0
    layers: list = field(default_factory=list)


# ------------------------------------------------------------ multipliers


def _check_repr(rep: str) -> None:
    if rep not in REPRS:
        raise ValueError(f"unknown representation {rep!r}")


def multiplier_for(rep: str, k: int, base: int, alpha: int = 0, ctx: FieldContext | None = None) -> int:
    """s_k(phi(base) + alpha) as a field value of the representation."""
    _check_repr(rep)
    ctx = ctx or get_context()
    idx = base ^ alpha
    if rep == "tower":
        if idx >> 32:
            raise ValueError("tower multipliers are tabulated for 32-bit points only")
        return idx if k == 0 else ctx.sk.eval(k, idx)
    return ctx.iso("cantor", "gf128").apply(idx >> k)


@lru_cache(maxsize=16)
def _layer_multipliers(rep: str, m: int, k: int, alpha: int, ctx: FieldContext) -> np.ndarray:
    nblocks = 1 << (m - k - 1)
    blk = np.arange(nblocks, dtype=np.int64)
    if rep == "tower":
        idx = (blk << (k + 1)) ^ alpha
        out = idx if k == 0 else ctx.sk.eval_array(k, idx)
    else:
        hi = alpha >> k
        idx = np.empty((nblocks, 2), dtype=np.uint64)
        idx[:, 0] = (blk << 1).astype(np.uint64) ^ np.uint64(hi & gf128.MASK64)
        idx[:, 1] = np.uint64((hi >> 64) & gf128.MASK64)
        out = ctx.iso("cantor", "gf128").apply_array(idx)
    out.setflags(write=False)
    return out


def layer_multipliers(rep: str, m: int, k: int, alpha: int = 0, ctx: FieldContext | None = None) -> np.ndarray:
    """Multipliers for every block of layer k of a size-2^m transform.

    Tower: int64 array of subfield values; gf128: (blocks, 2) uint64 words.
    """
    _check_repr(rep)
    if not 0 <= k < m:
        raise ValueError(f"layer {k} outside a {m}-layer transform")
    if rep == "tower" and (m > MAX_LOG_POINTS or alpha >> 32):
        raise ValueError("tower transforms are limited to 2^32 points")
    return _layer_multipliers(rep, m, k, alpha, ctx or get_context())


def _to_int(w) -> int:
    w = np.atleast_1d(w)
    return int(w[0]) if len(w) == 1 else int(w[0]) | int(w[1]) << 64


# ------------------------------------------------------------ kernels


@njit(cache=True)
def _tower_layer(a, a8, k, ws, inverse, mt):
    half = 1 << k
    width = a.shape[1]
    cb = np.zeros(9, dtype=np.uint8)
    for blk in range(ws.shape[0]):
        base = blk << (k + 1)
        w = ws[blk]
        level = 0
        if w > 1:
            level = prepare_scalar(w, mt, cb)
        for j in range(base, base + half):
            v = j + half
            if inverse:
                for t in range(width):
                    a[v, t] ^= a[j, t]
            if w == 1:
                for t in range(width):
                    a[j, t] ^= a[v, t]
            elif w > 1:
                addmul_row(a8, j, v, level, cb, mt)
            if not inverse:
                for t in range(width):
                    a[v, t] ^= a[j, t]


@njit(cache=True)
def _gf128_layer(a, k, ws, inverse):
    half = 1 << k
    tabs = np.empty((3, 16, 2), dtype=np.uint64)
    one = np.uint64(1)
    zero = np.uint64(0)
    for blk in range(ws.shape[0]):
        base = blk << (k + 1)
        w0 = ws[blk, 0]
        w1 = ws[blk, 1]
        kind = 2
        if w1 == zero and w0 == zero:
            kind = 0
        elif w1 == zero and w0 == one:
            kind = 1
        else:
            prepare_constant(w0, w1, tabs)
        for j in range(base, base + half):
            v = j + half
            if inverse:
                a[v, 0] ^= a[j, 0]
                a[v, 1] ^= a[j, 1]
            if kind == 1:
                a[j, 0] ^= a[v, 0]
                a[j, 1] ^= a[v, 1]
            elif kind == 2:
                lo, hi = mul_prepared(tabs, a[v, 0], a[v, 1])
                a[j, 0] ^= lo
                a[j, 1] ^= hi
            if not inverse:
                a[v, 0] ^= a[j, 0]
                a[v, 1] ^= a[j, 1]


# ------------------------------------------------------------ transforms


def _prepare(g: np.ndarray, rep: str, inplace: bool) -> tuple[np.ndarray, int]:
    _check_repr(rep)
    a = np.asarray(g, dtype=np.uint64)
    if a.ndim != 2 or a.shape[1] not in ((2, 4) if rep == "tower" else (2,)):
        raise ValueError(f"bad element array shape {a.shape} for {rep}")
    n = a.shape[0]
    if n < 1 or n & (n - 1):
        raise ValueError(f"transform size {n} is not a power of two")
    if not inplace or not a.flags.c_contiguous:
        a = np.array(a, dtype=np.uint64, order="C", copy=True)
    return a, n.bit_length() - 1


def _mult_count(ws: np.ndarray, rep: str, k: int) -> int:
    if rep == "tower":
        busy = int(np.count_nonzero(ws > 1))
    else:
        busy = int(np.count_nonzero((ws[:, 1] != 0) | (ws[:, 0] > 1)))
    return busy << k


def _record(stats: FFTStats, a: np.ndarray, ws: np.ndarray, rep: str, k: int) -> None:
    half = 1 << k
    blocks = a.reshape(-1, 2 * half, a.shape[1])
    fanout = not blocks[:, half:].any()
    values = frozenset(int(w) for w in ws) if rep == "tower" else frozenset(_to_int(w) for w in ws)
    stats.layers.append(LayerRecord(k, values, fanout))


def _run(a, m, rep, alpha, ctx, inverse, stats):
    mt = small_tables().mul256
    layers = range(m) if inverse else range(m - 1, -1, -1)
    a8 = a.view(np.uint8).reshape(a.shape[0], -1)
    for k in layers:
        ws = layer_multipliers(rep, m, k, alpha, ctx)
        if stats is not None:
            if not inverse:
                _record(stats, a, ws, rep, k)
            stats.mults += _mult_count(ws, rep, k)
        if rep == "tower":
            _tower_layer(a, a8, k, ws, inverse, mt)
        else:
            _gf128_layer(a, k, ws, inverse)
    return a


def fft(g: np.ndarray, rep: str = "tower", alpha: int = 0, ctx: FieldContext | None = None,
        stats: FFTStats | None = None, inplace: bool = False) -> np.ndarray:
    """Novelpoly coefficients -> evaluations; output i is f(phi(i) + alpha)."""
    a, m = _prepare(g, rep, inplace)
    return _run(a, m, rep, alpha, ctx or get_context(), False, stats)


def ifft(e: np.ndarray, rep: str = "tower", alpha: int = 0, ctx: FieldContext | None = None,
         stats: FFTStats | None = None, inplace: bool = False) -> np.ndarray:
    """Inverse of fft: butterflies undone in ascending layer order."""
    a, m = _prepare(e, rep, inplace)
    return _run(a, m, rep, alpha, ctx or get_context(), True, stats)


# ------------------------------------------------------------ references


def _field_mul(rep: str, level: int):
    if rep == "gf128":
        return gf128.gf128_mul
    return lambda x, y: tower_mul(x, y, level)


def fft_reference(g: list[int], rep: str = "tower", alpha: int = 0, ctx: FieldContext | None = None,
                  level: int = 7) -> list[int]:
    """Recursive butterfly on Python ints, for differential testing."""
    ctx = ctx or get_context()
    mul = _field_mul(rep, level)
    n = len(g)
    if n == 1:
        return [g[0]]
    k = (n - 1).bit_length() - 1
    half = 1 << k
    w = multiplier_for(rep, k, 0, alpha, ctx)
    h0 = [p0 ^ mul(w, p1) for p0, p1 in zip(g[:half], g[half:])]
    h1 = [x ^ p1 for x, p1 in zip(h0, g[half:])]
    return fft_reference(h0, rep, alpha, ctx, level) + fft_reference(h1, rep, alpha ^ half, ctx, level)


def s_value(rep: str, i: int, point: int, ctx: FieldContext | None = None) -> int:
    """s_i at a point index, as a field value."""
    ctx = ctx or get_context()
    if rep == "tower":
        return point if i == 0 else ctx.sk.eval(i, point)
    return ctx.iso("cantor", "gf128").apply(point >> i)


def novelpoly_value(rep: str, k: int, point: int, ctx: FieldContext | None = None, level: int = 7) -> int:
    """X_k(point) as the product of s_i(point) over the set bits i of k."""
    mul = _field_mul(rep, level)
    out, i = 1, 0
    while k:
        if k & 1:
            out = mul(out, s_value(rep, i, point, ctx))
        k >>= 1
        i += 1
    return out


def naive_eval(g: list[int], rep: str = "tower", alpha: int = 0, ctx: FieldContext | None = None,
               level: int = 7) -> list[int]:
    """Evaluate sum g_k X_k at every point i ^ alpha term by term."""
    ctx = ctx or get_context()
    mul = _field_mul(rep, level)
    out = []
    for i in range(len(g)):
        acc = 0
        for k, c in enumerate(g):
            if c:
                acc ^= mul(c, novelpoly_value(rep, k, i ^ alpha, ctx, level))
        out.append(acc)
    return out
