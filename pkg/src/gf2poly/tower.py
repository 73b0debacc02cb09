"""Tower fields TGF(2^(2^k)), k = 1..8, in the v-basis.

Level ``k`` is the field with ``2^k``-bit elements, built from level ``k-1``
by adjoining ``x_k`` with ``x_k^2 + x_k = x_1 x_2 ... x_{k-1}``.  Bit ``j`` of
an element is the coordinate of ``v_j``, the product of the ``x_i`` selected
by the bits of ``j``.  Since level ``k-1`` sits in the low half of level
``k``, the generator relation constant is the single top bit of the
subfield, ``1 << (2^(k-1) - 1)``.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from numba import njit

MAX_LEVEL = 8


def bits_of(level: int) -> int:
    return 1 << level


def top_basis(level: int) -> int:
    """v_{2^k - 1} = x_1 x_2 ... x_k, the highest basis vector of level k."""
    if level == 0:
        return 1
    return 1 << (bits_of(level) - 1)


def generator(level: int) -> int:
    """x_k as an element of level k (and of every level above)."""
    return 1 << (bits_of(level) >> 1)


def raw_mul(a: int, b: int, level: int) -> int:
    """Table-free multiplication, recursing all the way down to GF(2)."""
    if level == 0:
        return a & b
    half = bits_of(level - 1)
    mask = (1 << half) - 1
    a0, a1 = a & mask, a >> half
    b0, b1 = b & mask, b >> half
    m0 = raw_mul(a0, b0, level - 1)
    m1 = raw_mul(a1, b1, level - 1)
    m2 = raw_mul(a0 ^ a1, b0 ^ b1, level - 1)
    lo = m0 ^ raw_mul(m1, top_basis(level - 1), level - 1)
    return lo | ((m2 ^ m0) << half)


def _order(g: int, level: int) -> int:
    x, n = g, 1
    while x != 1:
        x = raw_mul(x, g, level)
        n += 1
    return n


@dataclass(frozen=True)
class SmallFieldTables:
    """log/exp tables for GF(16) and GF(256) in tower representation."""

    gen16: int
    log16: np.ndarray
    exp16: np.ndarray
    gen256: int
    log256: np.ndarray
    exp256: np.ndarray
    mul256: np.ndarray  # full 256x256 product table derived from log/exp

    @classmethod
    def build(cls) -> "SmallFieldTables":
        def tables(level):
            size = 1 << bits_of(level)
            g = next(c for c in range(2, size) if _order(c, level) == size - 1)
            log = np.zeros(size, dtype=np.int64)
            exp = np.zeros(2 * size, dtype=np.int64)
            x = 1
            for i in range(size - 1):
                exp[i] = exp[i + size - 1] = x
                log[x] = i
                x = raw_mul(x, g, level)
            return g, log, exp

        g16, log16, exp16 = tables(2)
        g256, log256, exp256 = tables(3)
        la = log256[:, None] + log256[None, :]
        mul = exp256[la].astype(np.uint8)
        mul[0, :] = 0
        mul[:, 0] = 0
        return cls(g16, log16, exp16, g256, log256, exp256, mul)

    def mul8(self, a: int, b: int) -> int:
        if a == 0 or b == 0:
            return 0
        return int(self.exp256[self.log256[a] + self.log256[b]])

    def mul4(self, a: int, b: int) -> int:
        if a == 0 or b == 0:
            return 0
        return int(self.exp16[self.log16[a] + self.log16[b]])


_TABLES: SmallFieldTables | None = None


def small_tables() -> SmallFieldTables:
    global _TABLES
    if _TABLES is None:
        _TABLES = SmallFieldTables.build()
    return _TABLES


def _check(value: int, level: int) -> None:
    if not 0 <= level <= MAX_LEVEL:
        raise ValueError(f"tower level {level} out of range")
    if value < 0 or value >> bits_of(level):
        raise ValueError(f"value {value:#x} does not fit level {level}")


def tower_mul(a: int, b: int, level: int) -> int:
    """Product in TGF(2^(2^level)).

    One Karatsuba step per level down to GF(256), where the log/exp tables
    finish the job.  Levels below 3 go through their GF(256) embedding.
    """
    _check(a, level)
    _check(b, level)
    return _mul(a, b, level, small_tables())


def _mul(a: int, b: int, level: int, tabs: SmallFieldTables) -> int:
    if level <= 3:
        return tabs.mul8(a, b)
    half = bits_of(level - 1)
    mask = (1 << half) - 1
    a0, a1 = a & mask, a >> half
    b0, b1 = b & mask, b >> half
    m0 = _mul(a0, b0, level - 1, tabs)
    m1 = _mul(a1, b1, level - 1, tabs)
    m2 = _mul(a0 ^ a1, b0 ^ b1, level - 1, tabs)
    lo = m0 ^ _mul(m1, top_basis(level - 1), level - 1, tabs)
    return lo | ((m2 ^ m0) << half)


def tower_sqr(a: int, level: int) -> int:
    return tower_mul(a, a, level)


def embed(b: int, level_from: int, level_to: int) -> int:
    """Subfields live in the low bits, so embedding is zero-extension."""
    if level_from > level_to:
        raise ValueError("cannot embed into a smaller field")
    _check(b, level_from)
    return b


def subfield_scalar_mul(a: int, level: int, b: int, sublevel: int, counter: list | None = None) -> int:
    """a * b for b in the subfield of the given sublevel.

    a is cut into 2^(level - sublevel) limbs of the subfield and each limb is
    multiplied by b on its own.  ``counter[0]`` is bumped once per limb
    product when a counter list is given.
    """
    if sublevel > level:
        raise ValueError("scalar must come from a subfield")
    _check(a, level)
    _check(b, sublevel)
    tabs = small_tables()
    width = bits_of(sublevel)
    mask = (1 << width) - 1
    out = 0
    for i in range(1 << (level - sublevel)):
        limb = (a >> (i * width)) & mask
        out |= _mul(limb, b, sublevel, tabs) << (i * width)
        if counter is not None:
            counter[0] += 1
    return out


def level_of(value: int) -> int:
    """Smallest tower level containing ``value``."""
    level = 0
    while value >> bits_of(level):
        level += 1
    return level


@dataclass(frozen=True)
class TowerElem:
    value: int
    level: int

    def __post_init__(self):
        _check(self.value, self.level)

    def __add__(self, other: "TowerElem") -> "TowerElem":
        self._same(other)
        return TowerElem(self.value ^ other.value, self.level)

    __sub__ = __add__

    def __mul__(self, other: "TowerElem") -> "TowerElem":
        self._same(other)
        return TowerElem(tower_mul(self.value, other.value, self.level), self.level)

    def embed(self, level: int) -> "TowerElem":
        return TowerElem(embed(self.value, self.level, level), level)

    def _same(self, other: "TowerElem") -> None:
        if self.level != other.level:
            raise ValueError(f"level mismatch: {self.level} vs {other.level}")


# ---------------------------------------------------------------- kernels
#
# Elements of level 7 are (N, 2) uint64 rows, level 8 are (N, 4).  Levels
# up to 5 are handled as int64 scalars, level 6 as uint64.

_U32 = np.uint64(32)
_M32 = np.uint64(0xFFFFFFFF)
_TOP64 = np.uint64(1 << 63)
_U0 = np.uint64(0)


@njit(cache=True, inline="always")
def _mul16(a, b, mt):
    a0 = a & 0xFF
    a1 = a >> 8
    b0 = b & 0xFF
    b1 = b >> 8
    m0 = np.int64(mt[a0, b0])
    m1 = mt[a1, b1]
    m2 = np.int64(mt[a0 ^ a1, b0 ^ b1])
    lo = m0 ^ np.int64(mt[m1, 0x80])
    return lo | ((m2 ^ m0) << 8)


@njit(cache=True, inline="always")
def _mul32(a, b, mt):
    a0 = a & 0xFFFF
    a1 = a >> 16
    b0 = b & 0xFFFF
    b1 = b >> 16
    m0 = _mul16(a0, b0, mt)
    m1 = _mul16(a1, b1, mt)
    m2 = _mul16(a0 ^ a1, b0 ^ b1, mt)
    lo = m0 ^ _mul16(m1, 0x8000, mt)
    return lo | ((m2 ^ m0) << 16)


@njit(cache=True, inline="always")
def _mul64(a, b, mt):
    a0 = np.int64(a & _M32)
    a1 = np.int64(a >> _U32)
    b0 = np.int64(b & _M32)
    b1 = np.int64(b >> _U32)
    m0 = _mul32(a0, b0, mt)
    m1 = _mul32(a1, b1, mt)
    m2 = _mul32(a0 ^ a1, b0 ^ b1, mt)
    lo = m0 ^ _mul32(m1, 0x80000000, mt)
    return np.uint64(lo) | (np.uint64(m2 ^ m0) << _U32)


@njit(cache=True, inline="always")
def _mul128(a0, a1, b0, b1, mt):
    m0 = _mul64(a0, b0, mt)
    m1 = _mul64(a1, b1, mt)
    m2 = _mul64(a0 ^ a1, b0 ^ b1, mt)
    return m0 ^ _mul64(m1, _TOP64, mt), m2 ^ m0


@njit(cache=True, inline="always")
def _mul256(a0, a1, a2, a3, b0, b1, b2, b3, mt):
    m0l, m0h = _mul128(a0, a1, b0, b1, mt)
    m1l, m1h = _mul128(a2, a3, b2, b3, mt)
    m2l, m2h = _mul128(a0 ^ a2, a1 ^ a3, b0 ^ b2, b1 ^ b3, mt)
    tl, th = _mul128(m1l, m1h, _U0, _TOP64, mt)
    return m0l ^ tl, m0h ^ th, m2l ^ m0l, m2h ^ m0h


@njit(cache=True)
def mul_arrays_kernel(a, b, out, mt):
    width = a.shape[1]
    for i in range(a.shape[0]):
        if width == 2:
            lo, hi = _mul128(a[i, 0], a[i, 1], b[i, 0], b[i, 1], mt)
            out[i, 0] = lo
            out[i, 1] = hi
        else:
            r0, r1, r2, r3 = _mul256(
                a[i, 0], a[i, 1], a[i, 2], a[i, 3], b[i, 0], b[i, 1], b[i, 2], b[i, 3], mt
            )
            out[i, 0] = r0
            out[i, 1] = r1
            out[i, 2] = r2
            out[i, 3] = r3


def tower_mul_arrays(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Elementwise products of (N, 2) level-7 or (N, 4) level-8 arrays."""
    if a.shape != b.shape:
        raise ValueError(f"shape mismatch {a.shape} vs {b.shape}")
    if a.ndim != 2 or a.shape[1] not in (2, 4):
        raise ValueError("expected (N, 2) or (N, 4) uint64 rows")
    out = np.empty_like(a)
    mul_arrays_kernel(a, b, out, small_tables().mul256)
    return out


# Multiplication by a fixed subfield scalar c < 2^32.  The Karatsuba split of
# a * c leaves three products with constants (c0, c1 * t, c0 ^ c1), so a level
# 4 constant expands to 3 bytes and a level 5 constant to 9 bytes.


@njit(cache=True, inline="always")
def prepare_scalar(c, mt, cb):
    """Fill cb with the byte constants for c; returns the scalar level."""
    if c < 256:
        cb[0] = c
        return 3
    if c < 65536:
        c0 = c & 0xFF
        c1 = c >> 8
        cb[0] = c0
        cb[1] = mt[c1, 0x80]
        cb[2] = c0 ^ c1
        return 4
    k0 = c & 0xFFFF
    k1 = _mul16(c >> 16, 0x8000, mt)
    k2 = k0 ^ (c >> 16)
    _expand16(k0, mt, cb, 0)
    _expand16(k1, mt, cb, 3)
    _expand16(k2, mt, cb, 6)
    return 5


@njit(cache=True, inline="always")
def _expand16(k, mt, cb, o):
    cb[o] = k & 0xFF
    cb[o + 1] = mt[k >> 8, 0x80]
    cb[o + 2] = (k & 0xFF) ^ (k >> 8)


@njit(cache=True, inline="always")
def _mul16c(x0, x1, cb, o, mt):
    m0 = mt[cb[o], x0]
    return m0 ^ mt[cb[o + 1], x1], mt[cb[o + 2], x0 ^ x1] ^ m0


@njit(cache=True, inline="always")
def scalar_mul_bytes(src, dst, level, cb, mt):
    """dst = c * src with c prepared by prepare_scalar; rows are byte views."""
    n = src.shape[0]
    if level == 3:
        c = cb[0]
        for i in range(n):
            dst[i] = mt[c, src[i]]
    elif level == 4:
        for i in range(0, n, 2):
            dst[i], dst[i + 1] = _mul16c(src[i], src[i + 1], cb, 0, mt)
    else:
        for i in range(0, n, 4):
            x0, x1, x2, x3 = src[i], src[i + 1], src[i + 2], src[i + 3]
            m0, m1 = _mul16c(x0, x1, cb, 0, mt)
            y0, y1 = _mul16c(x2, x3, cb, 3, mt)
            z0, z1 = _mul16c(x0 ^ x2, x1 ^ x3, cb, 6, mt)
            dst[i] = m0 ^ y0
            dst[i + 1] = m1 ^ y1
            dst[i + 2] = z0 ^ m0
            dst[i + 3] = z1 ^ m1


@njit(cache=True)
def scalar_mul_kernel(a8, c, out8, mt):
    cb = np.zeros(9, dtype=np.uint8)
    level = prepare_scalar(c, mt, cb)
    for i in range(a8.shape[0]):
        scalar_mul_bytes(a8[i], out8[i], level, cb, mt)


def scalar_mul_array(a: np.ndarray, c: int) -> np.ndarray:
    """Multiply every row of a (N, 2|4) uint64 array by a scalar c < 2^32."""
    if not 0 <= c < 1 << 32:
        raise ValueError("scalar must lie in TGF(2^32)")
    a = np.ascontiguousarray(a)
    out = np.empty_like(a)
    n = a.shape[0]
    scalar_mul_kernel(a.view(np.uint8).reshape(n, -1), c, out.view(np.uint8).reshape(n, -1), small_tables().mul256)
    return out


@njit(cache=True, inline="always")
def addmul_row(a8, ui, vi, level, cb, mt):
    """a8[ui] ^= c * a8[vi] for a constant c prepared by prepare_scalar."""
    nb = a8.shape[1]
    if level == 3:
        c = cb[0]
        for t in range(nb):
            a8[ui, t] ^= mt[c, a8[vi, t]]
    elif level == 4:
        for t in range(0, nb, 2):
            lo, hi = _mul16c(a8[vi, t], a8[vi, t + 1], cb, 0, mt)
            a8[ui, t] ^= lo
            a8[ui, t + 1] ^= hi
    else:
        for t in range(0, nb, 4):
            x0, x1, x2, x3 = a8[vi, t], a8[vi, t + 1], a8[vi, t + 2], a8[vi, t + 3]
            m0, m1 = _mul16c(x0, x1, cb, 0, mt)
            y0, y1 = _mul16c(x2, x3, cb, 3, mt)
            z0, z1 = _mul16c(x0 ^ x2, x1 ^ x3, cb, 6, mt)
            a8[ui, t] ^= m0 ^ y0
            a8[ui, t + 1] ^= m1 ^ y1
            a8[ui, t + 2] ^= z0 ^ m0
            a8[ui, t + 3] ^= z1 ^ m1
