"""GF(2^128) in polynomial basis, modulo x^128 + x^7 + x^2 + x + 1.

Elements are plain Python ints in the scalar API.  Array kernels work on
``(N, 2)`` uint64 arrays holding (low word, high word) per element.
"""

from __future__ import annotations

import numpy as np
from numba import njit

MODULUS = (1 << 128) | 0x87
MASK64 = (1 << 64) - 1
MASK128 = (1 << 128) - 1

_U0 = np.uint64(0)
_U1 = np.uint64(1)
_U2 = np.uint64(2)
_U4 = np.uint64(4)
_U7 = np.uint64(7)
_U15 = np.uint64(15)
_U57 = np.uint64(57)
_U60 = np.uint64(60)
_U62 = np.uint64(62)
_U63 = np.uint64(63)


def clmul(a: int, b: int) -> int:
    """Carry-less product of two arbitrary-length bit polynomials (shift-XOR)."""
    r = 0
    while b:
        if b & 1:
            r ^= a
        a <<= 1
        b >>= 1
    return r


def clmul64(a: int, b: int) -> int:
    """64x64 -> 128 bit carry-less multiply with a 4-bit window.

    Each of the 16 nibbles of ``b`` selects one precomputed multiple of ``a``;
    no data-dependent branches are taken on ``b``.
    """
    a &= MASK64
    b &= MASK64
    table = [0] * 16
    for i in range(1, 16):
        table[i] = table[i >> 1] << 1 if i % 2 == 0 else table[i - 1] ^ a
    r = 0
    for j in range(60, -4, -4):
        r = (r << 4) ^ table[(b >> j) & 15]
    return r


def _fold(p: int) -> int:
    """Reduce a (<= 255 bit) product modulo the field polynomial."""
    w3 = p >> 192
    p ^= (clmul64(w3, 0x87) << 64) ^ (w3 << 192)
    w2 = (p >> 128) & MASK64
    p ^= clmul64(w2, 0x87) ^ (w2 << 128)
    return p & MASK128


def gf128_reduce(p: int) -> int:
    """Reduce any bit polynomial modulo MODULUS by long division (oracle)."""
    while p.bit_length() > 128:
        p ^= MODULUS << (p.bit_length() - 129)
    return p


def gf128_mul(a: int, b: int) -> int:
    a0, a1 = a & MASK64, a >> 64
    b0, b1 = b & MASK64, b >> 64
    lo = clmul64(a0, b0)
    hi = clmul64(a1, b1)
    mid = clmul64(a0 ^ a1, b0 ^ b1) ^ lo ^ hi
    return _fold(lo ^ (mid << 64) ^ (hi << 128))


_SPREAD = [sum(((i >> j) & 1) << (2 * j) for j in range(8)) for i in range(256)]


def gf128_sqr(a: int) -> int:
    """Frobenius map a -> a^2; squaring a bit polynomial spreads its bits."""
    p = 0
    for j in range(16):
        p |= _SPREAD[(a >> (8 * j)) & 0xFF] << (16 * j)
    return _fold(p)


def gf128_pow2k(a: int, k: int) -> int:
    for _ in range(k):
        a = gf128_sqr(a)
    return a


def to_array(values) -> np.ndarray:
    """List of ints -> (N, 2) uint64 array."""
    out = np.empty((len(values), 2), dtype=np.uint64)
    for i, v in enumerate(values):
        out[i, 0] = v & MASK64
        out[i, 1] = (v >> 64) & MASK64
    return out


def from_array(arr: np.ndarray) -> list[int]:
    return [int(lo) | (int(hi) << 64) for lo, hi in arr]


# ---------------------------------------------------------------- kernels


@njit(cache=True, inline="always")
def _fill_table(a, tab):
    tab[0, 0] = _U0
    tab[0, 1] = _U0
    tab[1, 0] = a
    tab[1, 1] = _U0
    for i in range(2, 16):
        if i % 2 == 0:
            h = i >> 1
            tab[i, 0] = tab[h, 0] << _U1
            tab[i, 1] = (tab[h, 1] << _U1) | (tab[h, 0] >> _U63)
        else:
            tab[i, 0] = tab[i - 1, 0] ^ a
            tab[i, 1] = tab[i - 1, 1]


@njit(cache=True, inline="always")
def _mul_by_table(tab, b):
    lo = _U0
    hi = _U0
    for j in range(15, -1, -1):
        hi = (hi << _U4) | (lo >> _U60)
        lo = lo << _U4
        idx = (b >> np.uint64(4 * j)) & _U15
        lo ^= tab[idx, 0]
        hi ^= tab[idx, 1]
    return lo, hi


@njit(cache=True)
def clmul64_kernel(a, b):
    tab = np.empty((16, 2), dtype=np.uint64)
    _fill_table(a, tab)
    return _mul_by_table(tab, b)


@njit(cache=True, inline="always")
def _reduce4(w0, w1, w2, w3):
    # x^128 = x^7 + x^2 + x + 1; fold the top word, then the next one
    w1 ^= w3 ^ (w3 << _U1) ^ (w3 << _U2) ^ (w3 << _U7)
    w2 ^= (w3 >> _U63) ^ (w3 >> _U62) ^ (w3 >> _U57)
    w0 ^= w2 ^ (w2 << _U1) ^ (w2 << _U2) ^ (w2 << _U7)
    w1 ^= (w2 >> _U63) ^ (w2 >> _U62) ^ (w2 >> _U57)
    return w0, w1


@njit(cache=True, inline="always")
def prepare_constant(wlo, whi, tabs):
    """Window tables for the three Karatsuba operands of a fixed multiplier."""
    _fill_table(wlo, tabs[0])
    _fill_table(whi, tabs[1])
    _fill_table(wlo ^ whi, tabs[2])


@njit(cache=True, inline="always")
def mul_prepared(tabs, alo, ahi):
    l0, l1 = _mul_by_table(tabs[0], alo)
    h0, h1 = _mul_by_table(tabs[1], ahi)
    m0, m1 = _mul_by_table(tabs[2], alo ^ ahi)
    m0 ^= l0 ^ h0
    m1 ^= l1 ^ h1
    return _reduce4(l0, l1 ^ m0, h0 ^ m1, h1)


@njit(cache=True)
def mul_arrays(a, b, out):
    tabs = np.empty((3, 16, 2), dtype=np.uint64)
    for i in range(a.shape[0]):
        prepare_constant(b[i, 0], b[i, 1], tabs)
        lo, hi = mul_prepared(tabs, a[i, 0], a[i, 1])
        out[i, 0] = lo
        out[i, 1] = hi


def gf128_mul_arrays(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Elementwise product of two (N, 2) uint64 arrays."""
    if a.shape != b.shape:
        raise ValueError(f"shape mismatch {a.shape} vs {b.shape}")
    out = np.empty_like(a)
    mul_arrays(a, b, out)
    return out
