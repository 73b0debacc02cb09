"""Monomial <-> novelpoly basis conversion with respect to a Cantor basis.

The novelpoly basis element X_k is the product of s_i(x) over the set bits
i of k.  Converting needs only XORs of coefficient words because every s_i
has unit coefficients, so the same network works for any field
representation and for single-bit coefficients.

The in-place version works on bit ranges of the coefficient index.  For an
index range [lo, hi) of width l >= 2, let k be the largest power of two
below l and c = 2^k.  Substituting y = s_k(x) = x^c + x ("var_subs") moves
the y-exponent into index bits [lo+k, hi) and leaves the x-exponent in
[lo, lo+k); both ranges are then converted recursively.
"""

from __future__ import annotations

from functools import lru_cache

import numpy as np

# one step: (lo, hi, block) with block the size of a var_subs division


def _largest_pow2_below(n: int) -> int:
    k = 1
    while 2 * k < n:
        k *= 2
    return k


def _cvt_steps(lo: int, hi: int, out: list) -> None:
    width = hi - lo
    if width <= 1:
        return
    k = _largest_pow2_below(width)
    block = 1 << width
    while block >= 2 << k:
        out.append((lo, hi, block, k))
        block //= 2
    _cvt_steps(lo + k, hi, out)
    _cvt_steps(lo, lo + k, out)


@lru_cache(maxsize=64)
def schedule(m: int) -> tuple[tuple[int, int, int, int], ...]:
    """Ordered division steps (lo, hi, block, k) converting length 2^m."""
    steps: list = []
    _cvt_steps(0, m, steps)
    return tuple(steps)


def _log2_len(a: np.ndarray) -> int:
    n = a.shape[0]
    if n < 1 or n & (n - 1):
        raise ValueError(f"length {n} is not a power of two")
    return n.bit_length() - 1


def _view(a: np.ndarray, m: int, lo: int, hi: int, block: int) -> np.ndarray:
    return a.reshape((1 << (m - hi), (1 << (hi - lo)) // block, block, 1 << lo) + a.shape[1:])


def _step(a: np.ndarray, m: int, step, inverse: bool) -> None:
    lo, hi, block, k = step
    v = _view(a, m, lo, hi, block)
    half = block // 2
    r = half >> k
    # f = f_lo + x^half f_hi and x^half = y^r + x^r; fold x^r f_hi downward
    if not inverse:
        v[:, :, half : half + r] ^= v[:, :, 2 * half - r : 2 * half]
        v[:, :, r:half] ^= v[:, :, half : 2 * half - r]
    else:
        v[:, :, r:half] ^= v[:, :, half : 2 * half - r]
        v[:, :, half : half + r] ^= v[:, :, 2 * half - r : 2 * half]


def basis_cvt(f: np.ndarray, inplace: bool = False) -> np.ndarray:
    """Monomial coefficients (axis 0, length 2^m) -> novelpoly coefficients."""
    a = f if inplace else np.array(f, copy=True)
    m = _log2_len(a)
    for step in schedule(m):
        _step(a, m, step, inverse=False)
    return a


def i_basis_cvt(g: np.ndarray, inplace: bool = False) -> np.ndarray:
    """Inverse of basis_cvt: the same XOR network run backwards."""
    a = g if inplace else np.array(g, copy=True)
    m = _log2_len(a)
    for step in reversed(schedule(m)):
        _step(a, m, step, inverse=True)
    return a


def var_subs(f: np.ndarray, k: int, inplace: bool = False) -> np.ndarray:
    """Rewrite f(x) as sum h_j(x) y^j with y = x^(2^k) + x.

    Output index j * 2^k + t holds coefficient t of h_j.  Inputs shorter
    than 2^k are returned unchanged.
    """
    a = f if inplace else np.array(f, copy=True)
    m = _log2_len(a)
    c = 1 << k
    block = 1 << m
    while block >= 2 * c:
        _step(a, m, (0, m, block, k), inverse=False)
        block //= 2
    return a


def layer_xor_counts(m: int) -> list[int]:
    """Coefficient XORs per division layer for length 2^m.

    Steps of equal block size on the same index range form one layer.
    """
    counts = []
    for lo, hi, block, k in schedule(m):
        half = block // 2
        counts.append((1 << m) // block * half)
    return counts


# ------------------------------------------------------------ reference


def var_subs_reference(f: list, k: int) -> list[list]:
    """Recursive variable substitution by repeated subtraction.

    Returns [h_0, h_1, ...] with each h_j a length-2^k coefficient list.
    """
    c = 1 << k
    n = len(f)
    if n <= c:
        return [list(f) + [0] * (c - n)]
    # largest t = 2^j with (x^c + x)^t = x^(t c) + x^t of degree <= n - 1
    t = 1
    while 2 * t * c <= n - 1:
        t *= 2
    top = t * c
    f = list(f)
    f1 = [0] * (n - top)
    for p in range(n - 1, top - 1, -1):
        coef = f[p]
        if coef:
            f[p] = 0
            f1[p - top] ^= coef
            f[p - top + t] ^= coef
    low = var_subs_reference(f[:top], k)
    high = var_subs_reference(f1, k)
    low += [[0] * c for _ in range(t - len(low))]
    return low + high


def basis_cvt_reference(f: list) -> list:
    n = len(f)
    if n <= 2:
        return list(f)
    m = n.bit_length() - 1
    k = _largest_pow2_below(m)
    c = 1 << k
    h = var_subs_reference(f, k)
    h += [[0] * c for _ in range(n // c - len(h))]
    # series in y: convert each x-position column, then each coefficient row
    cols = [basis_cvt_reference([h[j][t] for j in range(len(h))]) for t in range(c)]
    rows = [basis_cvt_reference([cols[t][j] for t in range(c)]) for j in range(len(h))]
    return [x for row in rows for x in row]
