"""End-to-end GF(2)[x] multiplication through the additive FFT.

Backends:

* ``oracle``    Karatsuba/schoolbook reference.
* ``gf128``     64-bit blocks in polynomial-basis GF(2^128); butterflies use
                Cantor-indexed multipliers mapped into the polynomial basis.
* ``tower128``  64-bit blocks, converted to the tower field after the basis
                conversion so butterflies multiply by short subfield values.
* ``tower256``  the same with 128-bit blocks in TGF(2^256).
* ``frobenius`` no segmentation; see :mod:`gf2poly.frobenius`.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import lch_fft
from .bitpoly import BitPoly, BlockPoly, interleaved_combine, mul_oracle, split
from .context import FieldContext, get_context
from .gf128 import gf128_mul_arrays
from .novelpoly import basis_cvt, i_basis_cvt
from .tower import tower_mul_arrays

BACKENDS = ("oracle", "gf128", "tower128", "tower256", "frobenius")
FFT_BACKENDS = ("gf128", "tower128", "tower256")
MAX_LOG_POINTS = 32


class SizeError(ValueError):
    """Operands exceed what a backend can represent."""


@dataclass(frozen=True)
class Plan:
    w: int
    n: int
    fft_size: int

    @property
    def m(self) -> int:
        return self.fft_size.bit_length() - 1


def _next_pow2(x: int) -> int:
    return 1 << max(0, (x - 1).bit_length())


def block_width(backend: str) -> int:
    if backend not in BACKENDS:
        raise ValueError(f"unknown backend {backend!r}; choose from {', '.join(BACKENDS)}")
    return 128 if backend in ("tower256", "frobenius") else 64


def plan(d_bits: int, backend: str = "tower128") -> Plan:
    """Block count n = ceil(d / w) and FFT size: next power of two >= 2n."""
    if d_bits <= 0:
        raise ValueError("d_bits must be positive")
    w = block_width(backend)
    n = -(-d_bits // w)
    return Plan(w, n, max(2, _next_pow2(2 * n)))


def _operand_bits(a: BitPoly, b: BitPoly) -> int:
    return max(a.degree(), b.degree()) + 1


def pointmul(u: np.ndarray, v: np.ndarray, rep: str) -> np.ndarray:
    """Componentwise field product of two evaluation vectors."""
    if u.shape != v.shape:
        raise ValueError(f"size mismatch {u.shape} vs {v.shape}")
    if rep == "gf128":
        return gf128_mul_arrays(u, v)
    if rep == "tower":
        return tower_mul_arrays(u, v)
    raise ValueError(f"unknown representation {rep!r}")


class _Trace:
    def __init__(self, sink: list | None):
        self.sink = sink

    def __call__(self, name: str) -> None:
        if self.sink is not None:
            self.sink.append(name)


def _fft_multiply(a: BitPoly, b: BitPoly, backend: str, ctx: FieldContext, trace: _Trace) -> BitPoly:
    p = plan(_operand_bits(a, b), backend)
    if p.m > MAX_LOG_POINTS:
        raise SizeError(f"{p.fft_size} points exceed the 2^{MAX_LOG_POINTS} cap")
    q = p.w // 64
    rep = "gf128" if backend == "gf128" else "tower"

    trace("split")
    blocks = [split(x, p.w, p.fft_size).blocks for x in (a, b)]
    trace("basis_cvt")
    # only the low w bits carry data before the products, so convert those
    for blk in blocks:
        blk[:, :q] = basis_cvt(blk[:, :q])
    if rep == "tower":
        trace("change_repr")
        src = "gf128" if q == 1 else "poly256"
        dst = "tower" if q == 1 else "tower256"
        iso = ctx.iso(src, dst)
        blocks = [iso.apply_array(blk[:, :q]) for blk in blocks]
    trace("fft")
    evals = [lch_fft.fft(blk, rep, 0, ctx, inplace=True) for blk in blocks]
    trace("pointmul")
    prod = pointmul(evals[0], evals[1], rep)
    trace("ifft")
    coeffs = lch_fft.ifft(prod, rep, 0, ctx, inplace=True)
    trace("i_basis_cvt")
    coeffs = i_basis_cvt(coeffs, inplace=True)
    if rep == "tower":
        trace("i_change_repr")
        back = ctx.iso("tower", "gf128") if q == 1 else ctx.iso("tower256", "poly256")
        coeffs = back.apply_array(coeffs)
    trace("combine")
    return interleaved_combine(BlockPoly(coeffs, p.w), a.nbits + b.nbits)


def multiply(a: BitPoly, b: BitPoly, backend: str = "tower128", ctx: FieldContext | None = None,
             trace: list | None = None, max_bits: int | None = None) -> BitPoly:
    """Exact product a * b computed by the chosen backend.

    ``trace`` receives the executed stage names in order; ``max_bits`` is an
    optional caller-side cap on the operand size.
    """
    block_width(backend)
    if max_bits is not None and max(a.degree(), b.degree()) + 1 > max_bits:
        raise SizeError(f"operand exceeds the {max_bits}-bit limit")
    if a.is_zero() or b.is_zero():
        return BitPoly.zero()
    ctx = ctx or get_context()
    if backend == "oracle":
        return mul_oracle(a, b)
    if backend == "frobenius":
        from .frobenius import frob_multiply

        return frob_multiply(a, b, ctx=ctx, trace=trace)
    return _fft_multiply(a, b, backend, ctx, _Trace(trace))
