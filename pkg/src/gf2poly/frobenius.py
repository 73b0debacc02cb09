"""Multiplication directly over GF(2)[x] without segmentation.

A polynomial with 128n = 2^(m+7) bit coefficients is evaluated at the n
points beta_s + phi_beta(i), i < n, with s = m + 64 by default.  Every
point has 128 distinct Frobenius conjugates, so for GF(2) coefficients the
n evaluations determine the polynomial and the map is a bijection onto
GF(2^128)^n.

The evaluation is a truncated transform over GF(2^128): basis conversion of
the bits, then the first seven butterfly layers, which only ever keep the
lower half and so collapse into one 128x128 bit matrix per lane, then an
ordinary n-point transform shifted by beta_s.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from . import gf128, lch_fft
from .bitmatrix import BitMatrix, IsoMatrix, SingularMatrixError
from .bitpoly import BitPoly
from .context import FieldContext, get_context
from .novelpoly import basis_cvt, i_basis_cvt
from .pipeline import SizeError

MAX_M = 25
LANE_BITS = 128
ENCODE_LAYERS = 7


class FrobeniusSizeError(SizeError):
    pass


@dataclass(frozen=True, eq=False)
class FrobeniusPlan:
    m: int
    shift_index: int
    encode: IsoMatrix
    decode: IsoMatrix
    ctx: FieldContext

    @property
    def n(self) -> int:
        return 1 << self.m

    @property
    def nbits(self) -> int:
        return LANE_BITS << self.m

    @property
    def alpha(self) -> int:
        """Cantor index of the shift beta_s."""
        return 1 << self.shift_index

    def shift(self) -> int:
        return self.ctx.beta(self.shift_index)

    def point(self, i: int) -> int:
        return self.ctx.basis.element(self.alpha ^ i)

    def layer_multiplier(self, b: int) -> int:
        """s_{m+b}(beta_s) in the polynomial basis, for encoding bit b."""
        return self.ctx.iso("cantor", "gf128").apply(self.alpha >> (self.m + b))


def encode_columns(m: int, shift_index: int, ctx: FieldContext) -> tuple[int, ...]:
    """Column j: product of s_{m+b}(beta_s) over the set bits b of j."""
    c2g = ctx.iso("cantor", "gf128")
    mults = [c2g.apply((1 << shift_index) >> (m + b)) for b in range(ENCODE_LAYERS)]
    cols = [1]
    for j in range(1, LANE_BITS):
        top = j.bit_length() - 1
        cols.append(gf128.gf128_mul(cols[j ^ (1 << top)], mults[top]))
    return tuple(cols)


@lru_cache(maxsize=32)
def _plan(m: int, shift_index: int, ctx: FieldContext) -> FrobeniusPlan:
    enc = BitMatrix(encode_columns(m, shift_index, ctx), LANE_BITS)
    try:
        dec = enc.inverse()
    except SingularMatrixError as exc:
        raise ValueError(f"encoding for shift index {shift_index} is not invertible") from exc
    return FrobeniusPlan(m, shift_index, IsoMatrix(enc), IsoMatrix(dec), ctx)


def make_plan(m: int, shift_index: int | None = None, ctx: FieldContext | None = None) -> FrobeniusPlan:
    if not 0 <= m <= MAX_M:
        raise FrobeniusSizeError(f"2^{m} points exceed the 2^{MAX_M} cap")
    if shift_index is None:
        shift_index = m + 64
    if not m + ENCODE_LAYERS <= shift_index < 128:
        raise ValueError(f"shift index {shift_index} must lie in [{m + ENCODE_LAYERS}, 128)")
    return _plan(m, shift_index, ctx or get_context())


def plan_for_product(nbits: int, ctx: FieldContext | None = None) -> FrobeniusPlan:
    """Smallest plan whose 128n coefficients hold a product of nbits bits."""
    lanes = max(1, -(-nbits // LANE_BITS))
    return make_plan((lanes - 1).bit_length(), ctx=ctx)


def frob_order_check(plan: FrobeniusPlan, shift: int | None = None) -> bool:
    """True iff the shift element has Frobenius order exactly 128."""
    x0 = plan.shift() if shift is None else shift
    return gf128.gf128_pow2k(x0, 64) != x0 and gf128.gf128_pow2k(x0, 128) == x0


# ------------------------------------------------------------ transforms


def _lanes_from_bits(bits: np.ndarray, n: int) -> np.ndarray:
    """(128 n) bits, coefficient j*n + i -> lane i bit j; returns (n, 2) words."""
    lanes = np.ascontiguousarray(bits.reshape(LANE_BITS, n).T)
    packed = np.packbits(lanes, axis=1, bitorder="little")
    return packed.view("<u8").astype(np.uint64)


def _bits_from_lanes(words: np.ndarray) -> np.ndarray:
    raw = np.ascontiguousarray(words.astype("<u8")).view(np.uint8)
    lanes = np.unpackbits(raw, axis=1, bitorder="little")
    return np.ascontiguousarray(lanes.T).reshape(-1)


def _trace(trace, name):
    if trace is not None:
        trace.append(name)


def frob_eval(a: BitPoly, plan: FrobeniusPlan, trace: list | None = None) -> np.ndarray:
    """Evaluations a(beta_s + phi_beta(i)), i < n, as (n, 2) uint64 words."""
    if a.degree() >= plan.nbits:
        raise FrobeniusSizeError(f"degree {a.degree()} needs more than {plan.nbits} bits")
    bits = np.zeros(plan.nbits, dtype=np.uint8)
    src = a.to_bits()[: plan.nbits]
    bits[: len(src)] = src
    _trace(trace, "basis_cvt")
    basis_cvt(bits, inplace=True)
    _trace(trace, "transpose")
    lanes = _lanes_from_bits(bits, plan.n)
    _trace(trace, "encode")
    lanes = plan.encode.apply_array(lanes)
    _trace(trace, "fft")
    return lch_fft.fft(lanes, "gf128", plan.alpha, plan.ctx, inplace=True)


def frob_interp(e: np.ndarray, plan: FrobeniusPlan, trace: list | None = None) -> BitPoly:
    """Inverse of frob_eval, returning a polynomial of 128n bits."""
    e = np.asarray(e, dtype=np.uint64)
    if e.shape != (plan.n, 2):
        raise ValueError(f"expected ({plan.n}, 2) evaluations, got {e.shape}")
    _trace(trace, "ifft")
    lanes = lch_fft.ifft(e, "gf128", plan.alpha, plan.ctx)
    _trace(trace, "decode")
    lanes = plan.decode.apply_array(lanes)
    _trace(trace, "i_transpose")
    bits = _bits_from_lanes(lanes)
    _trace(trace, "i_basis_cvt")
    i_basis_cvt(bits, inplace=True)
    return BitPoly.from_bits(bits)


def frob_multiply(a: BitPoly, b: BitPoly, ctx: FieldContext | None = None, trace: list | None = None) -> BitPoly:
    if a.is_zero() or b.is_zero():
        return BitPoly.zero()
    need = a.degree() + b.degree() + 1
    plan = plan_for_product(need, ctx)
    ea = frob_eval(a, plan, trace)
    eb = frob_eval(b, plan, trace)
    _trace(trace, "pointmul")
    prod = gf128.gf128_mul_arrays(ea, eb)
    return frob_interp(prod, plan, trace).resized(a.nbits + b.nbits)


# ------------------------------------------------------------ references


def seven_layer_encode(bits: np.ndarray, plan: FrobeniusPlan) -> list[int]:
    """Encode converted bits with seven explicit half-keeping butterfly layers."""
    vec = [int(x) for x in bits]
    for b in range(ENCODE_LAYERS - 1, -1, -1):
        w = plan.layer_multiplier(b)
        half = len(vec) // 2
        vec = [p0 ^ gf128.gf128_mul(w, p1) for p0, p1 in zip(vec[:half], vec[half:])]
    return vec


def truncated_eval_reference(a: BitPoly, plan: FrobeniusPlan) -> list[int]:
    """First n outputs of the full 128n-point transform shifted by beta_s."""
    bits = np.zeros(plan.nbits, dtype=np.uint8)
    src = a.to_bits()[: plan.nbits]
    bits[: len(src)] = src
    basis_cvt(bits, inplace=True)
    full = np.zeros((plan.nbits, 2), dtype=np.uint64)
    full[:, 0] = bits
    out = lch_fft.fft(full, "gf128", plan.alpha, plan.ctx)
    return gf128.from_array(out[: plan.n])


def horner_eval(a: BitPoly, x: int) -> int:
    acc = 0
    for i in range(a.degree(), -1, -1):
        acc = gf128.gf128_mul(acc, x) ^ a.coeff(i)
    return acc


def conjugate_points(plan: FrobeniusPlan) -> set[int]:
    """All Frobenius conjugates of the evaluation points."""
    out = set()
    for i in range(plan.n):
        p = plan.point(i)
        for _ in range(LANE_BITS):
            out.add(p)
            p = gf128.gf128_sqr(p)
    return out
