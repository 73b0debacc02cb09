"""Dense polynomials over GF(2), the reference multiplier, and Kronecker
segmentation into blocks of field coefficients.

Coefficients are packed little-endian: bit i of word j is the coefficient
of x^(64j + i).
"""

from __future__ import annotations

import re
from dataclasses import dataclass

import numpy as np
from numba import njit

KARATSUBA_WORDS = 64

_HEX_DIGITS = re.compile(r"[0-9a-fA-F]")


class ParseError(ValueError):
    """Malformed polynomial text or binary data; ``offset`` is the byte index."""

    def __init__(self, message: str, offset: int):
        super().__init__(f"{message} at byte offset {offset}")
        self.offset = offset


def _nwords(nbits: int) -> int:
    return (nbits + 63) // 64


class BitPoly:
    """Immutable GF(2)[x] polynomial with a declared coefficient capacity."""

    __slots__ = ("words", "nbits")

    def __init__(self, words, nbits: int | None = None):
        w = np.array(words, dtype=np.uint64).reshape(-1)
        if nbits is None:
            nbits = 64 * len(w)
        if nbits < 0:
            raise ValueError("nbits must be non-negative")
        need = _nwords(nbits)
        if len(w) < need:
            w = np.concatenate([w, np.zeros(need - len(w), dtype=np.uint64)])
        elif len(w) > need:
            if np.any(w[need:]):
                raise ValueError("set bits beyond nbits")
            w = w[:need].copy()
        tail = nbits % 64
        if tail and int(w[-1]) >> tail:
            raise ValueError("set bits beyond nbits")
        w.setflags(write=False)
        self.words = w
        self.nbits = nbits

    # construction ----------------------------------------------------

    @classmethod
    def zero(cls, nbits: int = 0) -> "BitPoly":
        return cls(np.zeros(_nwords(nbits), dtype=np.uint64), nbits)

    @classmethod
    def from_int(cls, value: int, nbits: int | None = None) -> "BitPoly":
        if value < 0:
            raise ValueError("negative bit pattern")
        if nbits is None:
            nbits = value.bit_length()
        elif value.bit_length() > nbits:
            raise ValueError("value does not fit in nbits")
        nw = _nwords(nbits)
        raw = value.to_bytes(8 * nw, "little")
        return cls(np.frombuffer(raw, dtype="<u8").astype(np.uint64), nbits)

    @classmethod
    def from_bits(cls, bits) -> "BitPoly":
        """From a sequence of 0/1 coefficients, constant term first."""
        bits = np.asarray(bits, dtype=np.uint8)
        n = len(bits)
        padded = np.zeros(64 * _nwords(n), dtype=np.uint8)
        padded[:n] = bits
        packed = np.packbits(padded, bitorder="little")
        return cls(np.frombuffer(packed.tobytes(), dtype="<u8").astype(np.uint64), n)

    @classmethod
    def monomial(cls, k: int) -> "BitPoly":
        return cls.from_int(1 << k)

    @classmethod
    def random(cls, nbits: int, rng: np.random.Generator) -> "BitPoly":
        w = rng.integers(0, 2**64, size=_nwords(nbits), dtype=np.uint64)
        if nbits % 64:
            w[-1] &= np.uint64((1 << (nbits % 64)) - 1)
        return cls(w, nbits)

    # conversion ------------------------------------------------------

    def to_int(self) -> int:
        return int.from_bytes(self.words.astype("<u8").tobytes(), "little")

    def to_bits(self) -> np.ndarray:
        raw = np.frombuffer(self.words.astype("<u8").tobytes(), dtype=np.uint8)
        return np.unpackbits(raw, bitorder="little")[: self.nbits]

    def to_hex(self) -> str:
        return format(self.to_int(), "x")

    @classmethod
    def from_hex(cls, text: str | bytes) -> "BitPoly":
        if isinstance(text, bytes):
            try:
                text = text.decode("ascii")
            except UnicodeDecodeError as exc:
                raise ParseError("non-ASCII byte", exc.start) from None
        body = text.rstrip("\r\n \t")
        start = len(body) - len(body.lstrip())
        digits = body[start:]
        if digits[:2].lower() == "0x":
            start += 2
            digits = digits[2:]
        if not digits:
            raise ParseError("empty hex literal", start)
        for i, ch in enumerate(digits):
            if not _HEX_DIGITS.fullmatch(ch):
                raise ParseError(f"invalid hex digit {ch!r}", start + i)
        return cls.from_int(int(digits, 16))

    def to_bytes(self) -> bytes:
        return self.words.astype("<u8").tobytes()

    @classmethod
    def from_bytes(cls, data: bytes) -> "BitPoly":
        if len(data) % 8:
            raise ParseError("binary length is not a multiple of 8", len(data) - len(data) % 8)
        return cls(np.frombuffer(data, dtype="<u8").astype(np.uint64))

    # queries ---------------------------------------------------------

    def degree(self) -> int:
        """Index of the top set coefficient; -1 for the zero polynomial."""
        nz = np.flatnonzero(self.words)
        if not len(nz):
            return -1
        j = int(nz[-1])
        return 64 * j + int(self.words[j]).bit_length() - 1

    def is_zero(self) -> bool:
        return not self.words.any()

    def coeff(self, i: int) -> int:
        if i >= self.nbits:
            return 0
        return int(self.words[i // 64]) >> (i % 64) & 1

    def resized(self, nbits: int) -> "BitPoly":
        if self.degree() >= nbits:
            raise ValueError(f"degree {self.degree()} does not fit in {nbits} bits")
        out = np.zeros(_nwords(nbits), dtype=np.uint64)
        k = min(len(out), len(self.words))
        out[:k] = self.words[:k]
        return BitPoly(out, nbits)

    def __xor__(self, other: "BitPoly") -> "BitPoly":
        n = max(self.nbits, other.nbits)
        a = self.resized(n).words ^ other.resized(n).words
        return BitPoly(a, n)

    __add__ = __xor__

    def __eq__(self, other) -> bool:
        # coefficient equality; the capacity is not part of the value
        if not isinstance(other, BitPoly):
            return NotImplemented
        a, b = self.words, other.words
        k = min(len(a), len(b))
        return bool(np.array_equal(a[:k], b[:k]) and not a[k:].any() and not b[k:].any())

    def __hash__(self):
        return hash(self.to_int())

    def __repr__(self):
        return f"BitPoly(0x{self.to_hex()}, nbits={self.nbits})"

    def __mul__(self, other: "BitPoly") -> "BitPoly":
        return mul_oracle(self, other)


# ------------------------------------------------------------ multiplication


@njit(cache=True)
def _schoolbook_kernel(a, b, out):
    tab = np.empty((16, 2), dtype=np.uint64)
    for i in range(a.shape[0]):
        x = a[i]
        if x == 0:
            continue
        tab[0, 0] = 0
        tab[0, 1] = 0
        tab[1, 0] = x
        tab[1, 1] = 0
        for t in range(2, 16):
            if t % 2 == 0:
                h = t >> 1
                tab[t, 0] = tab[h, 0] << np.uint64(1)
                tab[t, 1] = (tab[h, 1] << np.uint64(1)) | (tab[h, 0] >> np.uint64(63))
            else:
                tab[t, 0] = tab[t - 1, 0] ^ x
                tab[t, 1] = tab[t - 1, 1]
        for j in range(b.shape[0]):
            y = b[j]
            lo = np.uint64(0)
            hi = np.uint64(0)
            for s in range(15, -1, -1):
                hi = (hi << np.uint64(4)) | (lo >> np.uint64(60))
                lo = lo << np.uint64(4)
                idx = (y >> np.uint64(4 * s)) & np.uint64(15)
                lo ^= tab[idx, 0]
                hi ^= tab[idx, 1]
            out[i + j] ^= lo
            out[i + j + 1] ^= hi


def mul_words_schoolbook(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    out = np.zeros(len(a) + len(b), dtype=np.uint64)
    if len(a) and len(b):
        _schoolbook_kernel(np.ascontiguousarray(a), np.ascontiguousarray(b), out)
    return out


def _xor_padded(x: np.ndarray, y: np.ndarray, n: int) -> np.ndarray:
    out = np.zeros(n, dtype=np.uint64)
    out[: len(x)] = x
    out[: len(y)] ^= y
    return out


def mul_words(a: np.ndarray, b: np.ndarray, threshold: int = KARATSUBA_WORDS) -> np.ndarray:
    """Carry-less product of word arrays: Karatsuba above ``threshold`` words."""
    la, lb = len(a), len(b)
    if min(la, lb) <= threshold:
        return mul_words_schoolbook(a, b)
    out = np.zeros(la + lb, dtype=np.uint64)
    h = (max(la, lb) + 1) // 2
    a0, a1, b0, b1 = a[:h], a[h:], b[:h], b[h:]
    if not len(a1) or not len(b1):
        # one operand fits in the low half: two half products suffice
        if not len(b1):
            a0, a1, b0 = a0, a1, b
        else:
            a0, a1, b0 = b0, b1, a
        lo = mul_words(a0, b0, threshold)
        hi = mul_words(a1, b0, threshold)
        out[: len(lo)] ^= lo
        out[h : h + len(hi)] ^= hi
        return out
    z0 = mul_words(a0, b0, threshold)
    z2 = mul_words(a1, b1, threshold)
    z1 = mul_words(_xor_padded(a0, a1, h), _xor_padded(b0, b1, h), threshold)
    z1 ^= z0
    z1[: len(z2)] ^= z2
    out[: len(z0)] ^= z0
    out[2 * h : 2 * h + len(z2)] ^= z2
    top = min(len(z1), la + lb - h)
    out[h : h + top] ^= z1[:top]
    return out


def mul_schoolbook(a: BitPoly, b: BitPoly) -> BitPoly:
    if a.is_zero() or b.is_zero():
        return BitPoly.zero()
    n = a.nbits + b.nbits
    return BitPoly(mul_words_schoolbook(a.words, b.words)[: _nwords(n)], n)


def mul_oracle(a: BitPoly, b: BitPoly, threshold: int = KARATSUBA_WORDS) -> BitPoly:
    """Exact product; schoolbook shift-XOR below the Karatsuba threshold."""
    if a.is_zero() or b.is_zero():
        return BitPoly.zero()
    n = a.nbits + b.nbits
    return BitPoly(mul_words(a.words, b.words, threshold)[: _nwords(n)], n)


# ------------------------------------------------------------ segmentation


@dataclass
class BlockPoly:
    """``blocks[j]`` holds one 2w-bit field slot as 2w/64 little-endian words."""

    blocks: np.ndarray
    w: int

    @property
    def n(self) -> int:
        return self.blocks.shape[0]


def _check_width(w: int) -> int:
    if w not in (64, 128):
        raise ValueError(f"block width must be 64 or 128, got {w}")
    return w // 64


def split(a: BitPoly, w: int, n: int | None = None) -> BlockPoly:
    """Cut a into w-bit blocks, each placed in the low half of a 2w-bit slot.

    ``n`` pads the block count (with zero blocks) beyond ceil(nbits / w).
    """
    q = _check_width(w)
    need = -(-a.nbits // w)
    if n is None:
        n = need
    elif n < need:
        if a.degree() >= n * w:
            raise ValueError(f"{n} blocks of {w} bits cannot hold degree {a.degree()}")
    blocks = np.zeros((n, 2 * q), dtype=np.uint64)
    words = a.words[: n * q]
    flat = np.zeros(n * q, dtype=np.uint64)
    flat[: len(words)] = words
    blocks[:, :q] = flat.reshape(n, q)
    return BlockPoly(blocks, w)


def interleaved_combine(c: BlockPoly, nbits: int | None = None) -> BitPoly:
    """Sum block j shifted by j*w bits; each output bit gets at most two terms."""
    q = _check_width(c.w)
    n = c.n
    out = np.zeros(q * n + q, dtype=np.uint64)
    for t in range(2 * q):
        out[t : t + q * n : q] ^= c.blocks[:, t]
    total = 64 * len(out)
    if nbits is None:
        return BitPoly(out, total)
    need = _nwords(nbits)
    if np.any(out[need:]) or (nbits % 64 and need <= len(out) and int(out[need - 1]) >> (nbits % 64)):
        raise ValueError("combined product exceeds the requested size")
    res = np.zeros(need, dtype=np.uint64)
    k = min(need, len(out))
    res[:k] = out[:k]
    return BitPoly(res, nbits)
