"""Dense GF(2) matrices as lists of integer columns, with M4R application."""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np
from numba import njit


class SingularMatrixError(ArithmeticError):
    pass


def _parity(x: int) -> int:
    return bin(x).count("1") & 1


@dataclass(frozen=True)
class BitMatrix:
    """``columns[j]`` is the image of the j-th input basis vector."""

    columns: tuple[int, ...]
    nrows: int

    @classmethod
    def identity(cls, n: int) -> "BitMatrix":
        return cls(tuple(1 << j for j in range(n)), n)

    @property
    def ncols(self) -> int:
        return len(self.columns)

    def apply(self, v: int) -> int:
        out = 0
        j = 0
        while v:
            if v & 1:
                out ^= self.columns[j]
            v >>= 1
            j += 1
        return out

    def compose(self, inner: "BitMatrix") -> "BitMatrix":
        """Matrix of ``self(inner(v))``."""
        return BitMatrix(tuple(self.apply(c) for c in inner.columns), self.nrows)

    def rows(self) -> list[int]:
        rows = [0] * self.nrows
        for j, col in enumerate(self.columns):
            i = 0
            while col:
                if col & 1:
                    rows[i] |= 1 << j
                col >>= 1
                i += 1
        return rows

    def inverse(self) -> "BitMatrix":
        if self.nrows != self.ncols:
            raise SingularMatrixError("only square matrices can be inverted")
        solver = LinearSolver(self)
        if solver.rank != self.ncols:
            raise SingularMatrixError(f"rank {solver.rank} < {self.ncols}")
        return BitMatrix(tuple(solver.solve(1 << i) for i in range(self.nrows)), self.ncols)


class LinearSolver:
    """Gauss-Jordan elimination of ``m``, reusable for many right-hand sides."""

    def __init__(self, m: BitMatrix):
        rows = m.rows()
        aug = [1 << i for i in range(m.nrows)]
        pivots = []
        rank = 0
        for col in range(m.ncols):
            bit = 1 << col
            p = next((r for r in range(rank, m.nrows) if rows[r] & bit), None)
            if p is None:
                continue
            rows[rank], rows[p] = rows[p], rows[rank]
            aug[rank], aug[p] = aug[p], aug[rank]
            for r in range(m.nrows):
                if r != rank and rows[r] & bit:
                    rows[r] ^= rows[rank]
                    aug[r] ^= aug[rank]
            pivots.append(col)
            rank += 1
        self.rank = rank
        self._pivots = pivots
        self._aug = aug

    def solve(self, target: int) -> int:
        """One solution x of m x = target, free variables set to zero."""
        for r in range(self.rank, len(self._aug)):
            if _parity(self._aug[r] & target):
                raise SingularMatrixError("system has no solution")
        x = 0
        for r, col in enumerate(self._pivots):
            if _parity(self._aug[r] & target):
                x |= 1 << col
        return x


def _words(nbits: int) -> int:
    return (nbits + 63) // 64


@dataclass(frozen=True)
class IsoMatrix:
    """A linear map plus its method-of-four-Russians lookup tables.

    ``tables[t, v]`` holds the image of chunk value ``v`` placed at input
    bits ``[t*chunk, (t+1)*chunk)``, as little-endian uint64 words.
    """

    matrix: BitMatrix
    chunk: int = 4
    tables: np.ndarray = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        m, c = self.matrix, self.chunk
        nchunks = (m.ncols + c - 1) // c
        out_words = _words(m.nrows)
        tables = np.zeros((nchunks, 1 << c, out_words), dtype=np.uint64)
        for t in range(nchunks):
            cols = list(m.columns[t * c : (t + 1) * c])
            cols += [0] * (c - len(cols))
            entries = [0] * (1 << c)
            for v in range(1, 1 << c):
                low = v & -v
                entries[v] = entries[v ^ low] ^ cols[low.bit_length() - 1]
            for v, e in enumerate(entries):
                for w in range(out_words):
                    tables[t, v, w] = (e >> (64 * w)) & 0xFFFFFFFFFFFFFFFF
        object.__setattr__(self, "tables", tables)

    @property
    def in_bits(self) -> int:
        return self.matrix.ncols

    @property
    def out_bits(self) -> int:
        return self.matrix.nrows

    def apply(self, v: int) -> int:
        return self.matrix.apply(v)

    def apply_m4r(self, v: int) -> int:
        out = 0
        mask = (1 << self.chunk) - 1
        for t in range(self.tables.shape[0]):
            row = self.tables[t, (v >> (t * self.chunk)) & mask]
            for w, word in enumerate(row):
                out ^= int(word) << (64 * w)
        return out

    def apply_array(self, arr: np.ndarray) -> np.ndarray:
        """Apply to every row of an (N, in_words) uint64 array (M4R path)."""
        arr = np.ascontiguousarray(arr, dtype=np.uint64)
        if arr.ndim == 1:
            arr = arr[:, None]
        out = np.empty((arr.shape[0], self.tables.shape[2]), dtype=np.uint64)
        _m4r_kernel(arr, self.tables, self.chunk, out)
        return out

    def inverse(self, chunk: int | None = None) -> "IsoMatrix":
        return IsoMatrix(self.matrix.inverse(), chunk or self.chunk)

    def compose(self, inner: "IsoMatrix", chunk: int | None = None) -> "IsoMatrix":
        return IsoMatrix(self.matrix.compose(inner.matrix), chunk or self.chunk)


@njit(cache=True)
def _m4r_kernel(arr, tables, chunk, out):
    nchunks = tables.shape[0]
    out_words = tables.shape[2]
    in_words = arr.shape[1]
    per_word = 64 // chunk
    mask = np.uint64((1 << chunk) - 1)
    for i in range(arr.shape[0]):
        for w in range(out_words):
            out[i, w] = 0
        for t in range(nchunks):
            word = t // per_word
            if word >= in_words:
                break
            v = (arr[i, word] >> np.uint64((t % per_word) * chunk)) & mask
            if v:
                for w in range(out_words):
                    out[i, w] ^= tables[t, v, w]
