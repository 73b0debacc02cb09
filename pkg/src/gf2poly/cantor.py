"""Cantor basis of GF(2^128), subspace vanishing polynomials, and the linear
maps between the polynomial, Cantor and tower representations.

The vanishing polynomial of ``V_i = span(beta_0 .. beta_{i-1})`` is the i-fold
composition of ``s_1(x) = x^2 + x``.  It is GF(2)-linear, so every s_i is a
bit matrix once a representation is fixed.  With respect to the Cantor
basis s_i is a right shift of the index; in the tower basis it is tabulated.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import gf128
from .bitmatrix import BitMatrix, IsoMatrix, LinearSolver, SingularMatrixError
from .tower import tower_mul

SK_BITS = 32


class ContextError(RuntimeError):
    """Precomputed field data could not be built."""


# ------------------------------------------------------------ s_i symbolic


def linearized_expansion(i: int) -> list[int]:
    """Exponents of the monomials of s_i(x); all are powers of two.

    A linearized polynomial sum c_j x^(2^j) is stored as the bitmask of j's;
    squaring shifts the mask and s_{i+1} = s_i^2 + s_i.
    """
    mask = 1
    for _ in range(i):
        mask ^= mask << 1
    return [1 << j for j in range(mask.bit_length()) if mask >> j & 1]


# ------------------------------------------------------------ Artin-Schreier


_AS_SOLVER: LinearSolver | None = None


def _as_solver() -> LinearSolver:
    global _AS_SOLVER
    if _AS_SOLVER is None:
        cols = tuple(gf128.gf128_sqr(1 << i) ^ (1 << i) for i in range(128))
        _AS_SOLVER = LinearSolver(BitMatrix(cols, 128))
    return _AS_SOLVER


def solve_artin_schreier(c: int) -> int:
    """Smaller of the two roots of r^2 + r = c in GF(2^128).

    r -> r^2 + r is GF(2)-linear with kernel {0, 1}, so this is a linear
    solve; the other root is r ^ 1.
    """
    try:
        r = _as_solver().solve(c)
    except SingularMatrixError as exc:
        raise ContextError(f"x^2 + x = {c:#x} has no root in GF(2^128)") from exc
    return min(r, r ^ 1)


def trace(a: int) -> int:
    t, x = 0, a
    for _ in range(128):
        t ^= x
        x = gf128.gf128_sqr(x)
    return t


# ------------------------------------------------------------ Cantor basis


@dataclass(frozen=True)
class CantorBasis:
    beta: tuple[int, ...]

    def __len__(self):
        return len(self.beta)

    def __getitem__(self, i):
        return self.beta[i]

    def chain_holds(self) -> bool:
        b = self.beta
        return b[0] == 1 and all(gf128.gf128_sqr(b[i]) ^ b[i] == b[i - 1] for i in range(1, len(b)))

    def element(self, index: int) -> int:
        """phi_beta(index) as a GF(2^128) polynomial-basis element."""
        out, j = 0, 0
        while index:
            if index & 1:
                out ^= self.beta[j]
            index >>= 1
            j += 1
        return out


def build_cantor_basis() -> CantorBasis:
    beta = [1]
    for _ in range(1, 128):
        beta.append(solve_artin_schreier(beta[-1]))
    return CantorBasis(tuple(beta))


def solve_tower_generators() -> tuple[int, ...]:
    """Images of x_1 .. x_7 in GF(2^128): x_k^2 + x_k = x_1 ... x_{k-1}."""
    xs: list[int] = []
    prod = 1
    for _ in range(7):
        x = solve_artin_schreier(prod)
        xs.append(x)
        prod = gf128.gf128_mul(prod, x)
    return tuple(xs)


def tower_basis_images(xs: tuple[int, ...]) -> tuple[int, ...]:
    """GF(2^128) image of v_j for j < 128."""
    images = [1]
    for j in range(1, 128):
        top = j.bit_length() - 1
        images.append(gf128.gf128_mul(images[j ^ (1 << top)], xs[top]))
    return tuple(images)


def poly256_columns() -> tuple[int, ...]:
    """Powers zeta^i, i < 256, of zeta = x_8 in TGF(2^256).

    zeta lies outside the 128-bit subfield, so its minimal polynomial has
    degree 256 and these columns span TGF(2^256).
    """
    zeta = 1 << 128
    cols = [1]
    for _ in range(255):
        cols.append(tower_mul(cols[-1], zeta, 8))
    return tuple(cols)


# ------------------------------------------------------------ s_i evaluation


def eval_s_cantor(i: int, j: int) -> int:
    """s_i(phi_beta(j)) = phi_beta(j >> i)."""
    if not 0 <= i <= 127:
        raise ValueError("s_i index out of range")
    return j >> i


def s1_tower(a: int, level: int = 5) -> int:
    return tower_mul(a, a, level) ^ a


@dataclass(frozen=True)
class SkTables:
    """s_1 .. s_31 as linear maps on 32-bit tower values, with 8-bit M4R.

    ``columns[i, j] = s_i(v_j)``; row 0 is the identity.
    """

    columns: np.ndarray  # (32, 32) uint64
    tables: np.ndarray  # (32, 4, 256) uint32

    @classmethod
    def build(cls) -> "SkTables":
        cols = np.zeros((SK_BITS, SK_BITS), dtype=np.uint64)
        s1 = [s1_tower(1 << j) for j in range(SK_BITS)]
        s1_matrix = BitMatrix(tuple(s1), SK_BITS)
        current = list(1 << j for j in range(SK_BITS))
        for i in range(SK_BITS):
            cols[i] = current
            current = [s1_matrix.apply(c) for c in current]
        tables = np.zeros((SK_BITS, 4, 256), dtype=np.uint32)
        for i in range(SK_BITS):
            iso = IsoMatrix(BitMatrix(tuple(int(c) for c in cols[i]), SK_BITS), chunk=8)
            tables[i] = iso.tables[:, :, 0].astype(np.uint32)
        return cls(cols, tables)

    def eval(self, i: int, alpha: int) -> int:
        if not 0 <= i < SK_BITS:
            raise ValueError("s_i index out of range for 32-bit tables")
        if not 0 <= alpha < 1 << SK_BITS:
            raise ValueError("alpha exceeds the 32-bit table domain")
        t = self.tables[i]
        return int(t[0, alpha & 255] ^ t[1, (alpha >> 8) & 255] ^ t[2, (alpha >> 16) & 255] ^ t[3, alpha >> 24])

    def eval_array(self, i: int, alphas: np.ndarray) -> np.ndarray:
        a = np.asarray(alphas, dtype=np.uint64)
        if a.size and int(a.max()) >> SK_BITS:
            raise ValueError("alpha exceeds the 32-bit table domain")
        a = a.astype(np.int64)
        t = self.tables[i]
        return (t[0, a & 255] ^ t[1, (a >> 8) & 255] ^ t[2, (a >> 16) & 255] ^ t[3, a >> 24]).astype(np.int64)


def eval_s_tower(sk: SkTables, i: int, alpha: int) -> int:
    """s_i(alpha) for a tower element alpha < 2^32."""
    return sk.eval(i, alpha)


# ------------------------------------------------------------ isomorphisms

REPRESENTATIONS = ("gf128", "cantor", "tower", "poly256", "tower256")


def build_isomorphisms(basis: CantorBasis, xs: tuple[int, ...]) -> dict[tuple[str, str], IsoMatrix]:
    tower_to_gf = IsoMatrix(BitMatrix(tower_basis_images(xs), 128))
    cantor_to_gf = IsoMatrix(BitMatrix(basis.beta, 128))
    try:
        gf_to_tower = tower_to_gf.inverse()
        gf_to_cantor = cantor_to_gf.inverse()
        poly_to_tower = IsoMatrix(BitMatrix(poly256_columns(), 256))
        tower_to_poly = poly_to_tower.inverse()
    except SingularMatrixError as exc:
        raise ContextError(f"representation change is not invertible: {exc}") from exc
    return {
        ("tower", "gf128"): tower_to_gf,
        ("gf128", "tower"): gf_to_tower,
        ("cantor", "gf128"): cantor_to_gf,
        ("gf128", "cantor"): gf_to_cantor,
        ("tower", "cantor"): gf_to_cantor.compose(tower_to_gf),
        ("cantor", "tower"): gf_to_tower.compose(cantor_to_gf),
        ("poly256", "tower256"): poly_to_tower,
        ("tower256", "poly256"): tower_to_poly,
    }


def dump_hex(basis: CantorBasis, isos: dict[tuple[str, str], IsoMatrix]) -> str:
    """Basis vectors and matrix columns as hex text, one value per line."""
    width = 32
    lines = ["# beta"]
    lines += [f"{b:0{width}x}" for b in basis.beta]
    for (src, dst), iso in sorted(isos.items()):
        lines.append(f"# {src} -> {dst}")
        w = (iso.out_bits + 3) // 4
        lines += [f"{c:0{w}x}" for c in iso.matrix.columns]
    return "\n".join(lines) + "\n"
