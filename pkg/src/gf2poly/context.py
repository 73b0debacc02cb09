"""All precomputed field data, built once and shared read-only."""

from __future__ import annotations

import functools
from dataclasses import dataclass, field, replace

from . import cantor
from .bitmatrix import IsoMatrix
from .cantor import CantorBasis, SkTables
from .tower import SmallFieldTables, small_tables


@dataclass(frozen=True, eq=False)
class FieldContext:
    tables: SmallFieldTables
    basis: CantorBasis
    tower_gens: tuple[int, ...]
    sk: SkTables
    isos: dict[tuple[str, str], IsoMatrix] = field(repr=False)

    def iso(self, src: str, dst: str) -> IsoMatrix:
        try:
            return self.isos[(src, dst)]
        except KeyError:
            raise ValueError(f"no isomorphism {src} -> {dst}") from None

    def beta(self, i: int) -> int:
        return self.basis.beta[i]

    def dump_hex(self) -> str:
        return cantor.dump_hex(self.basis, self.isos)

    def with_corrupted_beta(self, index: int = 5, flip: int = 1 << 7) -> "FieldContext":
        """Copy with one basis vector perturbed; a fault-injection hook for tests."""
        beta = list(self.basis.beta)
        beta[index] ^= flip
        basis = CantorBasis(tuple(beta))
        isos = dict(self.isos)
        try:
            isos.update(cantor.build_isomorphisms(basis, self.tower_gens))
        except cantor.ContextError:
            pass
        return replace(self, basis=basis, isos=isos)


def build_context() -> FieldContext:
    basis = cantor.build_cantor_basis()
    xs = cantor.solve_tower_generators()
    return FieldContext(
        tables=small_tables(),
        basis=basis,
        tower_gens=xs,
        sk=SkTables.build(),
        isos=cantor.build_isomorphisms(basis, xs),
    )


@functools.lru_cache(maxsize=1)
def get_context() -> FieldContext:
    return build_context()


def build_iso(src: str, dst: str, ctx: FieldContext | None = None) -> IsoMatrix:
    return (ctx or get_context()).iso(src, dst)
