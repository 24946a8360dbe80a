# toralaut/core/assemble.py

"""Full pipeline: split X = Y x T_s, compute H(Y) and GAff, and describe Aut(X).

Aut(X) is reported structurally as Aut(Y) x| (GL_s(Z) x| (Z^l x K*)^s) with
l = rank E(Y); the infinite factors are only named, never enumerated.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from typing import Sequence

from .errors import NotHypersurfaceError
from .gaff import GaffGroup, enumerate_gaff
from .laurent import LaurentPoly
from .structure import Quasitorus, SplitResult, lattice_mx, quasitorus_hx, split_torus_factor

logger = logging.getLogger(__name__)

NOTE_NOT_HYPERSURFACE = "Aut(Y) not computed: Y is not a hypersurface in its torus (rk E(Y) - dim Y > 1)"
NOTE_SPLITTING_OPEN = "Aut(Y) is an extension of GAff(M, h) by H(Y); whether it splits as H(Y) x| GAff is not decided"


@dataclass(frozen=True)
class AutFormula:
    """Symbolic Aut(X) = Aut(Y) x| (GL_s(Z) x| (Z^l x K*)^s), or T_r x| GL_r(Z) for a torus."""

    torus_rank_s: int
    rank_e_y: int
    is_torus: bool

    def render(self) -> str:
        s, l = self.torus_rank_s, self.rank_e_y
        if self.is_torus:
            return f"T_{s} ⋊ GL_{s}(Z)"
        if s == 0:
            return "Aut(Y)"
        lattice = f"Z^{l} × K*" if l else "K*"
        return f"Aut(Y) ⋉ (GL_{s}(Z) ⋉ ({lattice})^{s})"

    def __str__(self) -> str:
        return self.render()


@dataclass(frozen=True)
class AutStructure:
    torus_rank_s: int
    rank_e_y: int
    h_y: Quasitorus
    formula: AutFormula
    gaff: GaffGroup | None = None
    notes: tuple[str, ...] = field(default_factory=tuple)

    @property
    def is_torus(self) -> bool:
        return self.formula.is_torus

    @property
    def gaff_order(self) -> int | None:
        return self.gaff.order if self.gaff is not None else None

    @property
    def aut_y_order(self) -> int | None:
        """|H(Y)| * |GAff(M, h)| when both are finite."""
        h_order = self.h_y.order()
        if self.gaff is None or h_order is None:
            return None
        return h_order * self.gaff.order

    @property
    def aut_y_finite(self) -> bool:
        return self.aut_y_order is not None


def residual_hypersurface(gens: Sequence[LaurentPoly], rank: int) -> tuple[SplitResult, LaurentPoly]:
    """Split off the torus factor and return the single residual generator of Y."""
    split = split_torus_factor(gens, rank)
    if len(split.residual_generators) != 1:
        raise NotHypersurfaceError(
            f"Y is cut out by {len(split.residual_generators)} generators; "
            "GAff is defined for a single generator h"
        )
    return split, split.residual_generators[0]


def aut_structure(
    gens: Sequence[LaurentPoly],
    rank: int,
    max_support: int | None = None,
    threads: int | None = None,
) -> AutStructure:
    split = split_torus_factor(gens, rank)
    l = split.residual_rank
    formula = AutFormula(torus_rank_s=split.torus_rank, rank_e_y=l, is_torus=split.is_torus)
    residuals = list(split.residual_generators)
    h_y = quasitorus_hx(lattice_mx(residuals, l), l)
    notes = []
    gaff = None
    if split.is_torus:
        logger.info("X is the torus T_%d", rank)
    elif len(residuals) == 1:
        gaff = enumerate_gaff(residuals[0], max_support=max_support, threads=threads)
        if not h_y.is_trivial:
            notes.append(NOTE_SPLITTING_OPEN)
    else:
        notes.append(NOTE_NOT_HYPERSURFACE)
    result = AutStructure(
        torus_rank_s=split.torus_rank,
        rank_e_y=l,
        h_y=h_y,
        formula=formula,
        gaff=gaff,
        notes=tuple(notes),
    )
    logger.info("Aut(X) = %s, |Aut(Y)| = %s", formula, result.aut_y_order)
    return result
