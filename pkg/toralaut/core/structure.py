# toralaut/core/structure.py

"""The lattice M(X), the quasitorus H(X) and the splitting X = Y x T.

Generators are taken as the caller supplies them: they are asserted to be
minimal elements generating I(X) (for a hypersurface, the single irreducible
h). Nothing here computes minimal polynomials of a general ideal.
"""

from __future__ import annotations

import itertools
import logging
from dataclasses import dataclass
from math import prod
from typing import Sequence

from .. import constants
from .errors import (
    DependentBasisError,
    DimensionMismatchError,
    MinimalityViolationError,
    RootsOutsideFieldError,
    UnitGeneratorError,
)
from .laurent import LaurentPoly, ScalarTuple, character, monomial_substitute, ones, support_differences
from .zlattice import IntMatrix, LatticeVector, lattice_hnf_basis, lattice_rank, snf, vneg, vscale

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class Quasitorus:
    """Finite cyclic factors b_1 | b_2 | ... times a torus of rank torus_rank."""

    finite_factors: tuple[int, ...]
    torus_rank: int

    def order(self) -> int | None:
        """Group order, or None when the group contains a torus."""
        if self.torus_rank:
            return None
        return prod(self.finite_factors)

    @property
    def is_trivial(self) -> bool:
        return not self.finite_factors and self.torus_rank == 0

    def describe(self) -> str:
        parts = [f"Z/{b}" for b in self.finite_factors]
        if not parts:
            parts = ["1"] if self.torus_rank == 0 else [f"T_{self.torus_rank}"]
        elif self.torus_rank:
            parts.append(f"T_{self.torus_rank}")
        return f"{' × '.join(parts)}, torus rank {self.torus_rank}"


@dataclass(frozen=True)
class AdaptedBasis:
    """Basis e_1..e_r of Z^r (rows of `basis`) with b_k e_k (k <= l) a basis of M(X).

    `change` is the unimodular V of the Smith decomposition; its inverse has the
    rows e_k. Substituting with V moves e_k to the k-th unit vector.
    """

    basis: IntMatrix
    factors: tuple[int, ...]
    change: IntMatrix

    @property
    def lattice_rank(self) -> int:
        return len(self.factors)

    @property
    def index(self) -> int | None:
        """[Z^r : M(X)], or None for a sublattice of lower rank."""
        if self.lattice_rank < self.basis.nrows:
            return None
        return prod(self.factors)

    def sublattice_basis(self) -> list[LatticeVector]:
        return [vscale(b, self.basis.row(k)) for k, b in enumerate(self.factors)]


def lattice_mx(gens: Sequence[LaurentPoly], rank: int) -> list[LatticeVector]:
    """HNF basis of M(X), generated by the support differences of the generators."""
    if not gens:
        return []
    for g in gens:
        if g.rank != rank:
            raise DimensionMismatchError(f"rank {g.rank} generator in a rank-{rank} torus")
        if len(g) == 1:
            raise UnitGeneratorError(f"generator {g} is a unit monomial; the variety is empty")
    basis = lattice_hnf_basis(support_differences(gens), rank)
    logger.debug("M(X) basis %s", basis)
    return basis


def adapted_basis(mx_basis: Sequence[Sequence[int]], rank: int) -> AdaptedBasis:
    if not mx_basis:
        identity = IntMatrix.identity(rank)
        return AdaptedBasis(identity, (), identity)
    b = IntMatrix.from_rows(mx_basis)
    if b.ncols != rank:
        raise DimensionMismatchError(f"basis vectors of length {b.ncols} in rank {rank}")
    if lattice_rank(b.entries, rank) < b.nrows:
        raise DependentBasisError("M(X) basis vectors are linearly dependent")
    decomposition = snf(b)
    return AdaptedBasis(
        basis=decomposition.V.inverse(),
        factors=decomposition.invariant_factors,
        change=decomposition.V,
    )


def quasitorus_hx(mx_basis: Sequence[Sequence[int]], rank: int) -> Quasitorus:
    """H(X) = {t : chi^m(t) = 1 for m in M(X)} read off the Smith form of the basis."""
    adapted = adapted_basis(mx_basis, rank)
    h = Quasitorus(
        finite_factors=tuple(b for b in adapted.factors if b > 1),
        torus_rank=rank - adapted.lattice_rank,
    )
    logger.info("H(X) = %s", h.describe())
    return h


def quasitorus_elements(mx_basis: Sequence[Sequence[int]], rank: int) -> list[ScalarTuple]:
    """Explicit points of a finite H(X) whose cyclic orders all divide 4."""
    adapted = adapted_basis(mx_basis, rank)
    if adapted.lattice_rank < rank:
        raise RootsOutsideFieldError("H(X) contains a torus and has no finite list of elements")
    unsupported = [b for b in adapted.factors if b not in constants.ROOTS_OF_UNITY]
    if unsupported:
        raise RootsOutsideFieldError(
            f"cyclic factors {unsupported} need roots of unity outside Q(i)"
        )
    # chi^{e_k}(t) runs over the b_k-th roots of unity; t_i = prod_k eps_k^{V_ik}.
    v = adapted.change
    return [
        tuple(character(v.row(i), eps) for i in range(rank))
        for eps in itertools.product(*(constants.ROOTS_OF_UNITY[b] for b in adapted.factors))
    ]


@dataclass(frozen=True)
class SplitResult:
    """Monomial coordinate change exhibiting X = Y x T_s."""

    change_of_basis: IntMatrix
    torus_rank: int
    residual_generators: tuple[LaurentPoly, ...]
    is_torus: bool

    @property
    def ambient_rank(self) -> int:
        return self.change_of_basis.nrows

    @property
    def residual_rank(self) -> int:
        return self.ambient_rank - self.torus_rank

    def lift_generators(self) -> list[LaurentPoly]:
        """Residual generators moved back to the input coordinates."""
        r, s = self.ambient_rank, self.torus_rank
        back = self.change_of_basis.inverse()
        return [
            monomial_substitute(
                LaurentPoly(r, {m + (0,) * s: c for m, c in g.items()}), back, ones(r)
            )
            for g in self.residual_generators
        ]


def split_torus_factor(gens: Sequence[LaurentPoly], rank: int) -> SplitResult:
    """Split off the maximal torus T_s, s = r - rank M(X).

    After the substitution each generator is multiplied by chi^{-m0} (m0 its
    lexicographically smallest exponent) and must then be free of the last s
    variables.
    """
    adapted = adapted_basis(lattice_mx(gens, rank), rank)
    l = adapted.lattice_rank
    s = rank - l
    residuals = []
    for g in gens:
        moved = monomial_substitute(g, adapted.change, ones(rank))
        normalized = moved.shift(vneg(moved.support()[0]))
        for m in normalized.support():
            if any(m[l:]):
                raise MinimalityViolationError(
                    f"generator {g} is not semi-invariant under H(X): "
                    f"exponent {m} involves the torus coordinates"
                )
        residuals.append(LaurentPoly(l, {m[:l]: c for m, c in normalized.items()}))
    logger.info("split: ambient rank %d, torus factor rank %d, %d residual generators", rank, s, len(residuals))
    return SplitResult(
        change_of_basis=adapted.change,
        torus_rank=s,
        residual_generators=tuple(residuals),
        is_torus=not gens,
    )
