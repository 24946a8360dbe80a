# toralaut/core/gaff.py

"""GAff(M, h): affine unimodular symmetries of supp h that respect the coefficients.

An element phi acts on exponents by phi(m) = linear @ m + translation and must
map supp h onto itself while satisfying, for every integer relation
sum a_m m = 0 with sum a_m = 0,

    prod alpha_m ** a_m == prod alpha_phi(m) ** a_m.

Each element lifts to a monomial automorphism psi of the ambient torus with
psi*(h) = alpha * chi^(-v) * h; the lift is recorded as an AutoCertificate that
can be checked with exact arithmetic in Q(i) even when the torus point lambda
itself would need roots outside Q(i).
"""

from __future__ import annotations

import itertools
import logging
import math
import multiprocessing as mp
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from ..config.settings import settings
from .errors import (
    CertificateError,
    DependentBasisError,
    DimensionMismatchError,
    InconsistencyError,
    NotUnimodularError,
    RootsOutsideFieldError,
    SupportBoundError,
    SupportNotPreservedError,
    TorusFactorNotSplitError,
    ZeroPolynomialError,
)
from .laurent import (
    ONE,
    GaussianRational,
    LaurentPoly,
    MonomialMap,
    ScalarTuple,
    character,
    monomial_substitute,
    proportional_monomial_factor,
    scalar_tuple,
    torus_point_with_characters,
)
from .structure import adapted_basis, lattice_mx
from .zlattice import (
    IntMatrix,
    LatticeVector,
    as_vector,
    express_in_generators,
    kernel_basis,
    lattice_rank,
    rational_inverse,
    solve_in_sublattice,
    vadd,
    vneg,
    vsub,
    zero_vector,
)

logger = logging.getLogger(__name__)

Permutation = tuple[int, ...]


# --- Affine maps ---

@dataclass(frozen=True)
class AffineLatticeMap:
    """m -> linear @ m + translation with linear in GL_r(Z)."""

    linear: IntMatrix
    translation: LatticeVector

    def __post_init__(self):
        object.__setattr__(self, "translation", as_vector(self.translation))
        if not self.linear.is_square or self.linear.nrows != len(self.translation):
            raise DimensionMismatchError(
                f"{self.linear.nrows}x{self.linear.ncols} linear part with a translation "
                f"of length {len(self.translation)}"
            )
        if not self.linear.is_unimodular():
            raise NotUnimodularError(f"linear part {self.linear.tolist()} is not unimodular")

    @classmethod
    def identity(cls, rank: int) -> "AffineLatticeMap":
        return cls(IntMatrix.identity(rank), zero_vector(rank))

    @property
    def rank(self) -> int:
        return self.linear.nrows

    def apply(self, m: Sequence[int]) -> LatticeVector:
        return vadd(self.linear @ m, self.translation)

    def compose(self, other: "AffineLatticeMap") -> "AffineLatticeMap":
        """self o other (apply other first)."""
        return AffineLatticeMap(self.linear @ other.linear, self.apply(other.translation))

    def inverse(self) -> "AffineLatticeMap":
        inv = self.linear.inverse()
        return AffineLatticeMap(inv, vneg(inv @ self.translation))

    def is_identity(self) -> bool:
        return self == AffineLatticeMap.identity(self.rank)

    def exponent_matrix(self) -> IntMatrix:
        """Rows are the exponents of psi*(t_i) for a lift psi of this map."""
        return self.linear.transpose()


def _induced_permutation(phi: AffineLatticeMap, support: Sequence[LatticeVector]) -> Permutation | None:
    position = {m: k for k, m in enumerate(support)}
    images = []
    for m in support:
        k = position.get(phi.apply(m))
        if k is None:
            return None
        images.append(k)
    return tuple(images)


def cycle_notation(sigma: Sequence[int]) -> str:
    """Cycles over support indices, fixed points omitted; '()' for the identity."""
    seen = set()
    cycles = []
    for start in range(len(sigma)):
        if start in seen or sigma[start] == start:
            continue
        cycle = [start]
        seen.add(start)
        k = sigma[start]
        while k != start:
            cycle.append(k)
            seen.add(k)
            k = sigma[k]
        cycles.append("(" + " ".join(str(k) for k in cycle) + ")")
    return "".join(cycles) or "()"


def _permutation_order(sigma: Sequence[int]) -> int:
    order, seen = 1, set()
    for start in range(len(sigma)):
        if start in seen:
            continue
        length, k = 0, start
        while k not in seen:
            seen.add(k)
            k = sigma[k]
            length += 1
        order = math.lcm(order, length)
    return order


def _compose_permutations(sigma: Sequence[int], tau: Sequence[int]) -> Permutation:
    return tuple(sigma[k] for k in tau)


# --- The group ---

@dataclass(frozen=True)
class GaffGroup:
    """Elements of GAff(M, h) with the permutations they induce on the sorted support."""

    elements: tuple[AffineLatticeMap, ...]
    support: tuple[LatticeVector, ...]
    permutations: tuple[Permutation, ...]

    @property
    def order(self) -> int:
        return len(self.elements)

    def element_order(self, index: int) -> int:
        return _permutation_order(self.permutations[index])

    def element_orders(self) -> list[int]:
        return sorted(self.element_order(k) for k in range(self.order))

    def is_abelian(self) -> bool:
        return all(
            _compose_permutations(s, t) == _compose_permutations(t, s)
            for s, t in itertools.combinations(self.permutations, 2)
        )

    def index_of(self, phi: AffineLatticeMap) -> int | None:
        sigma = _induced_permutation(phi, self.support)
        if sigma is None:
            return None
        try:
            return self.permutations.index(sigma)
        except ValueError:
            return None

    def structure_hint(self) -> str:
        n = self.order
        if n == 1:
            return "trivial"
        orders = self.element_orders()
        if orders[-1] == n:
            return f"Z/{n}"
        abelian = self.is_abelian()
        if n == 4 and abelian:
            return "Z/2 x Z/2"
        if n == 6 and not abelian:
            return "S3"
        if n == 8 and not abelian:
            return "D4" if orders.count(2) == 5 else "Q8"
        return f"order {n}, {'abelian' if abelian else 'nonabelian'}"


# --- Coefficient condition ---

def relation_lattice_basis(support: Sequence[Sequence[int]]) -> list[LatticeVector]:
    """Integer relations sum a_m m = 0 with sum a_m = 0, HNF-canonical."""
    if not support:
        raise ZeroPolynomialError("relation lattice of an empty support")
    columns = [as_vector(m) + (1,) for m in support]
    basis = kernel_basis(IntMatrix.from_columns(columns))
    logger.debug("relation lattice of %d points has rank %d", len(columns), len(basis))
    return basis


def _relation_value(coefficients: Sequence[GaussianRational], relation: Sequence[int]) -> GaussianRational:
    value = ONE
    for c, a in zip(coefficients, relation):
        if a:
            value = value * c ** a
    return value


def eq2_holds(h: LaurentPoly, phi: AffineLatticeMap, relations: Sequence[Sequence[int]]) -> bool:
    support = h.support()
    sigma = _induced_permutation(phi, support)
    if sigma is None:
        raise SupportNotPreservedError(f"affine map does not preserve the support of {h}")
    alpha = [h.coefficient(m) for m in support]
    moved = [alpha[k] for k in sigma]
    return all(_relation_value(alpha, a) == _relation_value(moved, a) for a in relations)


# --- Affine extension ---

def _affine_frame(support: Sequence[LatticeVector]) -> list[int]:
    """Index 0 plus r indices whose differences from support[0] are independent."""
    rank = len(support[0])
    frame, differences = [0], []
    for k in range(1, len(support)):
        candidate = differences + [vsub(support[k], support[0])]
        if lattice_rank(candidate, rank) == len(candidate):
            frame.append(k)
            differences = candidate
            if len(differences) == rank:
                break
    if len(differences) < rank:
        raise TorusFactorNotSplitError(
            f"support differences span rank {len(differences)} in Z^{rank}; "
            "split off the torus factor first"
        )
    return frame


def _frame_inverse(support: Sequence[LatticeVector], frame: Sequence[int]) -> list[list[Fraction]]:
    base = support[frame[0]]
    p = IntMatrix.from_columns([vsub(support[k], base) for k in frame[1:]], nrows=len(base))
    return rational_inverse(p.entries)


def _candidate_map(
    support: Sequence[LatticeVector],
    frame: Sequence[int],
    frame_inverse: Sequence[Sequence[Fraction]],
    images: Sequence[int],
) -> AffineLatticeMap | None:
    """The affine map sending the frame to the given image indices, if integral and unimodular."""
    rank = len(support[0])
    base = support[images[0]]
    q = [vsub(support[k], base) for k in images[1:]]
    linear = []
    for i in range(rank):
        row = []
        for j in range(rank):
            x = sum(q[k][i] * frame_inverse[k][j] for k in range(rank))
            if x.denominator != 1:
                return None
            row.append(int(x))
        linear.append(row)
    a = IntMatrix.from_rows(linear, ncols=rank)
    if not a.is_unimodular():
        return None
    return AffineLatticeMap(a, vsub(base, a @ support[frame[0]]))


def affine_extension(support: Sequence[Sequence[int]], sigma: Sequence[int]) -> AffineLatticeMap | None:
    """The affine map with phi(support[i]) == support[sigma[i]], if it is integral and unimodular."""
    support = [as_vector(m) for m in support]
    if sorted(sigma) != list(range(len(support))):
        raise DimensionMismatchError(f"{tuple(sigma)} is not a permutation of {len(support)} points")
    frame = _affine_frame(support)
    phi = _candidate_map(support, frame, _frame_inverse(support, frame), [sigma[k] for k in frame])
    if phi is None:
        return None
    if any(phi.apply(m) != support[sigma[k]] for k, m in enumerate(support)):
        return None
    return phi


# --- Enumeration ---

def _enumerate_branch(
    h: LaurentPoly,
    frame: Sequence[int],
    frame_inverse: Sequence[Sequence[Fraction]],
    relations: Sequence[LatticeVector],
    first_image: int,
) -> list[tuple[Permutation, AffineLatticeMap]]:
    """All GAff elements sending the frame base point to support[first_image]."""
    support = h.support()
    rest = [k for k in range(len(support)) if k != first_image]
    found = []
    candidates = 0
    for tail in itertools.permutations(rest, len(frame) - 1):
        candidates += 1
        phi = _candidate_map(support, frame, frame_inverse, (first_image,) + tail)
        if phi is None:
            continue
        sigma = _induced_permutation(phi, support)
        if sigma is None or not eq2_holds(h, phi, relations):
            continue
        found.append((sigma, phi))
    logger.debug("branch %d: %d candidates, %d elements", first_image, candidates, len(found))
    return found


def enumerate_gaff(h: LaurentPoly, max_support: int | None = None, threads: int | None = None) -> GaffGroup:
    """Enumerate GAff(M, h) for a hypersurface whose support differences span Z^r."""
    if max_support is None:
        max_support = settings.max_support
    if threads is None:
        threads = settings.threads
    if threads < 1:
        raise ValueError(f"threads must be at least 1, got {threads}")
    if h.is_zero():
        raise ZeroPolynomialError("GAff of the zero polynomial")
    support = h.support()
    if len(support) > max_support:
        raise SupportBoundError(len(support), max_support)
    rank = h.rank
    if len(lattice_mx([h], rank)) < rank:
        raise TorusFactorNotSplitError(
            f"support differences of {h} do not span Z^{rank}; split off the torus factor first"
        )
    relations = relation_lattice_basis(support)
    frame = _affine_frame(support)
    frame_inverse = _frame_inverse(support, frame)
    tasks = [(h, frame, frame_inverse, relations, k) for k in range(len(support))]
    logger.info(
        "enumerating GAff: %d support points, rank %d, %d relations, %d branches",
        len(support), rank, len(relations), len(tasks),
    )
    if threads == 1:
        branches = list(itertools.starmap(_enumerate_branch, tasks))
    else:
        mp_context = mp.get_context("spawn")
        with mp_context.Pool(processes=min(threads, len(tasks))) as pool:
            branches = pool.starmap_async(_enumerate_branch, tasks).get()
    found = sorted((item for branch in branches for item in branch), key=lambda item: item[0])
    group = GaffGroup(
        elements=tuple(phi for _, phi in found),
        support=tuple(support),
        permutations=tuple(sigma for sigma, _ in found),
    )
    logger.info("GAff order %d", group.order)
    return group


# --- Certificates ---

@dataclass(frozen=True)
class AutoCertificate:
    """Monomial automorphism data lifting an element of GAff(M, h).

    `linear` holds the exponent rows of psi*(t_i); the constraint values are
    c_j = chi^{f_j}(lambda) for the basis f_j of M(h). When `explicit_lambda` is
    set, `proportionality` is (alpha, v) with psi*(h) == alpha * chi^(-v) * h.
    """

    linear: IntMatrix
    basis_f: tuple[LatticeVector, ...]
    constraint_values: tuple[GaussianRational, ...]
    translation_v: LatticeVector
    explicit_lambda: ScalarTuple | None = None
    proportionality: tuple[GaussianRational, LatticeVector] | None = None

    @property
    def rank(self) -> int:
        return self.linear.nrows

    def affine_map(self) -> AffineLatticeMap:
        return AffineLatticeMap(self.linear.transpose(), self.translation_v)

    def monomial_map(self) -> MonomialMap:
        if self.explicit_lambda is None:
            raise RootsOutsideFieldError(
                "certificate has no explicit torus point; M(h) has index > 1 in Z^r"
            )
        return MonomialMap(self.linear, self.explicit_lambda)


def _differences_from_base(support: Sequence[LatticeVector]) -> list[LatticeVector]:
    return [vsub(m, support[0]) for m in support[1:]]


def _coefficient_ratios(h: LaurentPoly, phi: AffineLatticeMap) -> list[GaussianRational]:
    """(alpha_phi(m) / alpha_phi(m0)) * (alpha_m0 / alpha_m) for m after m0."""
    support = h.support()
    m0 = support[0]
    base = h.coefficient(m0) / h.coefficient(phi.apply(m0))
    return [h.coefficient(phi.apply(m)) / h.coefficient(m) * base for m in support[1:]]


def lift_certificate(h: LaurentPoly, phi: AffineLatticeMap) -> AutoCertificate:
    """Lift phi in GAff(M, h) to a certificate; explicit lambda only when M(h) == Z^r."""
    support = h.support()
    if phi.rank != h.rank:
        raise DimensionMismatchError(f"rank-{phi.rank} affine map for a rank-{h.rank} polynomial")
    if _induced_permutation(phi, support) is None:
        raise SupportNotPreservedError(f"affine map does not preserve the support of {h}")
    adapted = adapted_basis(lattice_mx([h], h.rank), h.rank)
    basis_f = adapted.sublattice_basis()
    differences = _differences_from_base(support)
    ratios = _coefficient_ratios(h, phi)
    values = []
    for f in basis_f:
        a = express_in_generators(differences, f)
        if a is None:
            raise InconsistencyError(f"basis vector {f} is not generated by the support differences")
        values.append(_relation_value(ratios, a))
    linear = phi.exponent_matrix()
    explicit_lambda = proportionality = None
    if adapted.index == 1:
        explicit_lambda = torus_point_with_characters(IntMatrix.from_rows(basis_f), values)
        moved = monomial_substitute(h, linear, explicit_lambda)
        witness = proportional_monomial_factor(moved, h)
        if witness is None:
            raise InconsistencyError(f"lifted automorphism does not preserve ({h}); the map is not in GAff")
        proportionality = (witness[0], vneg(witness[1]))
    cert = AutoCertificate(
        linear=linear,
        basis_f=tuple(basis_f),
        constraint_values=tuple(values),
        translation_v=phi.translation,
        explicit_lambda=explicit_lambda,
        proportionality=proportionality,
    )
    if not verify_certificate(h, cert):
        raise InconsistencyError(f"certificate for {cert.affine_map().linear} fails verification; the map is not in GAff")
    logger.debug("lifted %s with constraint values %s", linear, [str(c) for c in values])
    return cert


def _check_structure(h: LaurentPoly, cert: AutoCertificate) -> None:
    r = h.rank
    if not cert.linear.is_square or cert.linear.nrows != r or len(cert.translation_v) != r:
        raise CertificateError(f"certificate of rank {cert.linear.nrows} for a rank-{r} polynomial")
    if not cert.linear.is_unimodular():
        raise CertificateError(f"certificate matrix {cert.linear.tolist()} is not unimodular")
    if len(cert.basis_f) != len(cert.constraint_values):
        raise CertificateError("certificate has a different number of basis vectors and constraint values")
    if any(len(f) != r for f in cert.basis_f):
        raise CertificateError("certificate basis vectors have the wrong length")
    if any(c.is_zero() for c in cert.constraint_values):
        raise CertificateError("certificate constraint values must be nonzero")
    if (cert.explicit_lambda is None) != (cert.proportionality is None):
        raise CertificateError("explicit lambda and proportionality witness must be given together")


def verify_certificate(h: LaurentPoly, cert: AutoCertificate) -> bool:
    """Exact check that the certificate describes an automorphism preserving (h)."""
    if h.is_zero():
        raise ZeroPolynomialError("cannot verify a certificate against the zero polynomial")
    _check_structure(h, cert)
    support = h.support()
    phi = cert.affine_map()
    if _induced_permutation(phi, support) is None:
        logger.info("certificate does not preserve the support")
        return False
    differences = _differences_from_base(support)
    for f in cert.basis_f:
        if express_in_generators(differences, f) is None:
            raise CertificateError(f"basis vector {f} is not in M(h)")
    basis = list(cert.basis_f)
    for b, c in itertools.permutations(support, 2):
        try:
            g = solve_in_sublattice(basis, vsub(b, c))
        except DependentBasisError as e:
            raise CertificateError(str(e)) from e
        if g is None:
            raise CertificateError(f"difference {vsub(b, c)} is not in the span of the certificate basis")
        lhs = h.coefficient(phi.apply(b)) / h.coefficient(phi.apply(c))
        rhs = h.coefficient(b) / h.coefficient(c) * _relation_value(cert.constraint_values, g)
        if lhs != rhs:
            logger.info("coefficient ratio check fails for %s, %s", b, c)
            return False
    if cert.explicit_lambda is None:
        return True
    lam = scalar_tuple(cert.explicit_lambda)
    if any(character(f, lam) != c for f, c in zip(cert.basis_f, cert.constraint_values)):
        logger.info("explicit lambda does not match the constraint values")
        return False
    alpha, v = cert.proportionality
    if as_vector(v) != cert.translation_v:
        logger.info("proportionality shift %s differs from the translation %s", v, cert.translation_v)
        return False
    return monomial_substitute(h, cert.linear, lam) == h.shift(vneg(v)).scale(alpha)


def certificate_from_monomial_map(h: LaurentPoly, a: IntMatrix, lam: Sequence) -> AutoCertificate:
    """Certificate of an explicit ambient automorphism psi*(t_i) = lam_i * chi^{row i of A}."""
    lam = scalar_tuple(lam)
    moved = monomial_substitute(h, a, lam)
    witness = proportional_monomial_factor(moved, h)
    if witness is None:
        raise CertificateError(f"monomial map {a.tolist()} does not preserve ({h})")
    alpha, shift = witness
    basis_f = adapted_basis(lattice_mx([h], h.rank), h.rank).sublattice_basis()
    cert = AutoCertificate(
        linear=a,
        basis_f=tuple(basis_f),
        constraint_values=tuple(character(f, lam) for f in basis_f),
        translation_v=vneg(shift),
        explicit_lambda=lam,
        proportionality=(alpha, vneg(shift)),
    )
    logger.debug("certificate from monomial map %s, alpha %s", a, alpha)
    return cert

