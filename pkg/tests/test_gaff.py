# tests/test_gaff.py

import itertools
from fractions import Fraction

import pytest

from conftest import random_coefficient
from toralaut.core.errors import (
    CertificateError,
    InconsistencyError,
    RootsOutsideFieldError,
    SupportBoundError,
    SupportNotPreservedError,
    TorusFactorNotSplitError,
)
from toralaut.core.gaff import (
    AffineLatticeMap,
    AutoCertificate,
    affine_extension,
    certificate_from_monomial_map,
    cycle_notation,
    enumerate_gaff,
    eq2_holds,
    lift_certificate,
    relation_lattice_basis,
    verify_certificate,
)
from toralaut.core.laurent import ONE, GaussianRational, LaurentPoly, MonomialMap, character, parse_laurent
from toralaut.core.zlattice import IntMatrix, lattice_hnf_basis, lattice_rank

CUBIC_REJECT = parse_laurent("4 + 2*t + 2*t^2 + t^3", ["t"])
CUBIC_FLAT = parse_laurent("1 + t + t^2 + t^3", ["t"])
REFLECTION = AffineLatticeMap(IntMatrix.from_rows([[-1]]), (3,))


def corrupt(cert: AutoCertificate, index: int = 0) -> AutoCertificate:
    values = list(cert.constraint_values)
    values[index] = values[index] * 2
    return AutoCertificate(
        linear=cert.linear,
        basis_f=cert.basis_f,
        constraint_values=tuple(values),
        translation_v=cert.translation_v,
        explicit_lambda=cert.explicit_lambda,
        proportionality=cert.proportionality,
    )


def relation_value(coefficients, relation):
    value = ONE
    for c, a in zip(coefficients, relation):
        value = value * c ** a
    return value


# --- Affine maps ---

def test_affine_map_group_operations():
    phi = AffineLatticeMap(IntMatrix.from_rows([[1, 1], [0, -1]]), (2, -1))
    psi = AffineLatticeMap(IntMatrix.from_rows([[0, 1], [1, 0]]), (1, 0))
    m = (3, -5)
    assert phi.compose(psi).apply(m) == phi.apply(psi.apply(m))
    assert phi.compose(phi.inverse()).is_identity()
    assert phi.inverse().apply(phi.apply(m)) == m


def test_cycle_notation():
    assert cycle_notation((0, 1, 2)) == "()"
    assert cycle_notation((0, 2, 1)) == "(1 2)"
    assert cycle_notation((1, 2, 0, 3)) == "(0 1 2)"


# --- Relations and the coefficient condition ---

def test_relations_example_one(h1):
    assert relation_lattice_basis(h1.support()) == []


def test_relations_example_two(h2):
    assert relation_lattice_basis(h2.support()) == []


def test_relations_four_points_on_a_line():
    basis = relation_lattice_basis([(0,), (1,), (2,), (3,)])
    assert basis == lattice_hnf_basis([(1, -2, 1, 0), (0, 1, -2, 1)], 4)


def test_relations_match_brute_force():
    support = [(0, 0), (1, 0), (2, 0), (0, 1), (1, 1)]
    basis = relation_lattice_basis(support)
    found = [
        a
        for a in itertools.product(range(-2, 3), repeat=5)
        if sum(a) == 0 and all(sum(x * m[k] for x, m in zip(a, support)) == 0 for k in range(2))
    ]
    assert lattice_hnf_basis(found, 5) == basis


def test_eq2_vacuous(h1):
    swap = affine_extension(h1.support(), (0, 2, 1))
    assert eq2_holds(h1, swap, [])


def test_eq2_rejects_reflection():
    relations = relation_lattice_basis(CUBIC_REJECT.support())
    assert not eq2_holds(CUBIC_REJECT, REFLECTION, relations)
    # 4 * 2^-2 * 2 != 1 * 2^-2 * 2 on the relation (1, -2, 1, 0)
    assert not eq2_holds(CUBIC_REJECT, REFLECTION, [(1, -2, 1, 0)])


def test_eq2_accepts_reflection_with_equal_coefficients():
    assert eq2_holds(CUBIC_FLAT, REFLECTION, relation_lattice_basis(CUBIC_FLAT.support()))


def test_eq2_requires_support_preservation():
    shift = AffineLatticeMap(IntMatrix.identity(1), (1,))
    with pytest.raises(SupportNotPreservedError):
        eq2_holds(CUBIC_FLAT, shift, [])


def test_eq2_multiplicativity(rng):
    pool = [GaussianRational(1), GaussianRational(2), GaussianRational(-1), GaussianRational(0, 1)]
    support = [(0,), (1,), (2,), (3,), (4,)]
    basis = relation_lattice_basis(support)
    for _ in range(20):
        h = LaurentPoly(1, [(m, rng.choice(pool)) for m in support])
        alpha = [h.coefficient(m) for m in support]
        for sigma in itertools.permutations(range(5)):
            phi = affine_extension(support, sigma)
            if phi is None:
                continue
            moved = [alpha[k] for k in sigma]
            decision = eq2_holds(h, phi, basis)
            for _ in range(5):
                weights = [rng.randint(-3, 3) for _ in basis]
                a = [sum(w * b[k] for w, b in zip(weights, basis)) for k in range(5)]
                if decision:
                    assert relation_value(alpha, a) == relation_value(moved, a)
            if not decision:
                assert any(relation_value(alpha, b) != relation_value(moved, b) for b in basis)


# --- Affine extension ---

def test_extension_of_identity(h1):
    assert affine_extension(h1.support(), (0, 1, 2)).is_identity()


def test_extension_example_one_swap(h1):
    # support sorted: (0,0), (1,0), (1,1); swap the last two
    phi = affine_extension(h1.support(), (0, 2, 1))
    assert phi.linear.tolist() == [[1, 0], [1, -1]]
    assert phi.translation == (0, 0)
    assert phi.linear.determinant() == -1


def test_extension_rejects_non_affine_permutation():
    assert affine_extension([(0,), (1,), (2,), (3,)], (0, 2, 1, 3)) is None


def test_extension_needs_full_rank(h1):
    support = [m + (0,) for m in h1.support()]
    with pytest.raises(TorusFactorNotSplitError):
        affine_extension(support, (0, 1, 2))


# --- Enumeration ---

def assert_group_axioms(group):
    rank = len(group.support[0])
    assert group.index_of(AffineLatticeMap.identity(rank)) is not None
    for phi in group.elements:
        assert group.index_of(phi.inverse()) is not None
        support = set(group.support)
        assert {phi.apply(m) for m in group.support} == support
    for phi, psi in itertools.product(group.elements, repeat=2):
        assert group.index_of(phi.compose(psi)) is not None
    assert len(set(group.permutations)) == group.order


def test_gaff_example_one(h1):
    group = enumerate_gaff(h1)
    assert group.order == 6
    assert not group.is_abelian()
    assert group.element_orders() == [1, 2, 2, 2, 3, 3]
    assert group.structure_hint() == "S3"
    assert_group_axioms(group)


def test_gaff_example_two(h2):
    group = enumerate_gaff(h2)
    assert group.order == 6
    assert group.structure_hint() == "S3"
    # every element fixes m0 = (0, 0, 0)
    assert all(sigma[0] == 0 for sigma in group.permutations)
    assert_group_axioms(group)


def test_gaff_coefficient_condition_discriminates():
    assert enumerate_gaff(CUBIC_REJECT).order == 1
    assert enumerate_gaff(CUBIC_REJECT).structure_hint() == "trivial"
    flat = enumerate_gaff(CUBIC_FLAT)
    assert flat.order == 2
    assert flat.structure_hint() == "Z/2"


def test_gaff_is_deterministic_across_workers(h1):
    sequential = enumerate_gaff(h1, threads=1)
    parallel = enumerate_gaff(h1, threads=2)
    assert parallel == sequential


def test_gaff_support_bound():
    h = LaurentPoly(1, [((k,), 1) for k in range(10)])
    with pytest.raises(SupportBoundError) as info:
        enumerate_gaff(h, max_support=9)
    assert info.value.bound == 9 and info.value.size == 10
    assert enumerate_gaff(h, max_support=10).order == 2


def test_gaff_explicit_zero_is_not_the_default(h1):
    with pytest.raises(SupportBoundError) as info:
        enumerate_gaff(h1, max_support=0)
    assert info.value.bound == 0 and info.value.size == 3
    with pytest.raises(ValueError):
        enumerate_gaff(h1, threads=0)


def test_gaff_needs_split_torus(h1):
    with pytest.raises(TorusFactorNotSplitError):
        enumerate_gaff(LaurentPoly(3, {m + (0,): c for m, c in h1.items()}))


def test_gaff_square_support():
    h = parse_laurent("1 + x + y + x*y", ["x", "y"])
    group = enumerate_gaff(h)
    assert group.order == 8
    assert group.structure_hint() == "D4"
    assert_group_axioms(group)


# --- Brute-force oracle ---

def random_instance(rng):
    while True:
        rank = rng.choice([1, 2])
        grid = [(x,) for x in range(5)] if rank == 1 else list(itertools.product(range(3), repeat=2))
        size = rng.randint(rank + 1, 5)
        support = sorted(rng.sample(grid, size))
        diffs = [tuple(a - b for a, b in zip(m, support[0])) for m in support[1:]]
        if lattice_rank(diffs, rank) < rank:
            continue
        if rng.random() < 0.5:
            pool = [GaussianRational(1), GaussianRational(-1), GaussianRational(2), GaussianRational(0, 1)]
            coefficients = [rng.choice(pool) for _ in support]
        else:
            coefficients = [random_coefficient(rng) for _ in support]
        return LaurentPoly(rank, list(zip(support, coefficients)))


def brute_force_relations(support):
    n, rank = len(support), len(support[0])
    found = []
    for tail in itertools.product(range(-4, 5), repeat=n - 1):
        head = -sum(tail)
        if abs(head) > 4:
            continue
        a = (head,) + tail
        if all(sum(x * m[k] for x, m in zip(a, support)) == 0 for k in range(rank)):
            found.append(a)
    return found


def solve_affine(points, images):
    """Exact solve of L p + t = q over Q for all pairs; None if inconsistent."""
    rank = len(points[0])
    width = rank + 1
    rows = [[Fraction(x) for x in p] + [Fraction(1)] + [Fraction(x) for x in q] for p, q in zip(points, images)]
    for col in range(width):
        pivot = next((i for i in range(col, len(rows)) if rows[i][col] != 0), None)
        if pivot is None:
            return None
        rows[col], rows[pivot] = rows[pivot], rows[col]
        lead = rows[col][col]
        rows[col] = [x / lead for x in rows[col]]
        for i, row in enumerate(rows):
            if i != col and row[col] != 0:
                factor = row[col]
                rows[i] = [x - factor * y for x, y in zip(row, rows[col])]
    if any(x != 0 for row in rows[width:] for x in row[width:]):
        return None
    linear = [[rows[j][width + k] for j in range(rank)] for k in range(rank)]
    translation = [rows[rank][width + k] for k in range(rank)]
    return linear, translation


def leibniz_determinant(matrix):
    total = Fraction(0)
    for perm in itertools.permutations(range(len(matrix))):
        inversions = sum(1 for i, j in itertools.combinations(range(len(perm)), 2) if perm[i] > perm[j])
        term = Fraction(-1) ** inversions
        for row, col in enumerate(perm):
            term *= matrix[row][col]
        total += term
    return total


def oracle_order(h, relations):
    support = h.support()
    alpha = [h.coefficient(m) for m in support]
    order = 0
    for sigma in itertools.permutations(range(len(support))):
        solved = solve_affine(support, [support[k] for k in sigma])
        if solved is None:
            continue
        linear, translation = solved
        if any(x.denominator != 1 for x in itertools.chain(translation, *linear)):
            continue
        if abs(leibniz_determinant(linear)) != 1:
            continue
        moved = [alpha[k] for k in sigma]
        if all(relation_value(alpha, a) == relation_value(moved, a) for a in relations):
            order += 1
    return order


def oracle_instances(rng, count):
    instances = []
    for _ in range(count):
        h = random_instance(rng)
        relations = brute_force_relations(h.support())
        assert lattice_hnf_basis(relations, len(h)) == relation_lattice_basis(h.support()), str(h)
        instances.append((h, relations))
    return instances


def test_solve_affine_recovers_known_map():
    support = [(0, 0), (1, 0), (1, 1)]
    linear, translation = solve_affine(support, [(0, 0), (1, 1), (1, 0)])
    assert linear == [[1, 0], [1, -1]]
    assert translation == [0, 0]
    assert solve_affine([(0,), (1,), (2,), (3,)], [(0,), (2,), (1,), (3,)]) is None


def test_oracle_order_small_cases(h1):
    assert oracle_order(h1, []) == 6
    assert oracle_order(CUBIC_REJECT, brute_force_relations(CUBIC_REJECT.support())) == 1
    assert oracle_order(CUBIC_FLAT, brute_force_relations(CUBIC_FLAT.support())) == 2


def test_gaff_matches_brute_force_oracle(rng):
    for h, relations in oracle_instances(rng, 50):
        assert enumerate_gaff(h).order == oracle_order(h, relations), str(h)


# --- Certificates ---

def test_identity_certificate(h1):
    cert = lift_certificate(h1, AffineLatticeMap.identity(2))
    assert cert.constraint_values == (ONE, ONE)
    assert cert.explicit_lambda == (ONE, ONE)
    assert cert.proportionality == (ONE, (0, 0))
    assert verify_certificate(h1, cert)


def test_lift_example_one_swap(h1):
    phi = affine_extension(h1.support(), (0, 2, 1))
    cert = lift_certificate(h1, phi)
    assert cert.linear.tolist() == [[1, 1], [0, -1]]
    assert cert.explicit_lambda == (-1, 1)
    assert cert.proportionality == (ONE, (0, 0))
    assert verify_certificate(h1, cert)


def test_example_one_known_maps_verify(h1):
    psi1 = certificate_from_monomial_map(h1, IntMatrix.from_rows([[1, 1], [0, -1]]), (-1, 1))
    psi2 = certificate_from_monomial_map(h1, IntMatrix.from_rows([[0, 1], [-1, -1]]), (-1, 1))
    assert verify_certificate(h1, psi1)
    assert verify_certificate(h1, psi2)
    # psi2*(h) = t1^-1 * h
    assert psi2.translation_v == (1, 0)
    group = enumerate_gaff(h1)
    assert group.index_of(psi1.affine_map()) is not None
    assert group.element_order(group.index_of(psi2.affine_map())) == 3


def test_example_two_psi2_certificate(h2, psi2_ex2):
    a, lam = psi2_ex2
    cert = certificate_from_monomial_map(h2, a, lam)
    assert cert.proportionality == (ONE, (0, 0, 0))
    assert verify_certificate(h2, cert)
    assert not verify_certificate(h2, corrupt(cert))


def test_example_two_lift_has_no_explicit_lambda(h2, psi2_ex2):
    a, lam = psi2_ex2
    group = enumerate_gaff(h2)
    phi = group.elements[group.index_of(AffineLatticeMap(a.transpose(), (0, 0, 0)))]
    assert group.element_order(group.index_of(phi)) == 3
    cert = lift_certificate(h2, phi)
    assert cert.explicit_lambda is None
    assert cert.proportionality is None
    assert verify_certificate(h2, cert)
    # chi^f(lambda) does not depend on the lift chosen modulo H(Y)
    assert cert.constraint_values == tuple(character(f, lam) for f in cert.basis_f)
    with pytest.raises(RootsOutsideFieldError):
        cert.monomial_map()
    for k in range(len(cert.basis_f)):
        assert not verify_certificate(h2, corrupt(cert, k))


def test_example_two_psi2_does_not_commute_with_hy(psi2_ex2):
    a, lam = psi2_ex2
    psi2 = MonomialMap(a, lam)
    g = MonomialMap.torus_element((1, -1, 1))
    assert psi2.compose(g) != g.compose(psi2)


def test_certificate_from_non_automorphism(h1):
    with pytest.raises(CertificateError):
        certificate_from_monomial_map(h1, IntMatrix.from_rows([[1, 1], [0, -1]]), (1, 1))


def test_lift_rejects_map_outside_gaff():
    with pytest.raises(InconsistencyError):
        lift_certificate(CUBIC_REJECT, REFLECTION)


def test_verify_rejects_foreign_basis(h2, psi2_ex2):
    a, lam = psi2_ex2
    cert = certificate_from_monomial_map(h2, a, lam)
    broken = AutoCertificate(
        linear=cert.linear,
        basis_f=((1, 0, 0), (0, 1, 0), (0, 0, 1)),
        constraint_values=cert.constraint_values,
        translation_v=cert.translation_v,
    )
    with pytest.raises(CertificateError):
        verify_certificate(h2, broken)


def test_lift_soundness_on_examples(h1, h2):
    for h in (h1, h2):
        for phi in enumerate_gaff(h).elements:
            cert = lift_certificate(h, phi)
            assert verify_certificate(h, cert)
            assert not verify_certificate(h, corrupt(cert))


def test_lift_soundness_on_random_instances(rng):
    for h, relations in oracle_instances(rng, 20):
        group = enumerate_gaff(h)
        assert group.order == oracle_order(h, relations)
        for phi in group.elements:
            cert = lift_certificate(h, phi)
            assert verify_certificate(h, cert)
            assert not verify_certificate(h, corrupt(cert))
            if cert.explicit_lambda is not None:
                alpha, v = cert.proportionality
                assert cert.monomial_map().pullback(h) == h.shift(tuple(-x for x in v)).scale(alpha)


def test_certificate_scalars_are_exact():
    h = parse_laurent("1/2 + 3*x - (2+i)*y", ["x", "y"])
    for phi in enumerate_gaff(h).elements:
        cert = lift_certificate(h, phi)
        assert all(isinstance(c.re, Fraction) for c in cert.constraint_values)
