# tests/test_laurent.py

from fractions import Fraction

import pytest

from conftest import random_point, random_poly, random_unimodular
from toralaut.core.errors import (
    DimensionMismatchError,
    InputError,
    LaurentSyntaxError,
    NotUnimodularError,
    UnknownVariableError,
    ZeroPolynomialError,
)
from toralaut.core.laurent import (
    I,
    ONE,
    GaussianRational,
    LaurentPoly,
    MonomialMap,
    character,
    format_coefficient,
    format_laurent,
    monomial_substitute,
    ones,
    parse_coefficient,
    parse_laurent,
    proportional_monomial_factor,
    support_differences,
    torus_point_with_characters,
)
from toralaut.core.zlattice import IntMatrix, lattice_hnf_basis

T12 = ["t1", "t2"]


# --- Gaussian rationals ---

def test_gaussian_rational_field_operations():
    a = GaussianRational(Fraction(1, 2), 3)
    b = GaussianRational(-2, Fraction(1, 3))
    assert a + b - b == a
    assert (a * b) / b == a
    assert a * a.inverse() == ONE
    assert I * I == -ONE
    assert GaussianRational(Fraction(4, 8)).re == Fraction(1, 2)
    assert GaussianRational(2) == 2


def test_gaussian_rational_negative_power():
    assert (2 * I) ** -2 == GaussianRational(Fraction(-1, 4))
    with pytest.raises(ZeroDivisionError):
        GaussianRational(0).inverse()


def test_gaussian_rational_equality_with_other_types():
    assert GaussianRational(1) == 1
    assert GaussianRational(Fraction(1, 2)) == Fraction(1, 2)
    assert GaussianRational(1) != "abc"
    assert not (GaussianRational(1) == "t1")
    assert GaussianRational(1) != None  # noqa: E711


@pytest.mark.parametrize(
    "text, expected",
    [
        ("3/4", GaussianRational(Fraction(3, 4))),
        ("-3/2", GaussianRational(Fraction(-3, 2))),
        ("i", I),
        ("-i", -I),
        ("2i", GaussianRational(0, 2)),
        ("(1-1/2i)", GaussianRational(1, Fraction(-1, 2))),
        ("(-2+i)", GaussianRational(-2, 1)),
    ],
)
def test_parse_coefficient(text, expected):
    assert parse_coefficient(text) == expected


@pytest.mark.parametrize("c", ["3/4", "-7", "i", "-i", "-2i", "(1-1/2i)", "(-3/5+2i)"])
def test_format_coefficient_is_parseable(c):
    assert format_coefficient(parse_coefficient(c)) == c


# --- Parsing ---

def test_parse_example_one():
    p = parse_laurent("t1*t2 - t1 - 1", T12)
    assert p.terms == {(1, 1): ONE, (1, 0): -ONE, (0, 0): -ONE}


def test_parse_constant():
    assert parse_laurent("1", T12).terms == {(0, 0): ONE}


def test_parse_imaginary_monomial():
    assert parse_laurent("i*t1*t2^-1", T12).terms == {(1, -1): I}


def test_parse_combines_and_drops_terms():
    p = parse_laurent("t1 + 2*t1 - 3*t1 + t2^2*t2^-2", T12)
    assert p.terms == {(0, 0): ONE}


def test_parse_leading_sign_and_complex_coefficient():
    p = parse_laurent("-t1 + (1+2i)*t2^3 - 1/2", T12)
    assert p.terms == {
        (1, 0): -ONE,
        (0, 3): GaussianRational(1, 2),
        (0, 0): GaussianRational(Fraction(-1, 2)),
    }


def test_syntax_error_reports_position():
    with pytest.raises(LaurentSyntaxError) as info:
        parse_laurent("t1 + * t2", T12)
    assert info.value.position == 5
    assert "position 5" in str(info.value)


def test_unknown_variable():
    with pytest.raises(UnknownVariableError) as info:
        parse_laurent("t1 + t3", T12)
    assert info.value.position == 5


def test_division_by_variable_is_rejected():
    with pytest.raises(LaurentSyntaxError) as info:
        parse_laurent("1/t1", T12)
    assert info.value.position == 1
    assert "t1^-2" in str(info.value)


@pytest.mark.parametrize("text", ["", "t1 +", "(t1 + 1)", "t1^", "1/0", "t1 t2", "t1 & t2"])
def test_malformed_expressions(text):
    with pytest.raises(LaurentSyntaxError):
        parse_laurent(text, T12)


def test_imaginary_unit_cannot_be_a_variable():
    with pytest.raises(InputError):
        parse_laurent("i + 1", ["i"])


def test_print_parse_roundtrip(rng):
    names = ["x", "y", "z"]
    for _ in range(40):
        p = random_poly(rng, 3, terms=rng.randint(1, 6))
        assert parse_laurent(format_laurent(p, names), names) == p


def test_format_laurent_canonical_order(h1):
    assert format_laurent(h1, T12) == "-1 - t1 + t1*t2"
    assert format_laurent(LaurentPoly(2), T12) == "0"


# --- Arithmetic ---

def test_evaluation_is_a_homomorphism(rng):
    for _ in range(25):
        p, q = random_poly(rng, 2), random_poly(rng, 2)
        x = random_point(rng, 2)
        assert (p * q).evaluate(x) == p.evaluate(x) * q.evaluate(x)
        assert (p + q).evaluate(x) == p.evaluate(x) + q.evaluate(x)


def test_rank_mismatch():
    with pytest.raises(DimensionMismatchError):
        LaurentPoly.variable(2, 0) + LaurentPoly.variable(3, 0)


# --- Monomial substitution ---

def test_identity_substitution(h1):
    assert monomial_substitute(h1, IntMatrix.identity(2), ones(2)) == h1


def test_psi1_preserves_example_one(h1):
    a = IntMatrix.from_rows([[1, 1], [0, -1]])
    assert monomial_substitute(h1, a, (-1, 1)) == h1


def test_psi2_preserves_example_two(h2, psi2_ex2):
    a, lam = psi2_ex2
    assert monomial_substitute(h2, a, lam) == h2


def test_substitution_matches_dense_evaluation(rng, h2, psi2_ex2):
    # psi*(h)(t) == h(psi(t)) at random torus points
    a, lam = psi2_ex2
    psi = MonomialMap(a, lam)
    moved = psi.pullback(h2)
    for _ in range(5):
        t = random_point(rng, 3)
        assert moved.evaluate(t) == h2.evaluate(psi.apply(t))


def test_substitution_functoriality(rng):
    for _ in range(15):
        p = random_poly(rng, 3)
        a = MonomialMap(random_unimodular(rng, 3), random_point(rng, 3))
        b = MonomialMap(random_unimodular(rng, 3), random_point(rng, 3))
        # (a o b)* == b* o a*
        assert a.compose(b).pullback(p) == b.pullback(a.pullback(p))
        x = random_point(rng, 3)
        assert a.compose(b).apply(x) == a.apply(b.apply(x))


def test_monomial_map_inverse(rng):
    for _ in range(10):
        psi = MonomialMap(random_unimodular(rng, 3), random_point(rng, 3))
        assert psi.compose(psi.inverse()) == MonomialMap.identity(3)


def test_substitution_errors(h1):
    with pytest.raises(NotUnimodularError):
        monomial_substitute(h1, IntMatrix.from_rows([[2, 0], [0, 1]]), ones(2))
    with pytest.raises(DimensionMismatchError):
        monomial_substitute(h1, IntMatrix.identity(3), ones(3))
    with pytest.raises(InputError):
        monomial_substitute(h1, IntMatrix.identity(2), (1, 0))


def test_torus_point_with_characters(rng):
    for _ in range(10):
        f = random_unimodular(rng, 3)
        values = random_point(rng, 3)
        lam = torus_point_with_characters(f, values)
        assert tuple(character(f.row(j), lam) for j in range(3)) == values


# --- Proportionality ---

def test_self_proportional(h1):
    assert proportional_monomial_factor(h1, h1) == (ONE, (0, 0))


def test_monomial_multiple(h1):
    assert proportional_monomial_factor(h1.shift((1, 0)).scale(3), h1) == (3, (1, 0))


def test_not_proportional(h1):
    assert proportional_monomial_factor(h1 + LaurentPoly.monomial(2, (5, 5)), h1) is None
    assert proportional_monomial_factor(h1, h1.scale(2) + LaurentPoly.constant(2, 1)) is None


def test_proportional_rejects_zero(h1):
    with pytest.raises(ZeroPolynomialError):
        proportional_monomial_factor(LaurentPoly(2), h1)


# --- Support differences ---

def test_support_differences_example_one(h1):
    diffs = support_differences([h1])
    assert sorted(diffs) == [(1, 0), (1, 1)]
    assert lattice_hnf_basis(diffs, 2) == [(1, 0), (0, 1)]


def test_support_differences_single_monomial():
    assert support_differences([LaurentPoly.monomial(2, (2, 3), 5)]) == []


def test_support_differences_example_two(h2):
    diffs = support_differences([h2])
    assert sorted(diffs) == [(0, 0, 1), (0, 2, 1), (2, 0, 1)]
    assert lattice_hnf_basis(diffs, 3) == [(2, 0, 0), (0, 2, 0), (0, 0, 1)]


def test_support_differences_match_all_pairs(rng):
    for _ in range(20):
        polys = [random_poly(rng, 3, terms=rng.randint(1, 5)) for _ in range(2)]
        polys = [p for p in polys if not p.is_zero()]
        if not polys:
            continue
        pairs = [
            tuple(a - b for a, b in zip(m, n))
            for p in polys
            for m in p.support()
            for n in p.support()
        ]
        assert lattice_hnf_basis(support_differences(polys), 3) == lattice_hnf_basis(pairs, 3)


def test_support_differences_errors():
    with pytest.raises(InputError):
        support_differences([])
    with pytest.raises(ZeroPolynomialError):
        support_differences([LaurentPoly(2)])
