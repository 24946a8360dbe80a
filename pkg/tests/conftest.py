# tests/conftest.py

import random
from fractions import Fraction
from pathlib import Path

import pytest

from toralaut.core.laurent import GaussianRational, LaurentPoly, parse_laurent
from toralaut.core.zlattice import IntMatrix

SAMPLES = Path(__file__).resolve().parent.parent / "samples"


def random_unimodular(rng: random.Random, n: int, steps: int = 6) -> IntMatrix:
    """Identity scrambled by random elementary row operations."""
    rows = [[int(i == j) for j in range(n)] for i in range(n)]
    for _ in range(steps):
        if n == 1:
            break
        i, j = rng.sample(range(n), 2)
        k = rng.choice([-2, -1, 1, 2])
        rows[i] = [a + k * b for a, b in zip(rows[i], rows[j])]
    if rng.random() < 0.5:
        rows[0] = [-x for x in rows[0]]
    rng.shuffle(rows)
    return IntMatrix.from_rows(rows, ncols=n)


def random_coefficient(rng: random.Random, bound: int = 5) -> GaussianRational:
    while True:
        c = GaussianRational(
            Fraction(rng.randint(-bound, bound), rng.randint(1, bound)),
            Fraction(rng.randint(-bound, bound), rng.randint(1, bound)) if rng.random() < 0.4 else 0,
        )
        if not c.is_zero():
            return c


def random_point(rng: random.Random, rank: int) -> tuple[GaussianRational, ...]:
    return tuple(random_coefficient(rng) for _ in range(rank))


def random_poly(rng: random.Random, rank: int, terms: int = 4, spread: int = 3) -> LaurentPoly:
    return LaurentPoly(
        rank,
        [(tuple(rng.randint(-spread, spread) for _ in range(rank)), random_coefficient(rng)) for _ in range(terms)],
    )


@pytest.fixture
def rng():
    return random.Random(20240611)


@pytest.fixture
def h1():
    """t1*t2 - t1 - 1: GAff is S3, H(Y) trivial."""
    return parse_laurent("t1*t2 - t1 - 1", ["t1", "t2"])


@pytest.fixture
def h2():
    """t3*(t1^2 + t2^2 - 1) - 1: H(Y) = Z/2 x Z/2, GAff is S3."""
    return parse_laurent("t1^2*t3 + t2^2*t3 - t3 - 1", ["t1", "t2", "t3"])


@pytest.fixture
def psi2_ex2():
    """Exponent rows and scalars of (t1, t2, t3) -> (-1/t2, i*t1/t2, -t2^2*t3)."""
    a = IntMatrix.from_rows([[0, -1, 0], [1, -1, 0], [0, 2, 1]])
    lam = (GaussianRational(-1), GaussianRational(0, 1), GaussianRational(-1))
    return a, lam


@pytest.fixture
def samples():
    return SAMPLES
