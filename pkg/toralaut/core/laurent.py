# toralaut/core/laurent.py

"""Sparse Laurent polynomials over the Gaussian rationals Q(i).

A LaurentPoly of rank r is a finite map from exponent vectors in Z^r to
nonzero GaussianRational coefficients. The module also holds the text
front-end (recursive descent over the grammar documented in docs/schema.md)
and the monomial maps of the ambient torus, T_r x| GL_r(Z).
"""

from __future__ import annotations

import logging
import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping, NamedTuple, Sequence

from .errors import (
    DimensionMismatchError,
    InputError,
    LaurentSyntaxError,
    NotUnimodularError,
    UnknownVariableError,
    ZeroPolynomialError,
)
from .zlattice import IntMatrix, LatticeVector, as_vector, vadd, vsub

logger = logging.getLogger(__name__)


# --- Coefficients ---

@dataclass(frozen=True, eq=False)
class GaussianRational:
    """Exact element re + im*i of Q(i)."""

    re: Fraction
    im: Fraction = Fraction(0)

    def __post_init__(self):
        object.__setattr__(self, "re", Fraction(self.re))
        object.__setattr__(self, "im", Fraction(self.im))

    @classmethod
    def coerce(cls, value: "GaussianRational | int | Fraction | str") -> "GaussianRational":
        if isinstance(value, GaussianRational):
            return value
        if isinstance(value, str):
            return parse_coefficient(value)
        if isinstance(value, (int, Fraction)):
            return cls(Fraction(value))
        raise TypeError(f"cannot interpret {value!r} as a Gaussian rational")

    def is_zero(self) -> bool:
        return self.re == 0 and self.im == 0

    def __bool__(self) -> bool:
        return not self.is_zero()

    def conjugate(self) -> "GaussianRational":
        return GaussianRational(self.re, -self.im)

    def norm(self) -> Fraction:
        return self.re * self.re + self.im * self.im

    def __eq__(self, other):
        if not isinstance(other, (GaussianRational, int, Fraction)):
            return NotImplemented
        other = GaussianRational.coerce(other)
        return self.re == other.re and self.im == other.im

    def __hash__(self):
        return hash(self.re) if self.im == 0 else hash((self.re, self.im))

    def __neg__(self) -> "GaussianRational":
        return GaussianRational(-self.re, -self.im)

    def __add__(self, other):
        other = GaussianRational.coerce(other)
        return GaussianRational(self.re + other.re, self.im + other.im)

    __radd__ = __add__

    def __sub__(self, other):
        other = GaussianRational.coerce(other)
        return GaussianRational(self.re - other.re, self.im - other.im)

    def __rsub__(self, other):
        return GaussianRational.coerce(other) - self

    def __mul__(self, other):
        other = GaussianRational.coerce(other)
        return GaussianRational(
            self.re * other.re - self.im * other.im,
            self.re * other.im + self.im * other.re,
        )

    __rmul__ = __mul__

    def inverse(self) -> "GaussianRational":
        n = self.norm()
        if n == 0:
            raise ZeroDivisionError("division by zero in Q(i)")
        return GaussianRational(self.re / n, -self.im / n)

    def __truediv__(self, other):
        return self * GaussianRational.coerce(other).inverse()

    def __rtruediv__(self, other):
        return GaussianRational.coerce(other) * self.inverse()

    def __pow__(self, exponent: int) -> "GaussianRational":
        if exponent < 0:
            return self.inverse() ** (-exponent)
        result, base = ONE, self
        while exponent:
            if exponent & 1:
                result = result * base
            base = base * base
            exponent >>= 1
        return result

    def __str__(self) -> str:
        return format_coefficient(self)


ZERO = GaussianRational(0)
ONE = GaussianRational(1)
I = GaussianRational(0, 1)

ScalarTuple = tuple[GaussianRational, ...]


def scalar_tuple(values: Iterable) -> ScalarTuple:
    """Validate a torus point: every coordinate must be a nonzero Gaussian rational."""
    point = tuple(GaussianRational.coerce(v) for v in values)
    if any(c.is_zero() for c in point):
        raise InputError("torus point coordinates must be nonzero")
    return point


def ones(rank: int) -> ScalarTuple:
    return (ONE,) * rank


def character(m: Sequence[int], point: Sequence[GaussianRational]) -> GaussianRational:
    """chi^m evaluated at a torus point."""
    if len(m) != len(point):
        raise DimensionMismatchError(f"character of rank {len(m)} at a point of rank {len(point)}")
    value = ONE
    for e, x in zip(m, point):
        if e:
            value = value * x ** e
    return value


def format_coefficient(c: GaussianRational) -> str:
    if c.im == 0:
        return str(c.re)
    if c.re == 0:
        if c.im in (1, -1):
            return "i" if c.im == 1 else "-i"
        return f"{c.im}i"
    sign = "+" if c.im > 0 else "-"
    return f"({c.re}{sign}{abs(c.im)}i)"


# --- Polynomials ---

class LaurentPoly:
    """Immutable sparse Laurent polynomial; zero coefficients are never stored."""

    __slots__ = ("rank", "_terms")

    def __init__(self, rank: int, terms: Mapping | Iterable[tuple] = ()):
        if rank < 0:
            raise DimensionMismatchError("rank must be nonnegative")
        items = terms.items() if isinstance(terms, Mapping) else terms
        combined: dict[LatticeVector, GaussianRational] = {}
        for exponent, coefficient in items:
            exponent = as_vector(exponent)
            if len(exponent) != rank:
                raise DimensionMismatchError(f"exponent {exponent} in a rank-{rank} polynomial")
            combined[exponent] = combined.get(exponent, ZERO) + GaussianRational.coerce(coefficient)
        self.rank = rank
        self._terms = {m: c for m, c in combined.items() if not c.is_zero()}

    @classmethod
    def monomial(cls, rank: int, exponent: Sequence[int], coefficient=ONE) -> "LaurentPoly":
        return cls(rank, [(exponent, coefficient)])

    @classmethod
    def constant(cls, rank: int, coefficient) -> "LaurentPoly":
        return cls(rank, [((0,) * rank, coefficient)])

    @classmethod
    def variable(cls, rank: int, index: int) -> "LaurentPoly":
        return cls.monomial(rank, tuple(int(k == index) for k in range(rank)))

    @property
    def terms(self) -> dict[LatticeVector, GaussianRational]:
        return dict(self._terms)

    def items(self) -> list[tuple[LatticeVector, GaussianRational]]:
        """Terms in canonical (lexicographic exponent) order."""
        return sorted(self._terms.items())

    def support(self) -> list[LatticeVector]:
        return sorted(self._terms)

    def coefficient(self, exponent: Sequence[int]) -> GaussianRational:
        return self._terms.get(as_vector(exponent), ZERO)

    def is_zero(self) -> bool:
        return not self._terms

    def __len__(self) -> int:
        return len(self._terms)

    def __eq__(self, other):
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        return self.rank == other.rank and self._terms == other._terms

    def __hash__(self):
        return hash((self.rank, frozenset(self._terms.items())))

    def _check_rank(self, other: "LaurentPoly") -> None:
        if self.rank != other.rank:
            raise DimensionMismatchError(f"rank {self.rank} and rank {other.rank} polynomials")

    def __add__(self, other: "LaurentPoly") -> "LaurentPoly":
        self._check_rank(other)
        return LaurentPoly(self.rank, list(self._terms.items()) + list(other._terms.items()))

    def __neg__(self) -> "LaurentPoly":
        return LaurentPoly(self.rank, {m: -c for m, c in self._terms.items()})

    def __sub__(self, other: "LaurentPoly") -> "LaurentPoly":
        return self + (-other)

    def scale(self, c) -> "LaurentPoly":
        c = GaussianRational.coerce(c)
        return LaurentPoly(self.rank, {m: c * a for m, a in self._terms.items()})

    def shift(self, v: Sequence[int]) -> "LaurentPoly":
        """Multiply by the monomial chi^v."""
        v = as_vector(v)
        return LaurentPoly(self.rank, {vadd(m, v): c for m, c in self._terms.items()})

    def __mul__(self, other):
        if not isinstance(other, LaurentPoly):
            return self.scale(other)
        self._check_rank(other)
        return LaurentPoly(
            self.rank,
            [(vadd(m, n), a * b) for m, a in self._terms.items() for n, b in other._terms.items()],
        )

    def __rmul__(self, other):
        return self.scale(other)

    def evaluate(self, point: Sequence[GaussianRational]) -> GaussianRational:
        point = scalar_tuple(point)
        total = ZERO
        for m, c in self._terms.items():
            total = total + c * character(m, point)
        return total

    def __str__(self) -> str:
        return format_laurent(self, default_variables(self.rank))

    def __repr__(self) -> str:
        return f"LaurentPoly({self.rank}, {str(self)!r})"


def default_variables(rank: int) -> list[str]:
    return [f"t{k + 1}" for k in range(rank)]


def format_laurent(p: LaurentPoly, variables: Sequence[str]) -> str:
    """Canonical text form; parse_laurent(format_laurent(p, v), v) == p."""
    if len(variables) != p.rank:
        raise DimensionMismatchError(f"{len(variables)} variable names for a rank-{p.rank} polynomial")
    if p.is_zero():
        return "0"
    pieces = []
    for exponent, c in p.items():
        monomial = "*".join(
            name if e == 1 else f"{name}^{e}"
            for name, e in zip(variables, exponent)
            if e != 0
        )
        if c.im == 0 or c.re == 0:
            negative = (c.re if c.im == 0 else c.im) < 0
            magnitude = -c if negative else c
            coef = format_coefficient(magnitude)
            if monomial and magnitude == 1:
                coef = ""
        else:
            negative = False
            coef = format_coefficient(c)
        text = f"{coef}*{monomial}" if coef and monomial else (coef or monomial)
        if not pieces:
            pieces.append(f"-{text}" if negative else text)
        else:
            pieces.append(f" - {text}" if negative else f" + {text}")
    return "".join(pieces)


# --- Parser ---

class _Token(NamedTuple):
    kind: str
    text: str
    pos: int


_TOKEN_RE = re.compile(
    r"(?P<ws>\s+)|(?P<int>\d+)|(?P<name>[A-Za-z_][A-Za-z0-9_]*)|(?P<op>[-+*^/()])"
)


def _tokenize(text: str) -> list[_Token]:
    tokens = []
    pos = 0
    while pos < len(text):
        match = _TOKEN_RE.match(text, pos)
        if match is None:
            raise LaurentSyntaxError(f"unexpected character {text[pos]!r}", pos, text)
        if match.lastgroup != "ws":
            tokens.append(_Token(match.lastgroup, match.group(), pos))
        pos = match.end()
    return tokens


class _Parser:
    """Recursive descent over expr / term / factor / coef."""

    def __init__(self, text: str, variables: Sequence[str]):
        self.text = text
        self.tokens = _tokenize(text)
        self.index = 0
        self.variables = {name: k for k, name in enumerate(variables)}
        self.rank = len(variables)

    def _peek(self) -> _Token | None:
        return self.tokens[self.index] if self.index < len(self.tokens) else None

    def _next(self) -> _Token:
        token = self._peek()
        if token is None:
            raise LaurentSyntaxError("unexpected end of input", len(self.text), self.text)
        self.index += 1
        return token

    def _error(self, message: str, token: _Token | None) -> LaurentSyntaxError:
        pos = token.pos if token is not None else len(self.text)
        return LaurentSyntaxError(message, pos, self.text)

    def _at_op(self, *ops: str) -> bool:
        token = self._peek()
        return token is not None and token.kind == "op" and token.text in ops

    def _at_imaginary(self) -> bool:
        token = self._peek()
        return token is not None and token.kind == "name" and token.text == "i"

    def parse(self) -> LaurentPoly:
        if not self.tokens:
            raise LaurentSyntaxError("empty expression", 0, self.text)
        terms = self._expr()
        token = self._peek()
        if token is not None:
            raise self._error(f"unexpected {token.text!r}", token)
        return LaurentPoly(self.rank, terms)

    def _expr(self) -> list[tuple[list[int], GaussianRational]]:
        sign = 1
        if self._at_op("+", "-"):
            sign = -1 if self._next().text == "-" else 1
        exponent, coef = self._term()
        terms = [(exponent, coef * sign)]
        while self._at_op("+", "-"):
            sign = -1 if self._next().text == "-" else 1
            exponent, coef = self._term()
            terms.append((exponent, coef * sign))
        return terms

    def _term(self) -> tuple[list[int], GaussianRational]:
        exponent, coef = [0] * self.rank, ONE
        while True:
            factor_exponent, factor_coef = self._factor()
            exponent = [a + b for a, b in zip(exponent, factor_exponent)]
            coef = coef * factor_coef
            if not self._at_op("*"):
                return exponent, coef
            self._next()

    def _factor(self) -> tuple[list[int], GaussianRational]:
        token = self._peek()
        if token is None:
            raise self._error("expected a coefficient or a variable", token)
        zero = [0] * self.rank
        if token.kind == "int" or (token.kind == "op" and token.text == "("):
            return zero, self._coef()
        if token.kind == "name":
            if token.text == "i":
                self._next()
                return zero, I
            if token.text not in self.variables:
                raise UnknownVariableError(f"unknown variable {token.text!r}", token.pos, self.text)
            self._next()
            power = 1
            if self._at_op("^"):
                self._next()
                power = self._signed_int()
            exponent = list(zero)
            exponent[self.variables[token.text]] = power
            return exponent, ONE
        raise self._error(f"expected a coefficient or a variable, got {token.text!r}", token)

    def _signed_int(self) -> int:
        sign = 1
        if self._at_op("+", "-"):
            sign = -1 if self._next().text == "-" else 1
        token = self._next()
        if token.kind != "int":
            raise self._error("expected an integer exponent", token)
        return sign * int(token.text)

    def _rational(self) -> Fraction:
        token = self._next()
        if token.kind != "int":
            raise self._error("expected a number", token)
        value = Fraction(int(token.text))
        if self._at_op("/"):
            slash = self._next()
            denominator = self._peek()
            if denominator is None or denominator.kind != "int":
                raise self._error(
                    "'/' is only allowed between integers; write negative exponents such as t1^-2",
                    slash,
                )
            self._next()
            if int(denominator.text) == 0:
                raise self._error("zero denominator", denominator)
            value /= int(denominator.text)
        return value

    def _coef(self) -> GaussianRational:
        token = self._peek()
        if token.kind == "op" and token.text == "(":
            return self._complex()
        value = self._rational()
        if self._at_imaginary():
            self._next()
            return GaussianRational(0, value)
        return GaussianRational(value)

    def _complex(self) -> GaussianRational:
        opening = self._next()
        sign = 1
        if self._at_op("+", "-"):
            sign = -1 if self._next().text == "-" else 1
        token = self._peek()
        if token is None or token.kind != "int":
            raise self._error("parentheses only enclose complex coefficients such as (1-2i)", opening)
        re_part = sign * self._rational()
        if not self._at_op("+", "-"):
            raise self._error("expected '+' or '-' inside a complex coefficient", self._peek())
        im_sign = -1 if self._next().text == "-" else 1
        im_part = Fraction(1)
        if not self._at_imaginary():
            im_part = self._rational()
        if not self._at_imaginary():
            raise self._error("expected 'i' after the imaginary part", self._peek())
        self._next()
        if not self._at_op(")"):
            raise self._error("expected ')'", self._peek())
        self._next()
        return GaussianRational(re_part, im_sign * im_part)


def parse_laurent(text: str, variables: Sequence[str]) -> LaurentPoly:
    """Parse a Laurent expression over the declared, ordered variables."""
    if "i" in variables:
        raise InputError("'i' is the imaginary unit and cannot be used as a variable name")
    return _Parser(text, variables).parse()


def parse_coefficient(text: str) -> GaussianRational:
    """Parse a constant such as '-3/2', '2i' or '(1-1/2i)'."""
    p = _Parser(text, ()).parse()
    return p.coefficient(())


# --- Monomial substitution ---

def _check_substitution(rank: int, a: IntMatrix, lam: Sequence) -> ScalarTuple:
    if not a.is_square or a.nrows != rank:
        raise DimensionMismatchError(f"{a.nrows}x{a.ncols} matrix for a rank-{rank} substitution")
    if not a.is_unimodular():
        raise NotUnimodularError(f"substitution matrix {a.tolist()} is not unimodular")
    if len(lam) != rank:
        raise DimensionMismatchError(f"{len(lam)} scalars for a rank-{rank} substitution")
    return scalar_tuple(lam)


def monomial_substitute(p: LaurentPoly, a: IntMatrix, lam: Sequence) -> LaurentPoly:
    """Apply psi* with psi*(t_i) = lam_i * chi^{row i of A}.

    A term alpha_m chi^m becomes alpha_m chi^m(lam) chi^{A^T m}.
    """
    lam = _check_substitution(p.rank, a, lam)
    at = a.transpose()
    return LaurentPoly(
        p.rank,
        [(at @ m, c * character(m, lam)) for m, c in p.items()],
    )


def proportional_monomial_factor(
    p: LaurentPoly, q: LaurentPoly
) -> tuple[GaussianRational, LatticeVector] | None:
    """(alpha, v) with p == alpha * chi^v * q, or None if p is not such a multiple."""
    if p.is_zero() or q.is_zero():
        raise ZeroPolynomialError("proportionality test needs nonzero polynomials")
    if p.rank != q.rank:
        raise DimensionMismatchError(f"rank {p.rank} and rank {q.rank} polynomials")
    if len(p) != len(q):
        return None
    # Multiplying by chi^v preserves the lexicographic order of exponents.
    p0, q0 = p.support()[0], q.support()[0]
    v = vsub(p0, q0)
    alpha = p.coefficient(p0) / q.coefficient(q0)
    for m, c in q.items():
        if p.coefficient(vadd(m, v)) != alpha * c:
            return None
    return alpha, v


def support_differences(polys: Sequence[LaurentPoly]) -> list[LatticeVector]:
    """Vectors m_i - m_0 (m_0 the lexicographic minimum) of every support, concatenated."""
    if not polys:
        raise InputError("support_differences needs at least one polynomial")
    rank = polys[0].rank
    differences = []
    for p in polys:
        if p.is_zero():
            raise ZeroPolynomialError("zero polynomial has an empty support")
        if p.rank != rank:
            raise DimensionMismatchError(f"rank {p.rank} polynomial among rank {rank} ones")
        support = p.support()
        differences.extend(vsub(m, support[0]) for m in support[1:])
    return differences


# --- Torus automorphisms ---

def torus_point_with_characters(f: IntMatrix, values: Sequence) -> ScalarTuple:
    """The point lam with chi^{row j of F}(lam) == values[j], for unimodular F."""
    values = scalar_tuple(values)
    if not f.is_unimodular():
        raise NotUnimodularError(f"character matrix {f.tolist()} is not unimodular")
    if len(values) != f.nrows:
        raise DimensionMismatchError(f"{len(values)} values for {f.nrows} characters")
    x = f.inverse()
    return tuple(character(x.row(i), values) for i in range(f.nrows))


@dataclass(frozen=True)
class MonomialMap:
    """Automorphism t -> (scalars_i * chi^{row i}(t))_i of the torus T_r."""

    matrix: IntMatrix
    scalars: ScalarTuple

    def __post_init__(self):
        object.__setattr__(self, "scalars", _check_substitution(self.matrix.nrows, self.matrix, self.scalars))

    @classmethod
    def identity(cls, rank: int) -> "MonomialMap":
        return cls(IntMatrix.identity(rank), ones(rank))

    @classmethod
    def torus_element(cls, point: Sequence) -> "MonomialMap":
        point = scalar_tuple(point)
        return cls(IntMatrix.identity(len(point)), point)

    @property
    def rank(self) -> int:
        return self.matrix.nrows

    def pullback(self, p: LaurentPoly) -> LaurentPoly:
        return monomial_substitute(p, self.matrix, self.scalars)

    def apply(self, point: Sequence) -> ScalarTuple:
        point = scalar_tuple(point)
        return tuple(
            lam * character(self.matrix.row(i), point) for i, lam in enumerate(self.scalars)
        )

    def compose(self, other: "MonomialMap") -> "MonomialMap":
        """self o other as maps of points (apply other first)."""
        if other.rank != self.rank:
            raise DimensionMismatchError(f"rank {self.rank} and rank {other.rank} maps")
        return MonomialMap(
            self.matrix @ other.matrix,
            tuple(
                lam * character(self.matrix.row(i), other.scalars)
                for i, lam in enumerate(self.scalars)
            ),
        )

    def inverse(self) -> "MonomialMap":
        return MonomialMap(
            self.matrix.inverse(),
            torus_point_with_characters(self.matrix, [1 / lam for lam in self.scalars]),
        )
