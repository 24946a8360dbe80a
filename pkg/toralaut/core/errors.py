# toralaut/core/errors.py

# Custom exceptions for clearer error handling. The CLI maps the two
# families below to exit codes: InputError -> 1, ScopeError -> 2.


class ToralAutError(Exception):
    """Base exception for toralaut errors."""
    pass


# --- Input errors (bad data supplied by the caller) ---

class InputError(ToralAutError):
    """Raised when the caller's input is malformed or violates a precondition."""
    pass


class LaurentSyntaxError(InputError):
    """Raised when a Laurent expression does not follow the grammar."""

    def __init__(self, message: str, position: int, text: str = ""):
        self.position = position
        self.text = text
        super().__init__(f"{message} (at position {position})")


class UnknownVariableError(LaurentSyntaxError):
    """Raised when an expression uses a variable that was not declared."""
    pass


class ProblemFileError(InputError):
    """Raised for errors in a problem description file."""

    def __init__(self, message: str, line: int | None = None):
        self.line = line
        prefix = f"line {line}: " if line is not None else ""
        super().__init__(f"{prefix}{message}")


class DimensionMismatchError(InputError):
    """Raised when vectors, matrices or polynomials of different ranks are combined."""
    pass


class NotUnimodularError(InputError):
    """Raised when an integer matrix is expected to have determinant +-1."""
    pass


class ZeroPolynomialError(InputError):
    """Raised when an operation requires a nonzero polynomial."""
    pass


class DependentBasisError(InputError):
    """Raised when a lattice basis is not linearly independent."""
    pass


class UnitGeneratorError(InputError):
    """Raised when a generator is a single monomial (the variety is empty)."""
    pass


class SupportNotPreservedError(InputError):
    """Raised when an affine map does not preserve the support of h."""
    pass


class InconsistencyError(InputError):
    """Raised when data asserted by the caller turns out to be inconsistent."""
    pass


class MinimalityViolationError(InconsistencyError):
    """Raised when a generator is not semi-invariant under H(X) after splitting."""
    pass


class CertificateError(InconsistencyError):
    """Raised when an automorphism certificate is corrupted or does not verify."""
    pass


# --- Scope errors (valid input outside the reach of the method) ---

class ScopeError(ToralAutError):
    """Raised when a computation is outside the scope of the implemented method."""
    pass


class SupportBoundError(ScopeError):
    """Raised when |supp h| exceeds the configured enumeration bound."""

    def __init__(self, size: int, bound: int):
        self.size = size
        self.bound = bound
        super().__init__(
            f"support has {size} points, enumeration bound is {bound} "
            f"(raise it with --max-support or TORALAUT_MAX_SUPPORT)"
        )


class TorusFactorNotSplitError(ScopeError):
    """Raised when support differences do not span a full-rank lattice."""
    pass


class NotHypersurfaceError(ScopeError):
    """Raised when the residual variety is not defined by a single generator."""
    pass


class RootsOutsideFieldError(ScopeError):
    """Raised when an answer needs roots of unity that do not lie in Q(i)."""
    pass
