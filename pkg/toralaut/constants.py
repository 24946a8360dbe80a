# toralaut/constants.py

from enum import Enum

from .core.laurent import I, ONE

# Exit codes of the toral-aut command
EXIT_OK = 0
EXIT_INPUT_ERROR = 1
EXIT_SCOPE_ERROR = 2


class OutputFormat(str, Enum):
    TEXT = "text"
    JSON = "json"


# Reserved coefficient token for the imaginary unit
IMAGINARY_UNIT = "i"

# Roots of unity of each order available in Q(i), listed as powers of a generator
ROOTS_OF_UNITY = {
    1: (ONE,),
    2: (ONE, -ONE),
    4: (ONE, I, -ONE, -I),
}

# Problem file keywords
VARS_KEYWORD = "vars"
GEN_KEYWORD = "gen"
COMMENT_PREFIX = "#"

COMMAND_HELP = {
    "parse": "Echo the canonical form of the generators.",
    "hx": "Compute the quasitorus H(X) of torus elements preserving X.",
    "split": "Split off the maximal torus factor, X = Y x T.",
    "gaff": "Enumerate GAff(M, h) for a hypersurface residual Y.",
    "lift": "Lift every GAff element to a verified automorphism certificate.",
    "verify": "Check an automorphism certificate against the generator of a problem.",
    "aut": "Report the structure of Aut(X).",
}
