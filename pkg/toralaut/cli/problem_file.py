# toralaut/cli/problem_file.py

"""Problem files: a `vars` header followed by `gen` lines.

    # the affine line minus two points
    vars t1 t2
    gen t1*t2 - t1 - 1
"""

import logging
import re
from dataclasses import dataclass
from pathlib import Path

from .. import constants
from ..core.errors import LaurentSyntaxError, ProblemFileError
from ..core.laurent import LaurentPoly, parse_laurent

logger = logging.getLogger(__name__)

_NAME_RE = re.compile(r"[A-Za-z_][A-Za-z0-9_]*\Z")


@dataclass(frozen=True)
class ProblemInput:
    variables: tuple[str, ...]
    generators: tuple[LaurentPoly, ...]

    @property
    def rank(self) -> int:
        return len(self.variables)


def _parse_vars(rest: str, line: int) -> tuple[str, ...]:
    names = tuple(rest.split())
    if not names:
        raise ProblemFileError("'vars' needs at least one variable name", line)
    for name in names:
        if not _NAME_RE.match(name):
            raise ProblemFileError(f"invalid variable name {name!r}", line)
        if name == constants.IMAGINARY_UNIT:
            raise ProblemFileError("'i' is the imaginary unit and cannot be a variable", line)
    duplicates = sorted({n for n in names if names.count(n) > 1})
    if duplicates:
        raise ProblemFileError(f"variable declared twice: {', '.join(duplicates)}", line)
    return names


def parse_problem(text: str) -> ProblemInput:
    variables = None
    generators = []
    for number, raw in enumerate(text.splitlines(), start=1):
        content = raw.split(constants.COMMENT_PREFIX, 1)[0].strip()
        if not content:
            continue
        keyword, *rest = content.split(maxsplit=1)
        rest = rest[0] if rest else ""
        if variables is None:
            if keyword != constants.VARS_KEYWORD:
                raise ProblemFileError(f"expected '{constants.VARS_KEYWORD} ...' before anything else", number)
            variables = _parse_vars(rest, number)
            continue
        if keyword == constants.VARS_KEYWORD:
            raise ProblemFileError("variables are already declared", number)
        if keyword != constants.GEN_KEYWORD:
            raise ProblemFileError(f"unknown keyword {keyword!r}", number)
        try:
            g = parse_laurent(rest, variables)
        except LaurentSyntaxError as e:
            raise ProblemFileError(str(e), number) from e
        if g.is_zero():
            raise ProblemFileError("generator is the zero polynomial", number)
        generators.append(g)
    if variables is None:
        raise ProblemFileError(f"missing '{constants.VARS_KEYWORD}' line")
    logger.debug("problem: %d variables, %d generators", len(variables), len(generators))
    return ProblemInput(variables=variables, generators=tuple(generators))


def read_problem(path: Path) -> ProblemInput:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except (OSError, UnicodeDecodeError) as e:
        raise ProblemFileError(f"cannot read {path}: {e}") from e
    return parse_problem(text)
