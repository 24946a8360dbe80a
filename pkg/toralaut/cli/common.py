# toralaut/cli/common.py

"""Shared options, error handling and output for the toral-aut commands."""

import logging
import time
from pathlib import Path
from typing import Annotated, Callable, Optional

import orjson
import typer
from pydantic import BaseModel
from rich.console import Console
from rich.markup import escape

from .. import constants
from ..config.settings import settings
from ..core.assemble import residual_hypersurface
from ..core.errors import InputError, ScopeError
from ..core.laurent import LaurentPoly
from ..models import schemas
from ..models.convert import residual_variables
from .problem_file import ProblemInput, read_problem

logger = logging.getLogger(__name__)

# --- Options ---
ProblemArgument = Annotated[
    Path,
    typer.Argument(help="Problem file: a 'vars' line followed by 'gen' lines.", show_default=False),
]
FormatOption = Annotated[
    Optional[constants.OutputFormat],
    typer.Option("--format", "-f", help="Output format (default from TORALAUT_OUTPUT_FORMAT).", case_sensitive=False),
]
MaxSupportOption = Annotated[
    Optional[int],
    typer.Option("--max-support", min=1, help="Largest |supp h| to enumerate (default from TORALAUT_MAX_SUPPORT)."),
]
ThreadsOption = Annotated[
    Optional[int],
    typer.Option("--threads", min=1, help="Worker processes for the enumeration (default from TORALAUT_THREADS)."),
]

TextRenderer = Callable[[BaseModel, Console], None]


def stdout_console() -> Console:
    return Console(highlight=False, soft_wrap=True)


def stderr_console() -> Console:
    return Console(stderr=True, highlight=False)


def resolve_format(output_format: constants.OutputFormat | None) -> constants.OutputFormat:
    return output_format or constants.OutputFormat(settings.output_format)


def hypersurface(problem: ProblemInput) -> tuple[LaurentPoly, list[str]]:
    """The generator h of Y with the names of its variables.

    Without a torus factor the input coordinates are kept, so certificates
    refer to the variables of the problem file.
    """
    split, h = residual_hypersurface(problem.generators, problem.rank)
    if split.torus_rank == 0 and len(problem.generators) == 1:
        return problem.generators[0], list(problem.variables)
    return h, residual_variables(split.residual_rank)


def emit(report: schemas.Report, output_format: constants.OutputFormat, render: TextRenderer) -> None:
    if output_format is constants.OutputFormat.JSON:
        typer.echo(orjson.dumps(report.model_dump(mode="json"), option=orjson.OPT_INDENT_2).decode())
    else:
        render(report.result, stdout_console())


def run_command(
    command: str,
    path: Path,
    output_format: constants.OutputFormat | None,
    compute: Callable[[ProblemInput], BaseModel],
    render: TextRenderer,
) -> BaseModel:
    """Read the problem, compute, emit; map toralaut errors to exit codes."""
    output_format = resolve_format(output_format)
    start = time.perf_counter()
    try:
        problem = read_problem(path)
        result = compute(problem)
    except InputError as e:
        logger.debug("input error in %s", command, exc_info=True)
        stderr_console().print(f"[bold red]error:[/bold red] {escape(str(e))}")
        raise typer.Exit(code=constants.EXIT_INPUT_ERROR)
    except ScopeError as e:
        logger.debug("scope error in %s", command, exc_info=True)
        stderr_console().print(f"[bold yellow]out of scope:[/bold yellow] {escape(str(e))}")
        raise typer.Exit(code=constants.EXIT_SCOPE_ERROR)
    elapsed = (time.perf_counter() - start) * 1000
    logger.info("%s finished in %.1f ms", command, elapsed)
    report = schemas.Report(command=command, input=str(path), result=result, timing_ms=elapsed)
    emit(report, output_format, render)
    return result
