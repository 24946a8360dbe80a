# toralaut/cli/assembly.py

from ..core.assemble import aut_structure
from ..models import schemas
from ..models.convert import aut_model
from . import render
from .common import FormatOption, MaxSupportOption, ProblemArgument, ThreadsOption, run_command
from .problem_file import ProblemInput


def aut_command(
    problem: ProblemArgument,
    output_format: FormatOption = None,
    max_support: MaxSupportOption = None,
    threads: ThreadsOption = None,
):
    def compute(p: ProblemInput) -> schemas.AutResult:
        return aut_model(aut_structure(p.generators, p.rank, max_support=max_support, threads=threads))

    run_command("aut", problem, output_format, compute, render.render_aut)
