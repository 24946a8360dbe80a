# toralaut/cli/inspection.py

"""Commands that read the problem and its lattices: parse, hx, split."""

from ..core.structure import lattice_mx, quasitorus_hx, split_torus_factor
from ..models import schemas
from ..models.convert import polynomial_model, quasitorus_model, split_model
from . import render
from .common import FormatOption, ProblemArgument, run_command
from .problem_file import ProblemInput


def parse_command(problem: ProblemArgument, output_format: FormatOption = None):
    def compute(p: ProblemInput) -> schemas.ParseResult:
        return schemas.ParseResult(
            variables=list(p.variables),
            generators=[polynomial_model(g, p.variables) for g in p.generators],
        )

    run_command("parse", problem, output_format, compute, render.render_parse)


def hx_command(problem: ProblemArgument, output_format: FormatOption = None):
    def compute(p: ProblemInput) -> schemas.HxResult:
        basis = lattice_mx(p.generators, p.rank)
        return schemas.HxResult(
            mx_basis=[list(b) for b in basis],
            h=quasitorus_model(quasitorus_hx(basis, p.rank)),
        )

    run_command("hx", problem, output_format, compute, render.render_hx)


def split_command(problem: ProblemArgument, output_format: FormatOption = None):
    def compute(p: ProblemInput) -> schemas.SplitResultModel:
        return split_model(split_torus_factor(p.generators, p.rank))

    run_command("split", problem, output_format, compute, render.render_split)
