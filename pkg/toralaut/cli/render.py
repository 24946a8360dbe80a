# toralaut/cli/render.py

"""Text rendering of command results with rich."""

from rich.console import Console
from rich.table import Table
from rich.text import Text

from ..models import schemas


def _matrix(rows: list[list[int]]) -> str:
    return "\n".join("[" + " ".join(f"{x:>3}" for x in row) + " ]" for row in rows)


def _vector(v: list[int]) -> str:
    return "(" + ", ".join(str(x) for x in v) + ")"


def render_parse(result: schemas.ParseResult, console: Console) -> None:
    console.print(Text(f"vars {' '.join(result.variables)}"))
    for g in result.generators:
        console.print(Text(f"gen {g.text}"))


def render_hx(result: schemas.HxResult, console: Console) -> None:
    label = "H(Y)" if result.h.torus_rank == 0 else "H(X)"
    console.print(Text(f"{label} ≅ {result.h.description}"))
    basis = ", ".join(_vector(b) for b in result.mx_basis) or "0"
    console.print(Text(f"M basis: {basis}"))


def render_split(result: schemas.SplitResultModel, console: Console) -> None:
    if result.is_torus:
        console.print(Text(f"X is the torus T_{result.torus_rank}"))
        return
    console.print(Text(f"X ≅ Y × T_{result.torus_rank}, Y in a torus of rank {result.residual_rank}"))
    console.print(Text("change of basis:"))
    console.print(Text(_matrix(result.change_of_basis)))
    for g in result.residual_generators:
        console.print(Text(f"gen {g.text}    ({' '.join(g.variables)})"))


def render_gaff(result: schemas.GaffResult, console: Console) -> None:
    kind = "abelian" if result.is_abelian else "nonabelian"
    console.print(Text(f"h = {result.generator.text}"))
    console.print(Text(f"GAff(M, h): order {result.order} ({result.structure_hint}), {kind}"))
    console.print(Text("element orders: " + " ".join(str(k) for k in result.element_orders)))
    console.print(Text("support: " + "  ".join(f"{k}:{_vector(m)}" for k, m in enumerate(result.support))))
    table = Table(show_lines=True)
    for column in ("#", "linear", "translation", "permutation", "order"):
        table.add_column(column)
    for k, phi in enumerate(result.elements):
        table.add_row(
            str(k),
            Text(_matrix(phi.linear)),
            Text(_vector(phi.translation)),
            Text(phi.cycles),
            str(phi.order),
        )
    console.print(table)


def _certificate_table(k: int, cert: schemas.CertificateModel) -> Table:
    table = Table(title=f"certificate {k}", show_header=False, title_justify="left")
    table.add_column("field", style="bold")
    table.add_column("value")
    table.add_row("psi* exponents", Text(_matrix(cert.linear)))
    table.add_row("translation v", Text(_vector(cert.translation_v)))
    table.add_row("basis f", Text(", ".join(_vector(f) for f in cert.basis_f)))
    table.add_row("chi^f(lambda)", Text(", ".join(cert.constraint_values)))
    if cert.explicit_lambda is not None:
        table.add_row("lambda", Text("(" + ", ".join(cert.explicit_lambda) + ")"))
    if cert.proportionality is not None:
        p = cert.proportionality
        table.add_row("psi*(h)", Text(f"{p.alpha} * chi^{_vector([-x for x in p.v])} * h"))
    return table


def render_lift(result: schemas.LiftResult, console: Console) -> None:
    console.print(Text(f"h = {result.generator.text}"))
    for k, cert in enumerate(result.certificates):
        console.print(_certificate_table(k, cert))
    console.print(Text(f"{len(result.certificates)} certificates, verified: {str(result.verified).lower()}"))


def render_verify(result: schemas.VerifyResult, console: Console) -> None:
    console.print(Text(str(result.valid).lower()))


def render_aut(result: schemas.AutResult, console: Console) -> None:
    console.print(Text(f"Aut(X) ≅ {result.formula}"))
    console.print(Text(f"torus factor rank s = {result.torus_rank_s}, rank E(Y) = {result.rank_e_y}"))
    console.print(Text(f"H(Y) ≅ {result.h_y.description}"))
    if result.gaff_order is not None:
        console.print(Text(f"GAff(M, h): order {result.gaff_order} ({result.structure_hint})"))
    if result.aut_y_order is not None:
        console.print(Text(f"|Aut(Y)| = {result.aut_y_order}"))
    for note in result.notes:
        console.print(Text(f"note: {note}"), style="dim")
