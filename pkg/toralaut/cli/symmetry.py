# toralaut/cli/symmetry.py

"""Commands on GAff(M, h) and automorphism certificates: gaff, lift, verify."""

import logging
from pathlib import Path
from typing import Annotated, Optional

import orjson
import typer

from ..core.errors import CertificateError
from ..core.gaff import enumerate_gaff, lift_certificate, verify_certificate
from ..models import schemas
from ..models.convert import certificate_model, gaff_model, polynomial_model, read_certificate
from . import render
from .common import FormatOption, MaxSupportOption, ProblemArgument, ThreadsOption, hypersurface, run_command
from .problem_file import ProblemInput

logger = logging.getLogger(__name__)

CertificateArgument = Annotated[
    Path,
    typer.Argument(help="Certificate JSON file, as written by 'lift --write-dir'.", show_default=False),
]
WriteDirOption = Annotated[
    Optional[Path],
    typer.Option("--write-dir", help="Also write every certificate to DIR/certificate_<k>.json."),
]


def gaff_command(
    problem: ProblemArgument,
    output_format: FormatOption = None,
    max_support: MaxSupportOption = None,
    threads: ThreadsOption = None,
):
    def compute(p: ProblemInput) -> schemas.GaffResult:
        h, names = hypersurface(p)
        group = enumerate_gaff(h, max_support=max_support, threads=threads)
        return gaff_model(group, polynomial_model(h, names))

    run_command("gaff", problem, output_format, compute, render.render_gaff)


def _write_certificates(directory: Path, certificates: list[schemas.CertificateModel]) -> None:
    try:
        directory.mkdir(parents=True, exist_ok=True)
        for k, cert in enumerate(certificates):
            target = directory / f"certificate_{k}.json"
            target.write_bytes(orjson.dumps(cert.model_dump(mode="json"), option=orjson.OPT_INDENT_2))
            logger.info("wrote %s", target)
    except OSError as e:
        raise CertificateError(f"cannot write certificates to {directory}: {e}") from e


def lift_command(
    problem: ProblemArgument,
    output_format: FormatOption = None,
    max_support: MaxSupportOption = None,
    threads: ThreadsOption = None,
    write_dir: WriteDirOption = None,
):
    def compute(p: ProblemInput) -> schemas.LiftResult:
        h, names = hypersurface(p)
        group = enumerate_gaff(h, max_support=max_support, threads=threads)
        certificates = [lift_certificate(h, phi) for phi in group.elements]
        models = [certificate_model(cert) for cert in certificates]
        if write_dir is not None:
            _write_certificates(write_dir, models)
        return schemas.LiftResult(
            generator=polynomial_model(h, names),
            certificates=models,
            verified=all(verify_certificate(h, cert) for cert in certificates),
        )

    run_command("lift", problem, output_format, compute, render.render_lift)


def verify_command(
    problem: ProblemArgument,
    certificate: CertificateArgument,
    output_format: FormatOption = None,
):
    def compute(p: ProblemInput) -> schemas.VerifyResult:
        h, names = hypersurface(p)
        try:
            text = certificate.read_bytes()
        except OSError as e:
            raise CertificateError(f"cannot read {certificate}: {e}") from e
        return schemas.VerifyResult(
            generator=polynomial_model(h, names),
            valid=verify_certificate(h, read_certificate(text)),
        )

    run_command("verify", problem, output_format, compute, render.render_verify)
