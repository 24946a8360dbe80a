# toralaut/models/convert.py

"""Translate core values to the wire schemas and certificates back."""

from typing import Sequence

from pydantic import ValidationError

from ..core.assemble import AutStructure
from ..core.errors import CertificateError, InputError
from ..core.gaff import AffineLatticeMap, AutoCertificate, GaffGroup, cycle_notation
from ..core.laurent import LaurentPoly, format_coefficient, format_laurent, parse_coefficient
from ..core.structure import Quasitorus, SplitResult
from ..core.zlattice import IntMatrix, as_vector
from . import schemas


def polynomial_model(p: LaurentPoly, variables: Sequence[str]) -> schemas.PolynomialModel:
    return schemas.PolynomialModel(
        rank=p.rank,
        variables=list(variables),
        text=format_laurent(p, variables),
        terms=[schemas.TermModel(exponent=list(m), coefficient=format_coefficient(c)) for m, c in p.items()],
    )


def quasitorus_model(h: Quasitorus) -> schemas.QuasitorusModel:
    return schemas.QuasitorusModel(
        finite_factors=list(h.finite_factors),
        torus_rank=h.torus_rank,
        order=h.order(),
        description=h.describe(),
    )


def residual_variables(rank: int) -> list[str]:
    """Names of the split coordinates; they differ from the input coordinates."""
    return [f"u{k + 1}" for k in range(rank)]


def split_model(split: SplitResult) -> schemas.SplitResultModel:
    names = residual_variables(split.residual_rank)
    return schemas.SplitResultModel(
        change_of_basis=split.change_of_basis.tolist(),
        torus_rank=split.torus_rank,
        residual_rank=split.residual_rank,
        residual_generators=[polynomial_model(g, names) for g in split.residual_generators],
        is_torus=split.is_torus,
    )


def affine_map_model(phi: AffineLatticeMap, sigma: Sequence[int], order: int) -> schemas.AffineMapModel:
    return schemas.AffineMapModel(
        linear=phi.linear.tolist(),
        translation=list(phi.translation),
        permutation=list(sigma),
        cycles=cycle_notation(sigma),
        order=order,
    )


def gaff_model(group: GaffGroup, generator: schemas.PolynomialModel) -> schemas.GaffResult:
    return schemas.GaffResult(
        generator=generator,
        support=[list(m) for m in group.support],
        order=group.order,
        is_abelian=group.is_abelian(),
        element_orders=group.element_orders(),
        structure_hint=group.structure_hint(),
        elements=[
            affine_map_model(phi, sigma, group.element_order(k))
            for k, (phi, sigma) in enumerate(zip(group.elements, group.permutations))
        ],
    )


def aut_model(aut: AutStructure) -> schemas.AutResult:
    return schemas.AutResult(
        torus_rank_s=aut.torus_rank_s,
        rank_e_y=aut.rank_e_y,
        is_torus=aut.is_torus,
        h_y=quasitorus_model(aut.h_y),
        gaff_order=aut.gaff_order,
        aut_y_order=aut.aut_y_order,
        aut_y_finite=aut.aut_y_finite,
        is_abelian=aut.gaff.is_abelian() if aut.gaff else None,
        element_orders=aut.gaff.element_orders() if aut.gaff else None,
        structure_hint=aut.gaff.structure_hint() if aut.gaff else None,
        formula=aut.formula.render(),
        notes=list(aut.notes),
    )


# --- Certificates ---

def certificate_model(cert: AutoCertificate) -> schemas.CertificateModel:
    proportionality = None
    if cert.proportionality is not None:
        alpha, v = cert.proportionality
        proportionality = schemas.ProportionalityModel(alpha=format_coefficient(alpha), v=list(v))
    return schemas.CertificateModel(
        linear=cert.linear.tolist(),
        basis_f=[list(f) for f in cert.basis_f],
        constraint_values=[format_coefficient(c) for c in cert.constraint_values],
        translation_v=list(cert.translation_v),
        explicit_lambda=(
            [format_coefficient(x) for x in cert.explicit_lambda] if cert.explicit_lambda is not None else None
        ),
        proportionality=proportionality,
    )


def certificate_from_model(model: schemas.CertificateModel) -> AutoCertificate:
    try:
        rank = len(model.linear)
        proportionality = None
        if model.proportionality is not None:
            proportionality = (parse_coefficient(model.proportionality.alpha), as_vector(model.proportionality.v))
        return AutoCertificate(
            linear=IntMatrix.from_rows(model.linear, ncols=rank),
            basis_f=tuple(as_vector(f) for f in model.basis_f),
            constraint_values=tuple(parse_coefficient(c) for c in model.constraint_values),
            translation_v=as_vector(model.translation_v),
            explicit_lambda=(
                tuple(parse_coefficient(x) for x in model.explicit_lambda)
                if model.explicit_lambda is not None
                else None
            ),
            proportionality=proportionality,
        )
    except InputError as e:
        raise CertificateError(f"malformed certificate: {e}") from e


def read_certificate(text: str | bytes) -> AutoCertificate:
    """Parse a certificate JSON document."""
    try:
        model = schemas.CertificateModel.model_validate_json(text)
    except ValidationError as e:
        raise CertificateError(f"certificate does not match the schema: {e.error_count()} error(s)\n{e}") from e
    return certificate_from_model(model)
