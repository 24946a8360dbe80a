# toralaut/models/schemas.py

from typing import Annotated, List, Literal, Optional, Union

from pydantic import BaseModel, ConfigDict, Field


# --- Polynomials ---
class TermModel(BaseModel):
    exponent: List[int]
    coefficient: str = Field(..., description="Gaussian rational in the coefficient grammar, e.g. '-3/2', '2i', '(1-1/2i)'.")


class PolynomialModel(BaseModel):
    """A Laurent polynomial as canonical text plus its sorted term list."""
    rank: int = Field(..., ge=0)
    variables: List[str]
    text: str
    terms: List[TermModel]


# --- Structure ---
class QuasitorusModel(BaseModel):
    finite_factors: List[int]
    torus_rank: int = Field(..., ge=0)
    order: Optional[int] = Field(None, description="Group order; null when the group contains a torus.")
    description: str


class AffineMapModel(BaseModel):
    """An element of GAff(M, h): m -> linear @ m + translation."""
    linear: List[List[int]]
    translation: List[int]
    permutation: List[int] = Field(..., description="Image index of every support point, support sorted lexicographically.")
    cycles: str
    order: int


class ProportionalityModel(BaseModel):
    alpha: str
    v: List[int]


class CertificateModel(BaseModel):
    """Automorphism certificate; `linear` rows are the exponents of psi*(t_i)."""
    model_config = ConfigDict(extra="forbid")

    linear: List[List[int]]
    basis_f: List[List[int]]
    constraint_values: List[str]
    translation_v: List[int]
    explicit_lambda: Optional[List[str]] = None
    proportionality: Optional[ProportionalityModel] = None


# --- Command results ---
class ParseResult(BaseModel):
    kind: Literal["parse"] = "parse"
    variables: List[str]
    generators: List[PolynomialModel]


class HxResult(BaseModel):
    kind: Literal["hx"] = "hx"
    mx_basis: List[List[int]]
    h: QuasitorusModel


class SplitResultModel(BaseModel):
    kind: Literal["split"] = "split"
    change_of_basis: List[List[int]]
    torus_rank: int
    residual_rank: int
    residual_generators: List[PolynomialModel]
    is_torus: bool


class GaffResult(BaseModel):
    kind: Literal["gaff"] = "gaff"
    generator: PolynomialModel
    support: List[List[int]]
    order: int
    is_abelian: bool
    element_orders: List[int]
    structure_hint: str
    elements: List[AffineMapModel]


class LiftResult(BaseModel):
    kind: Literal["lift"] = "lift"
    generator: PolynomialModel
    certificates: List[CertificateModel]
    verified: bool


class VerifyResult(BaseModel):
    kind: Literal["verify"] = "verify"
    generator: PolynomialModel
    valid: bool


class AutResult(BaseModel):
    kind: Literal["aut"] = "aut"
    torus_rank_s: int
    rank_e_y: int
    is_torus: bool
    h_y: QuasitorusModel
    gaff_order: Optional[int] = None
    aut_y_order: Optional[int] = None
    aut_y_finite: bool
    is_abelian: Optional[bool] = None
    element_orders: Optional[List[int]] = None
    structure_hint: Optional[str] = None
    formula: str
    notes: List[str] = Field(default_factory=list)


CommandResult = Annotated[
    Union[ParseResult, HxResult, SplitResultModel, GaffResult, LiftResult, VerifyResult, AutResult],
    Field(discriminator="kind"),
]


# --- Report ---
class Report(BaseModel):
    """Document emitted by every toral-aut command."""
    command: str
    input: str = Field(..., description="Path of the problem file.")
    result: CommandResult
    timing_ms: float = Field(..., ge=0)
