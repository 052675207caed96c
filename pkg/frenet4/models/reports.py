"""Report models emitted by the command line."""

from enum import Enum
from typing import Dict, List, Optional, Union

from pydantic import BaseModel, ConfigDict, Field

from frenet4.config import config
from frenet4.models.curve import Tolerances


class Verdict(str, Enum):
    """Tri-state answer of a classification predicate."""

    TRUE = "true"
    FALSE = "false"
    INCONCLUSIVE = "inconclusive"


class ItemVerdict(str, Enum):
    """Outcome of one theorem item."""

    PASS = "PASS"
    FAIL = "FAIL"
    INCONCLUSIVE = "INCONCLUSIVE"


class Agreement(str, Enum):
    """Closed form against oracle."""

    AGREE = "agree"
    SIGN = "sign"
    DISAGREE = "disagree"


class GridSpec(BaseModel):
    t_min: float
    t_max: float
    samples: int


class _Report(BaseModel):
    schema_version: str = config.schema_version
    grid: GridSpec
    tolerances: Tolerances

    model_config = ConfigDict(populate_by_name=True)


# Analyze


class SampleRow(BaseModel):
    """Apparatus at one grid point, in table column order."""

    t: float
    s: float
    T: List[float]
    N: List[float]
    B: List[float]
    E: List[float]
    kappa: float
    tau: float
    sigma: float
    H1: Optional[float] = None
    H2: Optional[float] = None


class AnalyzeReport(_Report):
    rows: List[SampleRow]
    frame_reversals: int = 0


# Classify


class ConstancyCheck(BaseModel):
    """Constancy of κ, τ, σ (helix) or of τ/κ, σ/κ (ccr)."""

    verdict: Verdict
    residual: float
    means: Dict[str, float]


class ResidualCheck(BaseModel):
    """Statistics of a pointwise residual; normalized values divide by the curvature scale."""

    verdict: Verdict
    max: float
    mean: float
    min: float
    normalized_max: float
    normalized_min: float


class SphereCheck(BaseModel):
    """Constancy of the squared-radius estimate along the curve."""

    verdict: Verdict
    residual: float
    r_squared: float
    radius: Optional[float] = None


class CcrSphereCheck(BaseModel):
    """Squared-radius estimate written through f = ρ² and the ccr ratios."""

    verdict: Verdict
    residual: float
    value_mean: float
    agreement_with_sphere: float
    printed_form_mean: float
    printed_form_agreement: float


class ClassificationReport(_Report):
    curvature_scale: float
    is_helix: ConstancyCheck
    is_ccr: ConstancyCheck
    generalized_helix: Optional[ResidualCheck] = None
    slant3: Optional[ResidualCheck] = None
    sphere: Optional[SphereCheck] = None
    ccr_sphere: Optional[CcrSphereCheck] = None
    ccr_not_generalized_helix: Optional[bool] = None
    ccr_not_slant3: Optional[bool] = None


# Closed form versus oracle


class Discrepancy(BaseModel):
    quantity: str
    closed_form: Union[float, List[float]]
    oracle: Union[float, List[float]]
    difference: float
    sign_flipped: bool = False
    verdict: Agreement
    note: Optional[str] = None


class DiscrepancyReport(BaseModel):
    t: float
    entries: List[Discrepancy]

    @property
    def max_difference(self) -> float:
        return max((e.difference for e in self.entries if e.note is None), default=0.0)

    def entry(self, quantity: str) -> Discrepancy:
        for e in self.entries:
            if e.quantity == quantity:
                return e
        raise KeyError(quantity)


class BertrandCoefficients(BaseModel):
    lam: float = Field(serialization_alias="lambda")
    K: float
    L: float
    M: float
    l1: float
    l2: float
    l1_derived: float
    b_orthogonality_defect: float
    normal_defect: float


class InvoluteConstants(BaseModel):
    A1: float
    A2: float
    A3: float
    A2_derived: float
    slope: Optional[float] = None
    intercept: Optional[float] = None


class AffineFitReport(BaseModel):
    slope: float
    intercept: float
    r_squared: float
    expected_slope: float
    expected_intercept: float


class DerivedCurveReport(_Report):
    """Constructed curve samples, closed forms and their discrepancies."""

    construction: str
    lam: Optional[float] = Field(default=None, serialization_alias="lambda")
    c: Optional[float] = None
    bertrand: Optional[BertrandCoefficients] = None
    involute: Optional[InvoluteConstants] = None
    sphere_fit: Optional[AffineFitReport] = None
    rows: List[SampleRow]
    discrepancies: List[DiscrepancyReport]
    max_discrepancy: float
    flagged: List[str]


# Theorem suite


class TheoremItem(BaseModel):
    id: str
    claim: str
    verdict: ItemVerdict
    value: Optional[float] = None
    bound: Optional[float] = None
    note: Optional[str] = None


class TheoremReport(_Report):
    lam: float = Field(serialization_alias="lambda")
    c: float
    items: List[TheoremItem]
    verdict: ItemVerdict
