"""Report schemas written by the subcommands."""

from pydantic import BaseModel, Field

from equitheta.models.group_ring import EquivPoly, GroupRingElem
from equitheta.models.module import IdealFG

PREDICTION_LABEL = "prediction: Fitting ideals derived from L-values, not independently computed groups"


class IdealReport(BaseModel):
    """Canonical form of an ideal of (Z/l^k)[G]."""

    ring: str
    basis: list[dict[str, int]]
    text: str

    @classmethod
    def from_ideal(cls, ideal: IdealFG) -> "IdealReport":
        return cls(ring=str(ideal.ring), basis=ideal.to_json()["basis"], text=str(ideal))


class ElementReport(BaseModel):
    """Element of Q[G] as (integral numerator) / denominator."""

    numerator: dict[str, int]
    denominator: int = 1
    text: str

    @classmethod
    def from_element(cls, x: GroupRingElem, denominator: int = 1) -> "ElementReport":
        text = str(x) if denominator == 1 else f"({x}) / {denominator}"
        return cls(numerator={k: int(v) for k, v in x.to_terms().items()}, denominator=denominator, text=text)


def coefficient_table(poly: EquivPoly) -> dict[str, list[int]]:
    """
    Coefficients of an equivariant polynomial per group element.

    Example:
        1 + (-2 + g)*u gives {"1": [1, -2], "g": [0, 1]}
    """
    G = poly.group
    width = poly.degree + 1
    table: dict[str, list[int]] = {}
    for g in range(G.order):
        column = [int(c.coeffs[g]) for c in poly.coeffs]
        if any(column):
            table[G.label(g)] = column + [0] * (width - len(column))
    return table


class ThetaReport(BaseModel):
    """Output of `theta`."""

    config: dict
    model: str
    request: dict
    group: list[int]
    stabilization_degree: int
    polynomial: str | None = None
    coefficients: dict[str, list[int]] | None = None
    components: list[dict] | None = None
    passed: bool = True


class CheckResult(BaseModel):
    """One named check of a property suite."""

    name: str
    passed: bool
    detail: dict | str | None = None


class VerifyReport(BaseModel):
    """Output of `verify`."""

    config: dict
    model: str
    checks: list[CheckResult]
    passed: bool


class FitLabFailure(BaseModel):
    """A failed harness instance with both sides in canonical form."""

    property: str
    seed: int
    instance: int
    lhs: IdealReport | None = None
    rhs: IdealReport | None = None
    detail: str | None = None


class PropertySummary(BaseModel):
    total: int
    passed: int


class FitLabReport(BaseModel):
    """Output of `fitlab`."""

    config: dict
    seed: int
    instances: int
    ring: str
    properties: dict[str, PropertySummary]
    failures: list[FitLabFailure] = Field(default_factory=list)
    passed: bool


class WitnessReport(BaseModel):
    T0: list
    theta: ElementReport
    delta: ElementReport
    denominator: int


class PredictionReport(BaseModel):
    """One predicted Fit(H^2) with its inputs."""

    model: dict
    S0: list
    n: int
    ell: int
    k: int
    fit_h1: IdealReport
    theta: ElementReport
    fit_h2: IdealReport
    witnesses: list[WitnessReport]
    checks: dict[str, bool]
    label: str = PREDICTION_LABEL


class KTheoryEntry(BaseModel):
    """
    l-part of Fit(K_{2n-1}) * Theta(q^{n-1}) = Fit(K_{2n-2}).

    For l != p the ideals come from the cohomology prediction; at l = p both
    sides are the unit ideal when Theta(q^{n-1}) is a p-adic unit.
    """

    prime: int
    role: str  # "l" or "p"
    fit_odd: IdealReport | None = None
    fit_even: IdealReport | None = None
    status: str


class CSRestatement(BaseModel):
    """K-theoretic restatement of the predictions for one n."""

    model: dict
    n: int
    statement: str
    entries: list[KTheoryEntry]
    label: str = PREDICTION_LABEL


class CSReport(BaseModel):
    """Output of `cs-report`."""

    config: dict
    predictions: list[PredictionReport]
    restatements: list[CSRestatement]
    passed: bool
    label: str = PREDICTION_LABEL
