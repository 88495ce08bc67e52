"""Run configuration and report schemas."""

from equitheta.schemas.config import RunConfig
from equitheta.schemas.reports import (
    PREDICTION_LABEL,
    CheckResult,
    CSReport,
    CSRestatement,
    ElementReport,
    FitLabFailure,
    FitLabReport,
    IdealReport,
    KTheoryEntry,
    PredictionReport,
    PropertySummary,
    ThetaReport,
    VerifyReport,
    WitnessReport,
    coefficient_table,
)

__all__ = [
    "PREDICTION_LABEL",
    "CheckResult",
    "CSReport",
    "CSRestatement",
    "ElementReport",
    "FitLabFailure",
    "FitLabReport",
    "IdealReport",
    "KTheoryEntry",
    "PredictionReport",
    "PropertySummary",
    "RunConfig",
    "ThetaReport",
    "VerifyReport",
    "WitnessReport",
    "coefficient_table",
]
