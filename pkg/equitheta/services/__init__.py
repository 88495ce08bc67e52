"""Algorithms and orchestration services."""

from equitheta.services.cohomcheck import PredictionService
from equitheta.services.harness import FitLabService
from equitheta.services.verification import VerificationService

__all__ = [
    "FitLabService",
    "PredictionService",
    "VerificationService",
]
