"""Immutable value types."""

from equitheta.models.character import Character, all_characters
from equitheta.models.cyclotomic import CyclotomicElem, CyclotomicField, cyclotomic_field
from equitheta.models.extension import ExtensionKind, ExtensionModel
from equitheta.models.field import FiniteField, PrimePower, get_field
from equitheta.models.group import FinAbGroup, cyclic_group
from equitheta.models.group_ring import EquivPoly, GroupRingElem
from equitheta.models.module import FinGroupRing, FracIdeal, IdealFG, PresentedModule
from equitheta.models.polynomial import ZERO_DEGREE, FqPoly, Place, ResidueUnitGroup, poly_gcd
from equitheta.models.prediction import (
    CohomologyPrediction,
    DivisorFitResult,
    DivisorModuleData,
    WitnessComputation,
)
from equitheta.models.theta import CharacterComponent, LDataRequest, ThetaPoly

__all__ = [
    "Character",
    "CharacterComponent",
    "CohomologyPrediction",
    "CyclotomicElem",
    "CyclotomicField",
    "DivisorFitResult",
    "DivisorModuleData",
    "EquivPoly",
    "ExtensionKind",
    "ExtensionModel",
    "FinAbGroup",
    "FinGroupRing",
    "FiniteField",
    "FqPoly",
    "FracIdeal",
    "GroupRingElem",
    "IdealFG",
    "LDataRequest",
    "Place",
    "PresentedModule",
    "PrimePower",
    "ResidueUnitGroup",
    "ThetaPoly",
    "WitnessComputation",
    "ZERO_DEGREE",
    "all_characters",
    "cyclic_group",
    "cyclotomic_field",
    "get_field",
    "poly_gcd",
]
