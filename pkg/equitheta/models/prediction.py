"""Predicted Fitting ideals of the etale cohomology groups and divisor modules."""

from dataclasses import dataclass, field

from equitheta.models.extension import ExtensionModel
from equitheta.models.group_ring import GroupRingElem
from equitheta.models.module import FinGroupRing, FracIdeal, IdealFG, PresentedModule
from equitheta.models.polynomial import Place


@dataclass(frozen=True, slots=True)
class DivisorModuleData:
    """sum over v in T0 of (Z/l^k)[G] / <1 - q^(n d_v) sigma_v>, with its integral relations."""

    model: ExtensionModel
    T0: tuple[Place, ...]
    n: int
    ring: FinGroupRing
    module: PresentedModule
    relations: tuple[GroupRingElem, ...]  # integral 1 - q^(n d_v) sigma_v, one per place

    @property
    def ell(self) -> int:
        return self.ring.ell

    @property
    def k(self) -> int:
        return self.ring.k


@dataclass(frozen=True, slots=True)
class DivisorFitResult:
    """Fitting ideals of a divisor module and its dual next to the expected principal ideals."""

    data: DivisorModuleData
    fit_module: IdealFG
    expected_module: IdealFG
    fit_dual: IdealFG
    expected_dual: IdealFG

    @property
    def module_ok(self) -> bool:
        return self.fit_module == self.expected_module

    @property
    def dual_ok(self) -> bool:
        return self.fit_dual == self.expected_dual

    @property
    def holds(self) -> bool:
        return self.module_ok and self.dual_ok


@dataclass(frozen=True, slots=True)
class WitnessComputation:
    """Everything derived from one smoothing set T0."""

    T0: tuple[Place, ...]
    theta_value: GroupRingElem  # Theta_{S0,T0}(q^{n-1}), integral
    delta: GroupRingElem  # delta_{T0}(q^{n-1})
    delta_adjugate: GroupRingElem  # delta * delta_adjugate = denominator
    denominator: int
    fit_h2: FracIdeal


@dataclass(frozen=True, slots=True)
class CohomologyPrediction:
    """
    Fit(H^1) and the predicted Fit(H^2) = Fit(H^1) * Theta_{S0}(q^{n-1}) over (Z/l^k)[G].

    `theta_value / theta_denominator` is the unsmoothed value Theta_{S0}(q^{n-1}) in Q[G].
    """

    model: ExtensionModel
    S0: tuple[Place, ...]
    n: int
    ell: int
    k: int
    fit_h1: IdealFG
    theta_value: GroupRingElem
    theta_denominator: int
    fit_h2: FracIdeal
    witnesses: tuple[WitnessComputation, ...]
    checks: dict[str, bool] = field(default_factory=dict)

    @property
    def ring(self) -> FinGroupRing:
        return self.fit_h1.ring

    def fit_h2_ideal(self) -> IdealFG:
        return self.fit_h2.integral_form()
