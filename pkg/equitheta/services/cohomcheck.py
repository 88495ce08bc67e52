"""
Predicted Fitting ideals of etale cohomology and the divisor-module cross-checks.

H^1 is presented through the dual of the coinvariant module Z_l(-n)_Gamma, the
divisor modules through their diagonal relations, and Fit(H^2) is predicted as
Fit(H^1) * Theta_{S0}(q^{n-1}). The unsmoothed value is never divided out in the
ring: for each smoothing set T0, Theta_{S0} = Theta_{S0,T0} * delta* / D with D the
determinant of multiplication by delta_{T0} and delta* its adjugate element.
"""

import logging
import math
from concurrent.futures import ProcessPoolExecutor
from fractions import Fraction
from typing import Iterable, Sequence

import sympy

from equitheta.config import settings
from equitheta.exceptions import ConsistencyFailure, PreconditionError
from equitheta.models.extension import ExtensionModel
from equitheta.models.group_ring import GroupRingElem
from equitheta.models.module import FinGroupRing, FracIdeal, IdealFG, PresentedModule
from equitheta.models.polynomial import Place
from equitheta.models.prediction import (
    CohomologyPrediction,
    DivisorFitResult,
    DivisorModuleData,
    WitnessComputation,
)
from equitheta.models.theta import LDataRequest
from equitheta.schemas.reports import (
    CSRestatement,
    ElementReport,
    IdealReport,
    KTheoryEntry,
    PredictionReport,
    WitnessReport,
)
from equitheta.services.fitting import (
    base_change_ideal,
    dual_vee,
    exact_precision,
    fit,
    multiplication_matrix,
)
from equitheta.services.grpring import is_nonzero_divisor
from equitheta.services.lfun import delta_t, theta, theta_special

logger = logging.getLogger(__name__)


def _require_ell_not_p(model: ExtensionModel, ell: int) -> None:
    if ell == model.characteristic:
        raise PreconditionError(f"l={ell} equals the characteristic of F_{model.q}")


def h1_module(model: ExtensionModel, n: int, ell: int, k: int) -> PresentedModule:
    """
    Z_l(-n)_Gamma over (Z/l^k)[G]; H^1 is predicted as its dual_vee.

    Cyclic with relations g_i - qbar^(-n d(g_i)) for the generators g_i of G and
    1 - qbar^(-n alpha) for gamma, d the constant-field degree and qbar = q mod l^k.

    Raises:
        PreconditionError: If l = p or n < 2
    """
    _require_ell_not_p(model, ell)
    if n < 2:
        raise PreconditionError(f"H^1 presentation needs n >= 2, got {n}")
    ring = FinGroupRing(model.group, ell, k)
    N = ring.modulus
    G = model.group
    relations = []
    for i in range(G.rank):
        g = G.generator(i)
        relations.append(ring.basis(g) - ring.coerce(pow(model.q, -n * model.constant_degree(g), N)))
    relations.append(ring.one() - ring.coerce(pow(model.q, -n * model.alpha, N)))
    return PresentedModule.cyclic(ring, relations)


def fit_h1(model: ExtensionModel, n: int, ell: int, k: int) -> IdealFG:
    """Fit(H^1) = Fit(dual_vee(Z_l(-n)_Gamma)) at level k."""
    return fit(dual_vee(h1_module(model, n, ell, k)))


def divisor_module(model: ExtensionModel, T0: Iterable[Place], n: int, ell: int, k: int) -> DivisorModuleData:
    """
    The T0 divisor module sum_v (Z/l^k)[G] / <1 - q^(n d_v) sigma_v>.

    Raises:
        PreconditionError: If T0 is empty or a relation is a zero-divisor in Z_l[G]
    """
    T0 = tuple(sorted(set(T0), key=Place.sort_key))
    if not T0:
        raise PreconditionError("divisor module needs a nonempty T0")
    _require_ell_not_p(model, ell)
    G = model.group
    ring = FinGroupRing(G, ell, k)
    relations = []
    for v in T0:
        x = GroupRingElem.one(G) - GroupRingElem.basis(G, model.frobenius(v), coeff=model.q ** (n * v.degree))
        if not is_nonzero_divisor(x):
            raise PreconditionError(f"1 - q^(n d_v) sigma_v is a zero-divisor at {v}")
        relations.append(x)
    zero = GroupRingElem.zero(G)
    rows = [tuple(x if i == j else zero for j in range(len(T0))) for i, x in enumerate(relations)]
    return DivisorModuleData(
        model=model,
        T0=T0,
        n=n,
        ring=ring,
        module=PresentedModule.from_matrix(ring, rows),
        relations=tuple(relations),
    )


def divisor_fit_check(data: DivisorModuleData) -> DivisorFitResult:
    """
    Check Fit(module) = <prod (1 - q^(n d_v) sigma_v)> and Fit(dual_vee(module)) = <delta_{T0}(q^{n-1})>.

    Both sides are computed at a level K where l^K kills the Z_l[G]-module, then
    reduced to level k.
    """
    G = data.model.group
    zero = GroupRingElem.zero(G)
    rows = [tuple(x if i == j else zero for j in range(len(data.relations))) for i, x in enumerate(data.relations)]
    K = max(data.k, exact_precision(G, data.ell, len(rows), rows))
    exact = PresentedModule.from_matrix(data.ring.at_level(K), rows)

    product = GroupRingElem.one(G)
    for x in data.relations:
        product = product * x
    result = DivisorFitResult(
        data=data,
        fit_module=base_change_ideal(fit(exact), data.k),
        expected_module=IdealFG.principal(data.ring, product),
        fit_dual=base_change_ideal(fit(dual_vee(exact)), data.k),
        expected_dual=IdealFG.principal(data.ring, delta_t(data.model, data.T0, data.n)),
    )
    if not result.holds:
        logger.error(
            f"divisor check failed on {data.model} T0={[str(v) for v in data.T0]} n={data.n}: "
            f"module={result.module_ok} dual={result.dual_ok}"
        )
    return result


def _adjugate_element(x: GroupRingElem) -> tuple[GroupRingElem, int]:
    """(x*, D) with x * x* = D, D the determinant of multiplication by x."""
    matrix = sympy.Matrix(multiplication_matrix(x))
    D = int(matrix.det())
    column = matrix.adjugate()[:, 0]
    return GroupRingElem(x.group, tuple(int(c) for c in column)), D


def _witness(
    model: ExtensionModel,
    S0: tuple[Place, ...],
    T0: tuple[Place, ...],
    n: int,
    ell: int,
    k: int,
    dmax: int | None,
) -> WitnessComputation:
    value = theta_special(theta(LDataRequest.build(model, S0, T0, dmax)), n)
    delta = delta_t(model, T0, n)
    adjugate, D = _adjugate_element(delta)
    if D == 0 or not is_nonzero_divisor(delta):
        raise ConsistencyFailure(f"delta_T0 is a zero-divisor for T0={[str(v) for v in T0]}")
    e = 0
    while D % ell**(e + 1) == 0:
        e += 1
    h1 = fit_h1(model, n, ell, k + e)
    ring = h1.ring
    factor = ring.coerce(value * adjugate)
    numerator = IdealFG(ring, tuple(f * factor for f in h1.generators))
    return WitnessComputation(
        T0=T0,
        theta_value=value,
        delta=delta,
        delta_adjugate=adjugate,
        denominator=D,
        fit_h2=FracIdeal(numerator, D, k),
    )


def _as_fraction_pair(x: GroupRingElem) -> tuple[GroupRingElem, int]:
    denominator = math.lcm(1, *(Fraction(c).denominator for c in x.coeffs))
    return (x * denominator).to_integral(), denominator


def predict_h2(
    model: ExtensionModel,
    S0: Iterable[Place],
    n: int,
    ell: int,
    k: int,
    witnesses: Sequence[Iterable[Place]],
    dmax: int | None = None,
) -> CohomologyPrediction:
    """
    Predict Fit(H^2) = Fit(H^1) * Theta_{S0}(q^{n-1}) from smoothed L-values.

    Args:
        model: Extension
        S0: Places containing infinity and the ramified places
        n: Twist, n >= 2
        ell: Prime different from p
        k: Working level
        witnesses: Nonempty T0 sets disjoint from S0
        dmax: Optional truncation degree for every witness

    Returns:
        CohomologyPrediction: With the prediction at level k in canonical form

    Raises:
        PreconditionError: On invalid inputs
        ConsistencyFailure: If witnesses disagree or the prediction is not integral

    Example:
        For carlitz(q=3, m=t), S0={inf, t}, n=2, l=2, k=3 and witnesses {t+1}, {t+2},
        Theta_{S0}(3) = (5 - 3g)/8 and the prediction is <g - 1, 2>.
    """
    _require_ell_not_p(model, ell)
    if n < 2:
        raise PreconditionError(f"predict_h2 needs n >= 2, got {n}")
    S0 = tuple(sorted(set(S0), key=Place.sort_key))
    witness_sets = [tuple(sorted(set(T0), key=Place.sort_key)) for T0 in witnesses]
    if not witness_sets or any(not T0 for T0 in witness_sets):
        raise PreconditionError("predict_h2 needs at least one nonempty T0 witness")

    computations = [_witness(model, S0, T0, n, ell, k, dmax) for T0 in witness_sets]
    first = computations[0]

    checks = {
        "integrality": all(c.fit_h2.is_integral() for c in computations),
        "witness_independence": all(c.fit_h2 == first.fit_h2 for c in computations[1:]),
    }
    values = [c.theta_value * c.delta_adjugate * Fraction(1, c.denominator) for c in computations]
    checks["theta_agreement"] = all(v == values[0] for v in values[1:])
    checks["unsmoothed_value"] = theta_special(theta(LDataRequest.build(model, S0, (), dmax)), n) == values[0]

    failed = [name for name, ok in checks.items() if not ok]
    if failed:
        logger.error(f"predict_h2 {model} n={n} l={ell}: failed {failed}")
        raise ConsistencyFailure(f"prediction for {model} n={n} l={ell} failed {', '.join(failed)}")

    theta_value, theta_denominator = _as_fraction_pair(values[0])
    prediction = CohomologyPrediction(
        model=model,
        S0=S0,
        n=n,
        ell=ell,
        k=k,
        fit_h1=fit_h1(model, n, ell, k),
        theta_value=theta_value,
        theta_denominator=theta_denominator,
        fit_h2=first.fit_h2,
        witnesses=tuple(computations),
        checks=checks,
    )
    logger.info(f"predict_h2 {model} n={n} l={ell} k={k}: Fit(H^2) = {prediction.fit_h2_ideal()}")
    return prediction


def prediction_report(prediction: CohomologyPrediction) -> PredictionReport:
    return PredictionReport(
        model=prediction.model.to_json(),
        S0=[v.to_json() for v in prediction.S0],
        n=prediction.n,
        ell=prediction.ell,
        k=prediction.k,
        fit_h1=IdealReport.from_ideal(prediction.fit_h1),
        theta=ElementReport.from_element(prediction.theta_value, prediction.theta_denominator),
        fit_h2=IdealReport.from_ideal(prediction.fit_h2_ideal()),
        witnesses=[
            WitnessReport(
                T0=[v.to_json() for v in w.T0],
                theta=ElementReport.from_element(w.theta_value),
                delta=ElementReport.from_element(w.delta),
                denominator=w.denominator,
            )
            for w in prediction.witnesses
        ],
        checks=prediction.checks,
    )


def cs_k_theory_restate(predictions: Sequence[CohomologyPrediction], unit_check: bool) -> CSRestatement:
    """
    Restate predictions for one model and n as Fit(K_{2n-1}) * Theta(q^{n-1}) = Fit(K_{2n-2}).

    Args:
        predictions: Predictions sharing model and n (one per l != p)
        unit_check: Result of the p-adic unit check for the same n

    Returns:
        CSRestatement: One entry per l plus the p entry
    """
    if not predictions:
        raise PreconditionError("cs_k_theory_restate needs at least one prediction")
    model, n = predictions[0].model, predictions[0].n
    if any(p.model != model or p.n != n for p in predictions):
        raise PreconditionError("predictions to restate must share model and n")

    entries = [
        KTheoryEntry(
            prime=p.ell,
            role="l",
            fit_odd=IdealReport.from_ideal(p.fit_h1),
            fit_even=IdealReport.from_ideal(p.fit_h2_ideal()),
            status="unit" if p.fit_h2_ideal().is_unit() else "predicted",
        )
        for p in sorted(predictions, key=lambda p: p.ell)
    ]
    entries.append(
        KTheoryEntry(
            prime=model.characteristic,
            role="p",
            status="unit: both sides unit ideal, Theta(q^{n-1}) a p-adic unit" if unit_check else "unit check failed",
        )
    )
    return CSRestatement(
        model=model.to_json(),
        n=n,
        statement=f"Fit(K_{2 * n - 1}) * Theta(q^{n - 1}) = Fit(K_{2 * n - 2})",
        entries=entries,
    )


def _predict_point(args: tuple) -> CohomologyPrediction:
    return predict_h2(*args)


class PredictionService:
    """Runs predict_h2 over an (n, l) grid."""

    @staticmethod
    def run_grid(
        model: ExtensionModel,
        S0: Sequence[Place],
        ns: Sequence[int],
        ells: Sequence[int],
        k: int,
        witnesses: Sequence[Sequence[Place]],
        dmax: int | None = None,
        workers: int | None = None,
    ) -> list[CohomologyPrediction]:
        """
        Predictions for every n in ns and every l in ells other than p.

        Grid points run on a process pool when workers > 1; results are sorted by
        (n, l) whatever order they finish in.

        Raises:
            PreconditionError: If fewer than two witnesses are given
        """
        if len(witnesses) < 2:
            raise PreconditionError(f"cs-report needs at least two T0 witnesses, got {len(witnesses)}")
        workers = workers or settings.workers
        points = [
            (model, tuple(S0), n, ell, k, tuple(tuple(T0) for T0 in witnesses), dmax)
            for n in sorted(ns)
            for ell in sorted(ells)
            if ell != model.characteristic
        ]
        logger.info(f"prediction grid on {model}: {len(points)} points, workers={workers}")
        if workers > 1 and len(points) > 1:
            with ProcessPoolExecutor(max_workers=workers) as pool:
                results = list(pool.map(_predict_point, points))
        else:
            results = [_predict_point(point) for point in points]
        return sorted(results, key=lambda p: (p.n, p.ell))
