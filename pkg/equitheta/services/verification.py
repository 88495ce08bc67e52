"""L-function property suite behind the `verify` command."""

import logging
from typing import Callable, Sequence

from equitheta.exceptions import EnumerationCapExceeded, EquithetaError, PropertyFailure
from equitheta.models.character import all_characters
from equitheta.models.extension import ExtensionModel
from equitheta.models.group_ring import GroupRingElem
from equitheta.models.polynomial import Place
from equitheta.models.theta import LDataRequest, ThetaPoly
from equitheta.schemas.reports import CheckResult, VerifyReport
from equitheta.services.ffq import iter_places, places_up_to
from equitheta.services.lfun import (
    character_compatibility_check,
    delta_t,
    euler_factor_check,
    frobenius_multiplicativity_check,
    t0_independence_check,
    theta,
    theta_infinite,
    theta_special,
    twist_project,
    unit_mod_p_report,
    weil_bound_holds,
    weil_check,
)

logger = logging.getLogger(__name__)


def default_s0(model: ExtensionModel) -> tuple[Place, ...]:
    """Infinity together with the ramified places."""
    return tuple(sorted(model.ramified | {Place.infinity(model.q)}, key=Place.sort_key))


def find_witnesses(model: ExtensionModel, excluded: Sequence[Place], count: int) -> list[tuple[Place, ...]]:
    """
    The first `count` unramified finite places outside `excluded`, as one-place T0 sets.

    Places are searched by increasing degree; the enumeration cap bounds the search.

    Raises:
        PropertyFailure: If fewer than `count` places exist below the enumeration cap
    """
    skip = set(excluded) | set(model.ramified)
    found: list[tuple[Place, ...]] = []
    if count <= 0:
        return found
    try:
        for v in iter_places(model.q):
            if v in skip:
                continue
            found.append((v,))
            if len(found) == count:
                return found
    except EnumerationCapExceeded as e:
        raise PropertyFailure(
            f"only {len(found)} of {count} witness places found on {model}: {e}", check="witness"
        ) from e
    return found


def _run(name: str, check: Callable[[], bool | tuple[bool, dict | str | None]]) -> CheckResult:
    try:
        result = check()
    except PropertyFailure as e:
        logger.error(f"{name}: {e}")
        return CheckResult(name=name, passed=False, detail=str(e))
    if isinstance(result, tuple):
        passed, detail = result
    else:
        passed, detail = result, None
    if not passed:
        logger.error(f"check failed: {name}")
    return CheckResult(name=name, passed=passed, detail=detail)


def _fiber_product(theta_poly: ThetaPoly) -> bool:
    theta_infinite(theta_poly)
    return True


def _integral_form(theta_poly: ThetaPoly) -> bool:
    poly = theta_poly.require_poly()
    return poly.coefficient(0) == GroupRingElem.one(poly.group) and all(c.is_integral() for c in poly.coeffs)


class VerificationService:
    """Runs the L-function property suite for one model."""

    @staticmethod
    def run_suite(
        model: ExtensionModel,
        S0: Sequence[Place],
        witnesses: Sequence[Sequence[Place]],
        ns: Sequence[int],
        kmax: int,
        dmax: int | None = None,
        guard: int | None = None,
        config: dict | None = None,
    ) -> VerifyReport:
        """
        Run every L-function check and collect the results.

        Args:
            model: Extension model (possibly with corrupted Frobenius)
            S0: Places with infinity and the ramified places
            witnesses: T0 sets; missing ones are searched by increasing degree
            ns: Special-value indices (each >= 2)
            kmax: Highest p-adic level of the unit check
            dmax: Truncation degree (default bound when None)
            guard: Stabilization guard (settings default when None)
            config: Run configuration embedded in the report

        Returns:
            VerifyReport: Per-check results; `passed` iff every check passed

        Raises:
            StabilizationFailure: If a Theta computation does not stabilize
        """
        S0 = tuple(S0)
        witness_sets = [tuple(T0) for T0 in witnesses if T0]
        if len(witness_sets) < 2:
            taken = S0 + tuple(v for T0 in witness_sets for v in T0)
            witness_sets += find_witnesses(model, taken, 2 - len(witness_sets))
        T0a, T0b = witness_sets[0], witness_sets[1]
        logger.info(f"verify {model}: S0={[str(v) for v in S0]} T0={[str(v) for v in T0a]} n={list(ns)}")

        theta_a = theta(LDataRequest.build(model, S0, T0a, dmax, guard))
        results = [
            _run("integrality", lambda: _integral_form(theta_a)),
            _run("character_compatibility", lambda: character_compatibility_check(theta_a)),
            _run("fiber_product", lambda: _fiber_product(theta_a)),
            _run("frobenius_multiplicativity", lambda: frobenius_multiplicativity_check(model)),
        ]

        excluded = set(S0) | set(T0a)
        for v in places_up_to(model.q, 2):
            if v.is_infinite or v in excluded:
                continue
            results.append(_run(f"euler_factor[{v}]", lambda v=v: euler_factor_check(model, S0, v, T0a, dmax)))

        for chi in all_characters(model.group):
            if chi.is_trivial:
                continue

            def weil(chi=chi) -> tuple[bool, dict]:
                moduli = weil_check(model, S0, chi, dmax)
                return weil_bound_holds(moduli, model.q), {"moduli": [round(x, 9) for x in moduli]}

            results.append(_run(f"weil[{chi.label()}]", weil))

        plain: list[ThetaPoly] = []

        def lvalues(n: int) -> tuple[bool, dict | str]:
            special = theta_special(theta_a, n)
            projected = twist_project(theta_a, n) == special
            try:
                if not plain:
                    plain.append(theta(LDataRequest.build(model, S0, (), dmax, guard)))
                unsmoothed = delta_t(model, T0a, n) * theta_special(plain[0], n) == special
            except EquithetaError as e:
                return False, f"unsmoothed Theta: {e}"
            return projected and unsmoothed, {"twist_projection": projected, "unsmoothed": unsmoothed}

        for n in ns:
            results.append(_run(f"lvalues[n={n}]", lambda n=n: lvalues(n)))

            def unit(n=n) -> tuple[bool, dict]:
                report = unit_mod_p_report(theta_a, n, kmax)
                return all(report.values()), report

            results.append(_run(f"unit_mod_p[n={n}]", unit))
            results.append(
                _run(
                    f"t0_independence[n={n}]",
                    lambda n=n: t0_independence_check(model, S0, T0a, T0b, n, dmax),
                )
            )

        passed = all(r.passed for r in results)
        logger.info(f"verify {model}: {sum(r.passed for r in results)}/{len(results)} checks passed")
        return VerifyReport(config=config or {}, model=str(model), checks=results, passed=passed)
