"""Acceptance sweep over the standard model grid."""

import logging
import sys
import time
from pathlib import Path

# Add parent directory to path for imports
sys.path.append(str(Path(__file__).parent.parent))

from equitheta.config import settings, setup_logging
from equitheta.exceptions import EquithetaError
from equitheta.models.group import cyclic_group
from equitheta.models.module import FinGroupRing
from equitheta.models.polynomial import FqPoly, Place
from equitheta.services.cohomcheck import divisor_fit_check, divisor_module, predict_h2
from equitheta.services.ffq import places_up_to
from equitheta.services.fitting import base_change_ideal
from equitheta.services.harness import FitLabService
from equitheta.services.lfun import carlitz_model, constant_field_model
from equitheta.services.verification import VerificationService, default_s0, find_witnesses

setup_logging()
logger = logging.getLogger(__name__)

# Carlitz moduli per q, as text
CARLITZ_MODULI = {
    2: ["t", "t^2", "t^2+t"],
    3: ["t", "t^2", "t^2+t"],
}

# Constant field degrees per q
CONSTANT_DEGREES = {
    2: [2, 3],
    3: [2],
}

TWISTS = [2, 3, 4, 5]

# Fitting-ideal suite rings as (cyclic orders, l, k)
FITLAB_RINGS = [
    ((2,), 3, 2),
    ((2,), 2, 3),
    ((3,), 2, 2),
    ((2, 2), 3, 1),
    ((4,), 3, 3),
]


def models():
    for q, moduli in CARLITZ_MODULI.items():
        for text in moduli:
            yield carlitz_model(q, FqPoly.parse(q, text))
    for q, degrees in CONSTANT_DEGREES.items():
        for r in degrees:
            yield constant_field_model(q, r)


def witnesses(model, S0: tuple[Place, ...], count: int = 3) -> list[tuple[Place, ...]]:
    """The first `count` unramified finite places outside S0, as one-place T0 sets."""
    return find_witnesses(model, S0, count)


def divisor_witnesses(model, S0: tuple[Place, ...]) -> list[tuple[Place, ...]]:
    """Every unramified finite place of degree <= 2 outside S0, as one-place T0 sets."""
    excluded = set(S0) | set(model.ramified)
    return [(v,) for v in places_up_to(model.q, 2) if not v.is_infinite and v not in excluded]


def lvalue_configurations():
    """Yield (model, S0, [T0a, T0b], n) for every model and twist in the grid."""
    for model in models():
        S0 = default_s0(model)
        T0s = witnesses(model, S0, 2)
        for n in TWISTS:
            yield model, S0, T0s, n


def sweep_lfunctions() -> int:
    failures = 0
    for model in models():
        try:
            S0 = default_s0(model)
            report = VerificationService.run_suite(model, S0, witnesses(model, S0, 2), TWISTS, kmax=4)
        except EquithetaError as e:
            logger.error(f"{model}: {e}")
            failures += 1
            continue
        if not report.passed:
            failed = [c.name for c in report.checks if not c.passed]
            logger.error(f"{model}: failed {failed}")
            failures += 1
        else:
            logger.info(f"{model}: {len(report.checks)} checks passed")
    return failures


def sweep_predictions() -> int:
    failures = 0
    for model in models():
        S0 = default_s0(model)
        for ell in (2, 5):
            if ell == model.characteristic:
                continue
            for n in (2, 3):
                try:
                    for T0 in divisor_witnesses(model, S0):
                        if not divisor_fit_check(divisor_module(model, T0, n, ell, 3)).holds:
                            raise EquithetaError(f"divisor check failed for T0={[str(v) for v in T0]}")
                    T0s = witnesses(model, S0)
                    coarse = predict_h2(model, S0, n, ell, 3, T0s)
                    fine = predict_h2(model, S0, n, ell, 4, T0s)
                    if base_change_ideal(fine.fit_h2_ideal(), 3) != coarse.fit_h2_ideal():
                        raise EquithetaError("prediction changed under k -> k+1")
                except EquithetaError as e:
                    logger.error(f"{model} n={n} l={ell}: {e}")
                    failures += 1
                    continue
                logger.info(f"{model} n={n} l={ell}: Fit(H^2) = {coarse.fit_h2_ideal()}")

    affine = constant_field_model(3, 1)
    S0 = (Place.infinity(3),)
    for ell in (2, 5):
        for n in (2, 3, 4):
            prediction = predict_h2(affine, S0, n, ell, 3, witnesses(affine, S0))
            if not prediction.fit_h2_ideal().is_unit():
                logger.error(f"affine line n={n} l={ell}: prediction is not the unit ideal")
                failures += 1
    return failures


def sweep_fitlab(instances: int) -> int:
    failures = 0
    for orders, ell, k in FITLAB_RINGS:
        ring = FinGroupRing(cyclic_group(*orders), ell, k)
        report = FitLabService.run(ring, seed=0, instances=instances)
        failures += len(report.failures)
    return failures


def run_sweep(instances: int = 50) -> None:
    """Run every sweep and log a summary."""
    logger.info(f"Starting acceptance sweep (workers={settings.workers})")
    totals = {}
    for name, sweep in (
        ("lfunctions", sweep_lfunctions),
        ("predictions", sweep_predictions),
        ("fitlab", lambda: sweep_fitlab(instances)),
    ):
        start = time.perf_counter()
        totals[name] = sweep()
        logger.info(f"{name}: {totals[name]} failures in {time.perf_counter() - start:.1f}s")

    if any(totals.values()):
        logger.error(f"Acceptance sweep failed: {totals}")
        sys.exit(3)
    logger.info("Acceptance sweep passed")


if __name__ == "__main__":
    try:
        run_sweep(int(sys.argv[1]) if len(sys.argv) > 1 else 50)
    except Exception as e:
        logger.error(f"Error running acceptance sweep: {e}", exc_info=True)
        sys.exit(1)
