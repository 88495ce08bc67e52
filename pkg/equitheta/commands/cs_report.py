"""`cs-report`: predicted Fitting ideals over an (n, l) grid and their K-theoretic restatement."""

import logging

from equitheta.commands.common import resolve_model, resolve_s0, resolve_t0, run_command, write_report
from equitheta.exceptions import ConfigError, PreconditionError, PropertyFailure
from equitheta.models.theta import LDataRequest
from equitheta.schemas.config import RunConfig
from equitheta.schemas.reports import CSReport
from equitheta.services.cohomcheck import PredictionService, cs_k_theory_restate, prediction_report
from equitheta.services.lfun import theta, unit_mod_p_check

logger = logging.getLogger(__name__)


def render_text(report: CSReport) -> str:
    lines = [report.label]
    for p in report.predictions:
        lines.append(f"n={p.n} l={p.ell} k={p.k}: Fit(H^1) = {p.fit_h1.text}, Fit(H^2) = {p.fit_h2.text}")
    for r in report.restatements:
        lines.append(r.statement)
        for entry in r.entries:
            body = f"{entry.fit_odd.text} -> {entry.fit_even.text}" if entry.fit_odd and entry.fit_even else ""
            lines.append(f"  {entry.role}={entry.prime}: {entry.status} {body}".rstrip())
    return "\n".join(lines) + "\n"


def cmd_cs_report(config: RunConfig) -> int:
    """
    Predict Fit(H^2) for every (n, l) and restate the result for K-groups.

    Returns:
        int: 0 on success, 1 with fewer than two witnesses, 3 if the p-adic unit
        check fails, 4 if witnesses disagree
    """

    def body() -> int:
        model = resolve_model(config)
        S0 = resolve_s0(config, model)
        witnesses = resolve_t0(config, model)
        if len(witnesses) < 2:
            raise PreconditionError(f"cs-report needs at least two T0 witnesses, got {len(witnesses)}")
        if all(ell == model.characteristic for ell in config.ell):
            raise ConfigError(f"every l in {config.ell} equals p={model.characteristic}")

        predictions = PredictionService.run_grid(
            model, S0, config.n, config.ell, config.k, witnesses, dmax=config.dmax, workers=config.workers
        )
        smoothed = theta(LDataRequest.build(model, S0, witnesses[0], config.dmax, config.guard))
        restatements = []
        units_ok = True
        for n in config.n:
            unit_ok = unit_mod_p_check(smoothed, n, config.kmax)
            units_ok = units_ok and unit_ok
            restatements.append(cs_k_theory_restate([p for p in predictions if p.n == n], unit_ok))

        report = CSReport(
            config=config.report_dict(),
            predictions=[prediction_report(p) for p in predictions],
            restatements=restatements,
            passed=units_ok,
        )
        write_report(report, config, render_text)
        if not units_ok:
            raise PropertyFailure("Theta(q^(n-1)) is not a p-adic unit", check="unit_mod_p")
        return 0

    return run_command("cs-report", body)
