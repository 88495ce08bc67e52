"""`theta`: compute Theta_{S0,T0}(u) for one model."""

import logging

from equitheta.commands.common import resolve_model, resolve_s0, resolve_t0, run_command, write_report
from equitheta.models.theta import LDataRequest
from equitheta.schemas.config import RunConfig
from equitheta.schemas.reports import ThetaReport, coefficient_table
from equitheta.services.lfun import theta

logger = logging.getLogger(__name__)


def render_text(report: ThetaReport) -> str:
    lines = [f"Theta for {report.model}", f"stabilized at degree {report.stabilization_degree}"]
    if report.coefficients is not None:
        lines.append(f"Theta(u) = {report.polynomial}")
        width = max(len(column) for column in report.coefficients.values())
        lines.append("element | " + " ".join(f"u^{d:<4}" for d in range(width)))
        for label, column in sorted(report.coefficients.items()):
            lines.append(f"{label:>7} | " + " ".join(f"{c:<6}" for c in column))
    else:
        for component in report.components or []:
            lines.append(
                f"{component['character']}: ({' '.join(component['numerator'])}) / ({' '.join(component['denominator'])})"
            )
    return "\n".join(lines) + "\n"


def cmd_theta(config: RunConfig) -> int:
    """
    Compute Theta_{S0,T0}(u) and write its coefficient table.

    Args:
        config: Validated run configuration; the first T0 set is used

    Returns:
        int: 0 on success, 1 on invalid input, 2 if the Euler product does not stabilize
    """

    def body() -> int:
        model = resolve_model(config)
        T0 = resolve_t0(config, model)
        request = LDataRequest.build(model, resolve_s0(config, model), T0[0] if T0 else (), config.dmax, config.guard)
        result = theta(request)
        body_json = result.to_json()
        report = ThetaReport(
            config=config.report_dict(),
            model=str(model),
            request=body_json["request"],
            group=list(model.group.orders),
            stabilization_degree=result.stabilization_degree,
            polynomial=str(result.poly) if result.poly is not None else None,
            coefficients=coefficient_table(result.poly) if result.poly is not None else None,
            components=body_json.get("components"),
        )
        write_report(report, config, render_text)
        return 0

    return run_command("theta", body)
