"""`verify`: run the L-function property suite."""

import logging

from equitheta.commands.common import resolve_model, resolve_s0, resolve_t0, run_command, write_report
from equitheta.exceptions import PropertyFailure
from equitheta.schemas.config import RunConfig
from equitheta.schemas.reports import VerifyReport
from equitheta.services.verification import VerificationService

logger = logging.getLogger(__name__)


def render_text(report: VerifyReport) -> str:
    lines = [f"verify {report.model}: {'PASS' if report.passed else 'FAIL'}"]
    for check in report.checks:
        lines.append(f"  [{'ok' if check.passed else 'FAIL'}] {check.name}")
    return "\n".join(lines) + "\n"


def cmd_verify(config: RunConfig) -> int:
    """
    Run every L-function check on the configured model.

    Returns:
        int: 0 iff all checks pass, 3 if any fails, 1/2 on invalid input or non-stabilization
    """

    def body() -> int:
        model = resolve_model(config)
        report = VerificationService.run_suite(
            model,
            resolve_s0(config, model),
            resolve_t0(config, model),
            config.n,
            config.kmax,
            dmax=config.dmax,
            guard=config.guard,
            config=config.report_dict(),
        )
        write_report(report, config, render_text)
        if not report.passed:
            failed = ", ".join(c.name for c in report.checks if not c.passed)
            raise PropertyFailure(f"failed checks: {failed}", check=failed)
        return 0

    return run_command("verify", body)
