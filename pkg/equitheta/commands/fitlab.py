"""`fitlab`: seeded Fitting-ideal property suite."""

import logging

from equitheta.commands.common import run_command, write_report
from equitheta.exceptions import ConfigError, PropertyFailure
from equitheta.models.group import cyclic_group
from equitheta.models.module import FinGroupRing
from equitheta.schemas.config import RunConfig
from equitheta.schemas.reports import FitLabReport
from equitheta.services.harness import FitLabService

logger = logging.getLogger(__name__)


def render_text(report: FitLabReport) -> str:
    lines = [f"fitlab over {report.ring}, seed {report.seed}, {report.instances} instances each"]
    for name, summary in sorted(report.properties.items()):
        lines.append(f"  {name:<22} {summary.passed}/{summary.total}")
    for failure in report.failures:
        sides = f"{failure.lhs.text} vs {failure.rhs.text}" if failure.lhs and failure.rhs else failure.detail
        lines.append(f"  FAIL {failure.property} #{failure.instance}: {sides}")
    return "\n".join(lines) + "\n"


def cmd_fitlab(config: RunConfig) -> int:
    """
    Run the property suite over (Z/l^k)[G] with G given by --group and l the first --ell.

    Returns:
        int: 0 if every instance passes, 3 otherwise
    """

    def body() -> int:
        if len(config.ell) != 1:
            raise ConfigError(f"fitlab works over one prime, got {config.ell}")
        ring = FinGroupRing(cyclic_group(*config.group), config.ell[0], config.k)
        report = FitLabService.run(ring, config.seed, config.instances, config=config.report_dict())
        write_report(report, config, render_text)
        if not report.passed:
            raise PropertyFailure(f"{len(report.failures)} failing instances", check="fitlab")
        return 0

    return run_command("fitlab", body)
