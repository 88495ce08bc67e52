"""Command-line entry point."""

import argparse
import json
import logging
import sys
from pathlib import Path
from typing import Sequence

from pydantic import ValidationError

from equitheta.commands import cmd_cs_report, cmd_fitlab, cmd_theta, cmd_verify
from equitheta.exceptions import ConfigError
from equitheta.schemas.config import RunConfig

logger = logging.getLogger(__name__)

COMMANDS = {
    "theta": cmd_theta,
    "verify": cmd_verify,
    "fitlab": cmd_fitlab,
    "cs-report": cmd_cs_report,
}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", help="JSON run configuration; flags override its fields")
    common.add_argument("--kind", choices=["carlitz", "constant"], help="model family")
    common.add_argument("--q", type=int, help="field order")
    common.add_argument("--m", help='Carlitz modulus, e.g. "t^2+1"')
    common.add_argument("--r", type=int, help="constant field degree")
    common.add_argument("--s0", help='comma-separated places, e.g. "inf,t"')
    common.add_argument("--t0", action="append", help="comma-separated T0 set; repeat for more witnesses")
    common.add_argument("--n", help='twist indices: "2", "2..4" or "2,3"')
    common.add_argument("--ell", help='primes, e.g. "2" or "2,5"')
    common.add_argument("--k", type=int, help="working precision l^k")
    common.add_argument("--dmax", type=int, help="truncation degree")
    common.add_argument("--guard", type=int, help="stabilization guard window")
    common.add_argument("--seed", type=int, help="harness seed")
    common.add_argument("--instances", type=int, help="instances per fitlab property")
    common.add_argument("--group", help='fitlab group as cyclic orders, e.g. "2" or "2,2"')
    common.add_argument("--kmax", type=int, help="highest p-adic level of the unit check")
    common.add_argument("--workers", type=int, help="process pool size for cs-report")
    common.add_argument("--out", help="report path (stdout when omitted)")
    common.add_argument("--format", choices=["json", "text"], help="report format")
    common.add_argument("--corrupt-frobenius", action="store_true", default=None, help=argparse.SUPPRESS)

    parser = argparse.ArgumentParser(
        prog="equitheta",
        description="Equivariant L-functions of F_q(t) and Fitting-ideal checks over (Z/l^k)[G]",
    )
    sub = parser.add_subparsers(dest="command", required=True)
    sub.add_parser("theta", parents=[common], help="compute Theta_{S0,T0}(u)")
    sub.add_parser("verify", parents=[common], help="run the L-function property suite")
    sub.add_parser("fitlab", parents=[common], help="run the Fitting-ideal property suite")
    sub.add_parser("cs-report", parents=[common], help="predict Fit(H^2) and restate for K-groups")
    return parser


def load_config(args: argparse.Namespace) -> RunConfig:
    """
    Merge the JSON config file (if any) with the flags; flags win.

    Raises:
        ConfigError: If the file cannot be read or the merged config is invalid
    """
    data: dict = {}
    if args.config:
        try:
            data = json.loads(Path(args.config).read_text(encoding="utf-8"))
        except (OSError, json.JSONDecodeError) as e:
            raise ConfigError(f"cannot read config {args.config}: {e}") from e
        if not isinstance(data, dict):
            raise ConfigError(f"config {args.config} must hold a JSON object")

    overrides = {key: value for key, value in vars(args).items() if value is not None and key != "config"}
    if "t0" in overrides:
        overrides["t0"] = [[part for part in text.split(",") if part] for text in overrides["t0"]]
    if "kind" not in overrides and "kind" not in data and "r" in overrides and "m" not in overrides:
        overrides["kind"] = "constant"
    data.update(overrides)

    try:
        return RunConfig.model_validate(data)
    except ValidationError as e:
        for error in e.errors():
            field = ".".join(str(part) for part in error["loc"]) or "config"
            logger.error(f"config field {field}: {error['msg']}")
        raise ConfigError(f"{e.error_count()} invalid field(s)") from e


def main(argv: Sequence[str] | None = None) -> int:
    """Parse arguments, dispatch the subcommand and return its exit code."""
    args = build_parser().parse_args(argv)
    try:
        config = load_config(args)
    except ConfigError as e:
        logger.error(str(e))
        return e.exit_code
    return COMMANDS[config.command](config)


if __name__ == "__main__":
    sys.exit(main())
