"""Shared plumbing for subcommands: resolving configs, writing reports, exit codes."""

import json
import logging
import os
import sys
import tempfile
from pathlib import Path
from typing import Callable

from pydantic import BaseModel

from equitheta.exceptions import ConfigError, EquithetaError
from equitheta.models.extension import ExtensionKind, ExtensionModel
from equitheta.models.polynomial import FqPoly, Place
from equitheta.schemas.config import RunConfig
from equitheta.services.ffq import parse_place
from equitheta.services.lfun import build_model
from equitheta.services.verification import default_s0

logger = logging.getLogger(__name__)


def resolve_model(config: RunConfig) -> ExtensionModel:
    """The extension model named by the config (with the Frobenius fault hook applied)."""
    m = None
    if config.kind is ExtensionKind.CARLITZ:
        m = FqPoly.parse(config.q, config.m) if isinstance(config.m, str) else FqPoly.from_json(config.q, config.m)
    model = build_model(config.kind, config.q, m=m, r=config.r)
    if config.corrupt_frobenius:
        logger.warning(f"Frobenius corrupted at degree-2 places of {model}")
        model = model.with_corrupted_frobenius()
    return model


def resolve_s0(config: RunConfig, model: ExtensionModel) -> tuple[Place, ...]:
    if config.s0 is None:
        return default_s0(model)
    return tuple(parse_place(model.q, spec) for spec in config.s0)


def resolve_t0(config: RunConfig, model: ExtensionModel) -> list[tuple[Place, ...]]:
    return [tuple(parse_place(model.q, spec) for spec in T0) for T0 in config.t0]


def render_json(report: BaseModel) -> str:
    return json.dumps(report.model_dump(mode="json"), sort_keys=True, indent=2) + "\n"


def write_report(report: BaseModel, config: RunConfig, render_text: Callable[[BaseModel], str]) -> None:
    """
    Write the report to config.out (or stdout) in the configured format.

    Files are written to a temporary sibling and renamed into place, so a
    failed run never leaves a partial report.
    """
    body = render_json(report) if config.format == "json" else render_text(report)
    if config.out is None:
        sys.stdout.write(body)
        return
    target = Path(config.out)
    target.parent.mkdir(parents=True, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=target.parent, prefix=f".{target.name}.", suffix=".tmp")
    try:
        with os.fdopen(fd, "w", encoding="utf-8") as handle:
            handle.write(body)
        os.replace(tmp, target)
    except BaseException:
        Path(tmp).unlink(missing_ok=True)
        raise
    logger.info(f"Report written to {target}")


def run_command(name: str, body: Callable[[], int]) -> int:
    """
    Run a command body and translate toolkit errors into exit codes.

    Returns:
        int: 0 on success, the error's exit code otherwise
    """
    logger.info(f"Running {name}")
    try:
        return body()
    except ConfigError as e:
        logger.error(f"{name}: invalid configuration: {e}")
        return e.exit_code
    except EquithetaError as e:
        check = getattr(e, "check", None)
        degree = getattr(e, "degree", None)
        extra = f" [check={check}]" if check else f" [degree={degree}]" if degree is not None else ""
        logger.error(f"{name} failed ({type(e).__name__}){extra}: {e}")
        return e.exit_code
