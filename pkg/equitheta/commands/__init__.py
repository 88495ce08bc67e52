"""Subcommand handlers."""

from equitheta.commands.cs_report import cmd_cs_report
from equitheta.commands.fitlab import cmd_fitlab
from equitheta.commands.theta import cmd_theta
from equitheta.commands.verify import cmd_verify

__all__ = [
    "cmd_cs_report",
    "cmd_fitlab",
    "cmd_theta",
    "cmd_verify",
]
