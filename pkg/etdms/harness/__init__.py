"""
ETD-MS Gradient Flow Solver - Harness Package
"""

from etdms.harness.config import (
    RunConfig,
    build_config,
    parse_config_text,
    parse_config_file,
    parse_schedule_text,
    load_schedule,
    write_run_meta,
)
from etdms.harness.commands import (
    ConvergenceRow,
    cmd_constants,
    cmd_convergence,
    cmd_coarsen,
    cmd_compare,
    observed_orders,
)
from etdms.harness.sweep import SweepRunner
from etdms.harness.cli import main

__all__ = [
    "RunConfig",
    "build_config",
    "parse_config_text",
    "parse_config_file",
    "parse_schedule_text",
    "load_schedule",
    "write_run_meta",
    "ConvergenceRow",
    "cmd_constants",
    "cmd_convergence",
    "cmd_coarsen",
    "cmd_compare",
    "observed_orders",
    "SweepRunner",
    "main",
]
