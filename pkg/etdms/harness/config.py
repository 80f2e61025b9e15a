"""
Run configuration: `key = value` files, flag overrides, per-command defaults
and the run_meta record written next to every result.
"""

import logging
import math
import os
from dataclasses import asdict, dataclass, fields, replace
from typing import Any, Dict, List, Optional, Tuple, Union

from etdms import __version__
from etdms.errors import ConfigError
from etdms.integrator.schedule import VARIABLE_STEP_SCHEDULE, truncate_schedule, uniform_schedule, validate_schedule
from etdms.integrator.stepper import AUTO, FORMULA
from etdms.models.base import EPS_LINEAR, EPS_SQUARED

RUN_META = "run_meta"
VARIABLE_STEP_PRESET = "variable"

CONVERGENCE_TAUS = [2.5e-3, 1.25e-3, 6.25e-4, 3.125e-4, 1.5625e-4]
FULL_HORIZON_T = 30000.0
FULL_HORIZON_SNAPSHOTS = [1.0, 5000.0, 10000.0, 15000.0, 20000.0, 30000.0]

COMMAND_DEFAULTS: Dict[str, Dict[str, Any]] = {
    "convergence": {
        "eps": 0.01,
        "N": 128,
        "L": 2.0 * math.pi,
        "T": 1.0,
        "eps_convention": EPS_LINEAR,
        "taus": CONVERGENCE_TAUS,
        "A_list": [1.0, 5.0, 10.0, FORMULA],
        "p_list": [2.0],
    },
    "coarsen": {
        "eps": 0.005,
        "N": 128,
        "eps_convention": EPS_LINEAR,
        "L": 12.8,
        "T": 50.0,
        "tau": 1e-3,
        "series_every": 100,
        "A": FORMULA,
    },
    "constants": {},
    "compare": {},
}

# Filled after the command defaults
BASE_DEFAULTS: Dict[str, Any] = {
    "eps_convention": EPS_SQUARED,
    "A": AUTO,
    "series_every": 1,
}


def parse_bool(text):
    lowered = text.strip().lower()
    if lowered in ("1", "true", "yes", "on"):
        return True
    if lowered in ("0", "false", "no", "off"):
        return False
    raise ValueError(f"not a boolean: {text!r}")


def parse_coefficient(text):
    """'auto', 'formula' or a nonnegative number."""
    if isinstance(text, (int, float)):
        return float(text)
    lowered = text.strip().lower()
    if lowered in (AUTO, FORMULA):
        return lowered
    value = float(lowered)
    if value < 0:
        raise ValueError(f"must be nonnegative, got {value}")
    return value


def _parse_list(item_parser):
    def parse(text):
        if isinstance(text, (list, tuple)):
            return [item_parser(item) for item in text]
        items = [item for item in text.replace(",", " ").split() if item]
        if not items:
            raise ValueError("empty list")
        return [item_parser(item) for item in items]
    return parse


def _parse_window(text):
    values = _parse_list(float)(text)
    if len(values) != 2:
        raise ValueError(f"window needs two numbers, got {len(values)}")
    return (values[0], values[1])


def _parse_optional_str(text):
    text = text.strip()
    return None if text.lower() in ("", "none") else text


KEY_PARSERS = {
    "model": str,
    "eps": float,
    "eps_convention": str,
    "N": int,
    "L": float,
    "dealias": parse_bool,
    "order": int,
    "tau": float,
    "schedule": _parse_optional_str,
    "T": float,
    "A": parse_coefficient,
    "p": parse_coefficient,
    "seed": int,
    "out": str,
    "series_every": int,
    "snapshot_every": int,
    "snapshot_times": _parse_list(float),
    "monitor_every": int,
    "quad_points": int,
    "full_horizon": parse_bool,
    "taus": _parse_list(float),
    "A_list": _parse_list(parse_coefficient),
    "p_list": _parse_list(parse_coefficient),
    "fit_window": _parse_window,
    "workers": int,
    "progress": parse_bool,
    "initial": str,
    "init": _parse_optional_str,
    "code_version": str,
}


@dataclass
class RunConfig:
    """Fully resolvable description of one experiment."""

    model: str = "nss"
    eps: Optional[float] = None
    eps_convention: Optional[str] = None
    N: Optional[int] = None
    L: Optional[float] = None
    dealias: bool = False
    order: int = 4
    tau: Optional[float] = None
    schedule: Optional[str] = None
    T: Optional[float] = None
    A: Optional[Union[str, float]] = None
    p: Union[str, float] = AUTO
    seed: int = 0
    out: str = "results"
    series_every: Optional[int] = None
    snapshot_every: Optional[int] = None
    snapshot_times: Optional[List[float]] = None
    monitor_every: int = 0
    quad_points: int = 6
    full_horizon: bool = False
    taus: Optional[List[float]] = None
    A_list: Optional[List[Union[str, float]]] = None
    p_list: Optional[List[Union[str, float]]] = None
    fit_window: Tuple[float, float] = (1.0, 400.0)
    workers: int = 1
    progress: bool = True
    initial: str = "uniform"
    init: Optional[str] = None
    code_version: Optional[str] = None

    def to_dict(self) -> Dict[str, Any]:
        data = asdict(self)
        data["fit_window"] = list(self.fit_window)
        return data

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> "RunConfig":
        known = {f.name for f in fields(cls)}
        unknown = sorted(set(data) - known)
        if unknown:
            raise ConfigError(f"Unknown configuration keys: {', '.join(unknown)}")
        values = dict(data)
        if "fit_window" in values and values["fit_window"] is not None:
            values["fit_window"] = tuple(values["fit_window"])
        return cls(**values)

    def resolve(self, command):
        """
        Fill unset fields with the defaults of a command.

        Args:
            command: "constants", "convergence", "coarsen" or "compare"

        Returns:
            RunConfig: New config with defaults applied
        """
        if command not in COMMAND_DEFAULTS:
            raise ValueError(f"Unsupported command: {command}")
        updates = {}
        for key, value in COMMAND_DEFAULTS[command].items():
            if getattr(self, key) is None:
                updates[key] = list(value) if isinstance(value, list) else value
        for key, value in BASE_DEFAULTS.items():
            if getattr(self, key) is None and key not in updates:
                updates[key] = value
        if command == "coarsen" and self.full_horizon:
            updates["T"] = FULL_HORIZON_T
            if self.snapshot_times is None:
                updates["snapshot_times"] = list(FULL_HORIZON_SNAPSHOTS)
        updates["code_version"] = __version__
        return replace(self, **updates)

    def validate(self, command):
        """
        Check the invariants of a resolved config.

        Raises:
            ConfigError: On the first violated invariant
        """
        if command in ("convergence", "coarsen"):
            if self.T is None or not self.T > 0:
                raise ConfigError(f"T must be positive, got {self.T}")
            if self.N is None or self.L is None or self.eps is None:
                raise ConfigError("N, L and eps must be set")
        if self.series_every < 1:
            raise ConfigError(f"series_every must be >= 1, got {self.series_every}")
        if self.snapshot_every is not None and self.snapshot_every < 1:
            raise ConfigError(f"snapshot_every must be >= 1, got {self.snapshot_every}")
        if self.monitor_every < 0:
            raise ConfigError(f"monitor_every must be >= 0 (0 disables), got {self.monitor_every}")
        if self.quad_points < 1:
            raise ConfigError(f"quad_points must be >= 1, got {self.quad_points}")
        if self.workers < 1:
            raise ConfigError(f"workers must be >= 1, got {self.workers}")
        if self.initial not in ("uniform", "smooth"):
            raise ConfigError(f"Unsupported initial data: {self.initial}")
        if command == "coarsen" and self.tau is None and self.schedule is None:
            raise ConfigError("coarsen needs tau or a schedule")
        if command == "convergence" and (not self.taus or any(not t > 0 for t in self.taus)):
            raise ConfigError(f"taus must be a nonempty list of positive steps, got {self.taus}")


def parse_config_text(text):
    """
    Parse `key = value` lines; `#` starts a comment.

    Returns:
        dict: Typed values keyed by configuration key
    """
    values = {}
    for line_number, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigError(f"expected 'key = value', got {raw.strip()!r}", line_number)
        key, _, value = (part.strip() for part in line.partition("="))
        if key not in KEY_PARSERS:
            raise ConfigError(f"unknown key {key!r}", line_number)
        try:
            values[key] = KEY_PARSERS[key](value)
        except ValueError as e:
            raise ConfigError(f"bad value for {key}: {e}", line_number) from e
    return values


def parse_config_file(path):
    with open(path) as handle:
        values = parse_config_text(handle.read())
    logging.info(f"Loaded {len(values)} configuration keys from {path}")
    return values


def build_config(file_values=None, overrides=None):
    """
    Merge file values and flag overrides (flags win) into a RunConfig.

    Args:
        file_values: Dict from parse_config_file
        overrides: Dict of flags that were given explicitly

    Returns:
        RunConfig: Unresolved configuration
    """
    merged = dict(file_values or {})
    merged.update({key: value for key, value in (overrides or {}).items() if value is not None})
    return RunConfig.from_dict(merged)


def format_config_value(value):
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, float):
        return repr(value)
    if isinstance(value, (list, tuple)):
        return ", ".join(format_config_value(item) for item in value)
    return str(value)


def write_run_meta(out_dir, config, command, extra=None):
    """
    Write the resolved configuration in `key = value` form.

    The file can be passed back with --config; extra values are written as
    comments.

    Returns:
        str: Path of the written file
    """
    os.makedirs(out_dir, exist_ok=True)
    path = os.path.join(out_dir, RUN_META)
    lines = ["# etdms run metadata", f"# command = {command}"]
    for key, value in (extra or {}).items():
        lines.append(f"# {key} = {format_config_value(value)}")
    for key, value in config.to_dict().items():
        if value is None:
            continue
        lines.append(f"{key} = {format_config_value(value)}")
    with open(path, "w") as handle:
        handle.write("\n".join(lines) + "\n")
    logging.info(f"Wrote run metadata to {path}")
    return path


def parse_schedule_text(text):
    """
    Parse schedule lines `t_end tau`.

    Returns:
        list: (t_end, tau) tuples
    """
    schedule = []
    for line_number, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.replace(",", " ").split()
        if len(parts) != 2:
            raise ConfigError(f"expected 't_end tau', got {raw.strip()!r}", line_number)
        try:
            schedule.append((float(parts[0]), float(parts[1])))
        except ValueError as e:
            raise ConfigError(f"bad schedule entry: {e}", line_number) from e
    return schedule


def load_schedule(config):
    """
    Schedule of a resolved config, covering (0, T].

    `schedule = variable` selects the variable-step preset; a path is read as a
    schedule file; otherwise a uniform schedule with step tau is used.
    """
    if config.schedule is None:
        return uniform_schedule(config.T, config.tau)
    if config.schedule == VARIABLE_STEP_PRESET:
        schedule = list(VARIABLE_STEP_SCHEDULE)
    else:
        with open(config.schedule) as handle:
            schedule = parse_schedule_text(handle.read())
    validate_schedule(schedule)
    return truncate_schedule(schedule, config.T)
