"""
Exception types raised by the solver library.

The command-line layer catches these, logs them and maps them to exit codes.
"""


class EtdmsError(Exception):
    """Base class for all solver errors."""


class GridMismatchError(EtdmsError, ValueError):
    """Fields or arrays do not live on the same grid."""


class MeanNotZeroError(EtdmsError, ValueError):
    """A negative Sobolev power was requested on a field with nonzero mean."""


class HistoryError(EtdmsError, RuntimeError):
    """The multistep history is incomplete for the requested operation."""


class BlowUpError(EtdmsError, RuntimeError):
    """The numerical state became non-finite."""

    def __init__(self, message, t=None, step=None):
        super().__init__(message)
        self.t = t
        self.step = step


class ScheduleError(EtdmsError, ValueError):
    """A time-step schedule has gaps, overlaps or non-integral segments."""


class ConfigError(EtdmsError, ValueError):
    """A configuration file or flag could not be parsed."""

    def __init__(self, message, line_number=None):
        if line_number is not None:
            message = f"line {line_number}: {message}"
        super().__init__(message)
        self.line_number = line_number


class SnapshotFormatError(EtdmsError, ValueError):
    """An ETDS snapshot file has the wrong magic, version or size."""


class IdenticalStatesError(EtdmsError, ValueError):
    """A Lipschitz ratio was requested for two identical states."""
