"""
ETD-MS Gradient Flow Solver - Diagnostics Package
"""

from etdms.diagnostics.observables import (
    TimeSeriesRecord,
    roughness,
    mean_slope,
    record,
    lipschitz_ratio,
    relative_difference,
)
from etdms.diagnostics.modified_energy import modified_energy, interval_derivative_norms
from etdms.diagnostics.fitting import DEFAULT_WINDOW, FitResult, fit_semilog, fit_loglog
from etdms.diagnostics.series_io import SERIES_HEADER, SeriesWriter, read_series

__all__ = [
    "TimeSeriesRecord",
    "roughness",
    "mean_slope",
    "record",
    "lipschitz_ratio",
    "relative_difference",
    "modified_energy",
    "interval_derivative_norms",
    "DEFAULT_WINDOW",
    "FitResult",
    "fit_semilog",
    "fit_loglog",
    "SERIES_HEADER",
    "SeriesWriter",
    "read_series",
]
