"""
Least-squares fits of coarsening scaling laws.
"""

from dataclasses import dataclass, asdict
from typing import Any, Dict, Tuple

import numpy as np

DEFAULT_WINDOW = (1.0, 400.0)
MIN_SAMPLES = 10

SEMILOG = "semilog"
LOGLOG = "loglog"


@dataclass(frozen=True)
class FitResult:
    """
    Fitted law: y = a ln(t) + b (semilog) or y = a t^b (loglog).

    residual is the root-mean-square misfit in the fitted coordinates.
    """

    kind: str
    a: float
    b: float
    window: Tuple[float, float]
    residual: float
    samples: int

    def to_dict(self) -> Dict[str, Any]:
        data = asdict(self)
        data["window"] = list(self.window)
        return data

    def describe(self):
        if self.kind == SEMILOG:
            law = f"{self.a:.6g} ln(t) + {self.b:.6g}"
        else:
            law = f"{self.a:.6g} t^{self.b:.6g}"
        return f"{law}  on [{self.window[0]:g}, {self.window[1]:g}], {self.samples} samples, rms {self.residual:.3e}"


def _select(t, y, window):
    t0, t1 = window
    if not t0 < t1:
        raise ValueError(f"Fit window must satisfy t0 < t1, got {window}")
    if t0 <= 0:
        raise ValueError(f"Fit window must lie in t > 0, got {window}")
    t = np.asarray(t, dtype=np.float64)
    y = np.asarray(y, dtype=np.float64)
    if t.shape != y.shape:
        raise ValueError(f"Series lengths differ: {t.shape} vs {y.shape}")
    inside = (t >= t0) & (t <= t1)
    if np.count_nonzero(inside) < MIN_SAMPLES:
        raise ValueError(
            f"Fit window {window} holds {np.count_nonzero(inside)} samples, need at least {MIN_SAMPLES}"
        )
    return t[inside], y[inside]


def fit_semilog(t, y, window=DEFAULT_WINDOW):
    """
    Fit y = a ln(t) + b by ordinary least squares.

    Args:
        t: Sample times
        y: Sample values
        window: (t0, t1) range of times used

    Returns:
        FitResult: a, b and the rms residual
    """
    t, y = _select(t, y, window)
    x = np.log(t)
    a, b = np.polyfit(x, y, 1)
    residual = float(np.sqrt(np.mean((np.polyval([a, b], x) - y) ** 2)))
    return FitResult(SEMILOG, float(a), float(b), tuple(window), residual, len(t))


def fit_loglog(t, y, window=DEFAULT_WINDOW):
    """
    Fit y = a t^b by least squares on (ln t, ln y).

    Args:
        t: Sample times
        y: Positive sample values
        window: (t0, t1) range of times used

    Returns:
        FitResult: a, b and the rms residual in ln y
    """
    t, y = _select(t, y, window)
    if np.any(y <= 0):
        raise ValueError("Log-log fit needs positive values")
    x = np.log(t)
    log_y = np.log(y)
    b, log_a = np.polyfit(x, log_y, 1)
    residual = float(np.sqrt(np.mean((np.polyval([b, log_a], x) - log_y) ** 2)))
    return FitResult(LOGLOG, float(np.exp(log_a)), float(b), tuple(window), residual, len(t))
