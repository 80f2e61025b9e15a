"""
Pointwise observables of a surface height field.
"""

from dataclasses import dataclass, asdict
from typing import Any, Dict, Optional

import numpy as np

from etdms.errors import IdenticalStatesError, MeanNotZeroError
from etdms.spectral.operators import gradient, sobolev_norm


@dataclass
class TimeSeriesRecord:
    """One diagnostics row: energy, roughness, slope and optional modified energy."""

    t: float
    E: float
    h: float
    m: float
    E_mod: Optional[float] = None

    def to_dict(self) -> Dict[str, Any]:
        return asdict(self)

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> "TimeSeriesRecord":
        E_mod = data.get("E_mod")
        return cls(
            t=float(data["t"]),
            E=float(data["E"]),
            h=float(data["h"]),
            m=float(data["m"]),
            E_mod=None if E_mod in (None, "") else float(E_mod),
        )


def roughness(u):
    """Average surface roughness sqrt(mean((u - mean u)^2))."""
    values = u.values
    return float(np.sqrt(np.mean((values - values.mean()) ** 2)))


def mean_slope(u):
    """Average slope sqrt(mean(|grad u|^2))."""
    ux, uy = gradient(u)
    return float(np.sqrt(np.mean(ux.values ** 2 + uy.values ** 2)))


def record(model, u, t, E_mod=None):
    """Build the diagnostics row for state u at time t."""
    return TimeSeriesRecord(t=float(t), E=model.energy(u), h=roughness(u), m=mean_slope(u), E_mod=E_mod)


def lipschitz_ratio(model, u, v, t=0.0):
    """
    Probe the Lipschitz estimate of a model's nonlinearity.

    Args:
        model: GradientFlowModel with indices beta, gamma
        u: Mean-zero Field
        v: Mean-zero Field on the same grid

    Returns:
        float: ||N(u) - N(v)||_{V^-beta} / ||u - v||_{V^gamma}
    """
    for name, f in (("u", u), ("v", v)):
        if not f.has_zero_mean():
            raise MeanNotZeroError(f"lipschitz_ratio needs mean-zero states; {name} has mean {f.mean:.3e}")
    denominator = sobolev_norm(u - v, model.gamma)
    if denominator == 0.0:
        raise IdenticalStatesError("lipschitz_ratio is undefined for identical states")
    numerator = sobolev_norm(model.nonlinear(u, t) - model.nonlinear(v, t), -model.beta)
    return numerator / denominator


def relative_difference(u, v):
    """
    Relative discrete L^2 difference ||u - v|| / ||v||.

    Raises:
        IdenticalStatesError: If v is zero
    """
    reference = sobolev_norm(v, 0.0)
    if reference == 0.0:
        raise IdenticalStatesError("Reference field is zero; relative difference is undefined")
    return sobolev_norm(u - v, 0.0) / reference
