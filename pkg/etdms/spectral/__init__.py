"""
ETD-MS Gradient Flow Solver - Spectral Package
"""

from etdms.spectral.grid import SpectralGrid, make_grid
from etdms.spectral.field import Field, transform, FORWARD, INVERSE
from etdms.spectral.operators import (
    apply_power,
    sobolev_norm,
    gradient,
    divergence,
    laplacian,
    spectral_l2_norm,
    nodal_l2_norm,
)
from etdms.spectral.snapshot import read_snapshot, write_snapshot

__all__ = [
    "SpectralGrid",
    "make_grid",
    "Field",
    "transform",
    "FORWARD",
    "INVERSE",
    "apply_power",
    "sobolev_norm",
    "gradient",
    "divergence",
    "laplacian",
    "spectral_l2_norm",
    "nodal_l2_norm",
    "read_snapshot",
    "write_snapshot",
]
