"""
Differential operators as diagonal Fourier multipliers, and discrete norms.

The linear operator of the flows handled here is the biharmonic, with symbol
|k|^4, so the power L^alpha has symbol |k|^(4 alpha) and the V^alpha norm
||L^(alpha/2) f|| has multiplier |k|^(2 alpha).
"""

import numpy as np

from etdms.errors import GridMismatchError, MeanNotZeroError
from etdms.spectral.field import Field


def _require_mean_zero(f, alpha):
    if alpha < 0 and not f.has_zero_mean():
        raise MeanNotZeroError(
            f"Negative power alpha={alpha} needs a mean-zero field (mean={f.mean:.3e})"
        )


def spectral_l2_norm(grid, spectrum):
    """Discrete L^2 norm read off Fourier coefficients (Parseval)."""
    return grid.L * float(np.sqrt(np.sum(np.abs(spectrum) ** 2)))


def nodal_l2_norm(grid, values):
    """Discrete L^2 norm from nodal values: root-mean-square times L."""
    return grid.L * float(np.sqrt(np.mean(np.square(values))))


def apply_power(f, alpha):
    """
    Apply L^alpha = (Delta^2)^alpha.

    Args:
        f: Field (mean-zero when alpha < 0)
        alpha: Real exponent; fractional values allowed

    Returns:
        Field: Field with spectrum multiplied by |k|^(4 alpha)
    """
    _require_mean_zero(f, alpha)
    if alpha == 0:
        return Field.from_spectrum(f.grid, f.spectrum.copy(), mean_zero=f.mean_zero)
    return Field.from_spectrum(f.grid, f.grid.power_symbol(4.0 * alpha) * f.spectrum, mean_zero=True)


def sobolev_norm(f, alpha):
    """
    Discrete V^alpha norm ||L^(alpha/2) f||.

    Args:
        f: Field (mean-zero when alpha < 0)
        alpha: Real exponent

    Returns:
        float: Nonnegative norm; alpha=0 is the discrete L^2 norm
    """
    _require_mean_zero(f, alpha)
    return spectral_l2_norm(f.grid, f.grid.power_symbol(2.0 * alpha) * f.spectrum)


def sobolev_norm_spectrum(grid, spectrum, alpha):
    """V^alpha norm of a raw spectrum, without the mean check."""
    return spectral_l2_norm(grid, grid.power_symbol(2.0 * alpha) * spectrum)


def gradient(f):
    """
    Spectral gradient.

    Returns:
        tuple: (df/dx, df/dy) as Fields
    """
    grid = f.grid
    fx = Field.from_spectrum(grid, grid.ddx_symbol * f.spectrum, mean_zero=True)
    fy = Field.from_spectrum(grid, grid.ddy_symbol * f.spectrum, mean_zero=True)
    return fx, fy


def divergence(fx, fy):
    """
    Spectral divergence of the vector field (fx, fy).

    Returns:
        Field: d(fx)/dx + d(fy)/dy
    """
    if not fx.grid.matches(fy.grid):
        raise GridMismatchError("Divergence components live on different grids")
    grid = fx.grid
    return Field.from_spectrum(
        grid, grid.ddx_symbol * fx.spectrum + grid.ddy_symbol * fy.spectrum, mean_zero=True
    )


def laplacian(f):
    return Field.from_spectrum(f.grid, f.grid.lap_symbol * f.spectrum, mean_zero=True)
