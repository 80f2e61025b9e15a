"""
Thin-film epitaxy model without slope selection (NSS).

    u_t = -nu Delta^2 u - div(grad u / (1 + |grad u|^2)) [+ g],

    E(u) = int -1/2 ln(1 + |grad u|^2) dx + nu/2 ||Delta u||^2.

The manufactured forcing g makes u(t) = exp(-t) cos(2x) cos(2y) an exact
solution on [0, 2 pi]^2.
"""

import logging
import math

import numpy as np

from etdms.models.base import EPS_SQUARED, GradientFlowModel, effective_nu
from etdms.spectral.field import Field, forward_fft
from etdms.spectral.operators import gradient, laplacian, spectral_l2_norm

MANUFACTURED_L = 2.0 * math.pi


def _check_manufactured_domain(grid):
    if abs(grid.L - MANUFACTURED_L) > 1e-12:
        raise ValueError(
            f"The manufactured solution needs L = 2*pi, got L={grid.L!r}"
        )


def manufactured_exact(t, grid):
    """
    Exact solution exp(-t) cos(2x) cos(2y) sampled on the grid.

    Returns:
        Field: Nodal samples
    """
    _check_manufactured_domain(grid)
    values = math.exp(-t) * np.cos(2.0 * grid.X) * np.cos(2.0 * grid.Y)
    return Field.from_values(grid, values, mean_zero=True)


def manufactured_forcing(t, grid, nu):
    """
    Forcing g(t) for which exp(-t) cos(2x) cos(2y) solves the forced NSS equation.

    With D = 1 + 2 e^(-2t) (1 - cos4x cos4y),

        g = (-1 + 64 nu) u - 8 u / D + 16 e^(-2t) u (cos4x + cos4y - 2 cos4x cos4y) / D^2.

    Args:
        t: Time
        grid: SpectralGrid with L = 2*pi
        nu: Coefficient of the biharmonic term

    Returns:
        Field: Nodal samples of g
    """
    _check_manufactured_domain(grid)
    decay2 = math.exp(-2.0 * t)
    c4x = np.cos(4.0 * grid.X)
    c4y = np.cos(4.0 * grid.Y)
    u = math.exp(-t) * np.cos(2.0 * grid.X) * np.cos(2.0 * grid.Y)
    D = 1.0 + 2.0 * decay2 * (1.0 - c4x * c4y)
    g = (-1.0 + 64.0 * nu) * u - 8.0 * u / D + 16.0 * decay2 * u * (c4x + c4y - 2.0 * c4x * c4y) / D ** 2
    return Field.from_values(grid, g)


def slope_flux(u):
    """Nodal components of grad u / (1 + |grad u|^2)."""
    ux, uy = gradient(u)
    wx, wy = ux.values, uy.values
    denom = 1.0 + wx * wx + wy * wy
    return wx / denom, wy / denom


def nss_nonlinear(u, t=0.0, nu=None, forcing=False):
    """
    Pseudo-spectral evaluation of N(u) = -div(grad u / (1 + |grad u|^2)).

    Args:
        u: Field
        t: Time, used by the manufactured forcing
        nu: Biharmonic coefficient, required when forcing is on
        forcing: Add the manufactured forcing g(t)

    Returns:
        Field: Mean-zero nonlinear term
    """
    grid = u.grid
    fx, fy = slope_flux(u)
    spectrum = -(grid.ddx_symbol * forward_fft(fx) + grid.ddy_symbol * forward_fft(fy))
    if forcing:
        if nu is None:
            raise ValueError("The manufactured forcing needs nu")
        spectrum = spectrum + manufactured_forcing(t, grid, nu).spectrum
    if grid.dealias:
        spectrum = spectrum * grid.dealias_mask
    spectrum = grid.hermitian_part(spectrum)
    # Divergence form: the mean of N is exactly zero.
    spectrum[0, 0] = 0.0
    return Field.from_spectrum(grid, spectrum, mean_zero=True)


def nss_energy(u, nu):
    """
    Discrete NSS energy.

    Args:
        u: Field
        nu: Biharmonic coefficient

    Returns:
        float: Trapezoid quadrature of the log term plus nu/2 ||Delta u||^2
    """
    grid = u.grid
    ux, uy = gradient(u)
    log_term = -0.5 * grid.area * float(np.mean(np.log1p(ux.values ** 2 + uy.values ** 2)))
    lap_norm = spectral_l2_norm(grid, laplacian(u).spectrum)
    return log_term + 0.5 * nu * lap_norm ** 2


class NssModel(GradientFlowModel):
    """
    NSS thin-film model.

    The Lipschitz estimate ||N(u) - N(v)||_{V^-1/2} <= ||u - v||_{V^1/2}
    gives beta = gamma = 1/2 and C_L = 1.
    """

    name = "nss"
    beta = 0.5
    gamma = 0.5
    C_L = 1.0

    def __init__(self, eps, eps_convention=EPS_SQUARED, forcing=False):
        """
        Initialize the model.

        Args:
            eps: User-facing epsilon
            eps_convention: "squared" (nu = eps^2) or "linear" (nu = eps)
            forcing: Add the manufactured forcing term
        """
        super().__init__(eps, effective_nu(eps, eps_convention))
        self.eps_convention = eps_convention
        self.forcing = bool(forcing)
        logging.debug(f"NSS model: eps={eps:g} ({eps_convention}) nu={self.nu:g} forcing={self.forcing}")

    def nonlinear(self, u, t=0.0):
        return nss_nonlinear(u, t, nu=self.nu, forcing=self.forcing)

    def energy(self, u):
        return nss_energy(u, self.nu)

    def describe(self):
        info = super().describe()
        info["eps_convention"] = self.eps_convention
        info["forcing"] = self.forcing
        return info
