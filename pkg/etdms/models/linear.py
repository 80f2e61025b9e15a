"""
Pure biharmonic decay, du/dt = -nu Delta^2 u, with N identically zero.
"""

import numpy as np

from etdms.models.base import GradientFlowModel
from etdms.spectral.field import Field
from etdms.spectral.operators import laplacian, spectral_l2_norm


class LinearModel(GradientFlowModel):
    name = "linear"

    def __init__(self, nu, epsilon=None):
        if nu < 0:
            raise ValueError(f"nu must be nonnegative, got {nu}")
        super().__init__(nu if epsilon is None else epsilon, nu)

    def nonlinear(self, u, t=0.0):
        return Field.from_spectrum(u.grid, np.zeros(u.grid.shape, dtype=np.complex128), mean_zero=True)

    def energy(self, u):
        return 0.5 * self.nu * spectral_l2_norm(u.grid, laplacian(u).spectrum) ** 2


def linear_model(nu):
    """
    Linear test model.

    Args:
        nu: Nonnegative diffusion coefficient

    Returns:
        LinearModel: Model with N = 0 and energy nu/2 ||Delta u||^2
    """
    return LinearModel(nu)
