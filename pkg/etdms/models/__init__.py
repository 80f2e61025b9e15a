"""
ETD-MS Gradient Flow Solver - Models Package
"""

from etdms.models.base import EPS_LINEAR, EPS_SQUARED, GradientFlowModel, effective_nu
from etdms.models.nss import (
    NssModel,
    nss_nonlinear,
    nss_energy,
    manufactured_exact,
    manufactured_forcing,
)
from etdms.models.linear import LinearModel, linear_model
from etdms.models.initial_data import smooth_random_field, uniform_random_field

MODEL_NAMES = ("nss", "linear")


def make_model(name, eps, eps_convention=EPS_SQUARED, forcing=False):
    """
    Create a model by name.

    Args:
        name: "nss" or "linear"
        eps: User-facing epsilon
        eps_convention: "squared" or "linear"
        forcing: Manufactured forcing (NSS only)

    Returns:
        GradientFlowModel: The model instance
    """
    if name == "nss":
        return NssModel(eps, eps_convention, forcing)
    if name == "linear":
        return LinearModel(effective_nu(eps, eps_convention), epsilon=eps)
    raise ValueError(f"Unsupported model: {name}")


__all__ = [
    "EPS_LINEAR",
    "EPS_SQUARED",
    "GradientFlowModel",
    "effective_nu",
    "NssModel",
    "nss_nonlinear",
    "nss_energy",
    "manufactured_exact",
    "manufactured_forcing",
    "LinearModel",
    "linear_model",
    "smooth_random_field",
    "uniform_random_field",
    "MODEL_NAMES",
    "make_model",
]
