"""
Common interface of the gradient-flow models

    du/dt = -nu L u + N(u, t),   L = biharmonic,

that the stepper integrates.
"""

from abc import ABC, abstractmethod

EPS_SQUARED = "squared"
EPS_LINEAR = "linear"


def effective_nu(eps, convention=EPS_SQUARED):
    """
    Diffusion coefficient multiplying the biharmonic term.

    Args:
        eps: User-facing epsilon
        convention: "squared" (nu = eps^2) or "linear" (nu = eps)

    Returns:
        float: nu
    """
    if eps < 0:
        raise ValueError(f"eps must be nonnegative, got {eps}")
    if convention == EPS_SQUARED:
        return float(eps) ** 2
    if convention == EPS_LINEAR:
        return float(eps)
    raise ValueError(f"Unsupported eps convention: {convention}")


class GradientFlowModel(ABC):
    """
    A gradient flow with a diagonal linear part and a Lipschitz nonlinearity.

    Subclasses set name, epsilon, nu and the Lipschitz data (beta, gamma, C_L),
    meaning ||N(u) - N(v)||_{V^-beta} <= C_L ||u - v||_{V^gamma}.
    Models hold no mutable state after construction.
    """

    name = "abstract"
    beta = 0.5
    gamma = 0.5
    C_L = 1.0

    def __init__(self, epsilon, nu):
        self.epsilon = float(epsilon)
        self.nu = float(nu)

    def linear_symbol(self, grid):
        """Per-mode symbol of L: |k|^4, zero at the zero mode."""
        return grid.biharm_symbol

    @abstractmethod
    def nonlinear(self, u, t=0.0):
        """
        Evaluate N(u, t).

        Args:
            u: Field
            t: Time (used by forced models)

        Returns:
            Field: Nonlinear term on the same grid
        """

    @abstractmethod
    def energy(self, u):
        """Energy functional E(u)."""

    def describe(self):
        return {
            "model": self.name,
            "eps": self.epsilon,
            "nu": self.nu,
            "beta": self.beta,
            "gamma": self.gamma,
            "C_L": self.C_L,
        }

    def __repr__(self):
        return f"{type(self).__name__}(eps={self.epsilon:g}, nu={self.nu:g})"
