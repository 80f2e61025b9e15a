"""
Modified energy monitor.

The stability estimate of the stabilized scheme is stated for

    E~(u^n) = E(u^n)
            + C_L C3 sum_{j=1}^{k-1} Cbar_j ||u'||^2_{L^2(I_{n-j}; L^2)}
            + C_L C4 sum_{j=1}^{k-1} Cbar_j tau^k ||u'||^2_{L^2(I_{n-j}; V^p)},

where I_{n-j} is the j-th most recent step interval. Inside a past interval the
discrete trajectory is known in closed form per mode, so u' is reconstructed
at Gauss-Legendre nodes and the time integrals are evaluated by quadrature.
With D = 1 + A tau^k l^p the trajectory is

    u(theta) = exp(-K theta) u^n + D^{-1} sum_i sum_j xi_ij phi_j(theta) N^{n-i},
    D u'(theta) = -nu l u(theta) + sum_i l_i(theta) N^{n-i}.
"""

import numpy as np
from scipy.special import roots_legendre

from etdms.errors import HistoryError
from etdms.integrator.phi import phi_values
from etdms.spectral.operators import sobolev_norm_spectrum

DEFAULT_QUAD_POINTS = 6


def interval_derivative_norms(state, interval, quad_points=DEFAULT_QUAD_POINTS):
    """
    Squared time-L^2 norms of du/dt over one completed step.

    Args:
        state: StepperState the interval was recorded by
        interval: IntervalRecord (u at the interval start, nonlinear history, tau)
        quad_points: Number of Gauss-Legendre nodes

    Returns:
        tuple: (||u'||^2 in L^2(I; L^2), ||u'||^2 in L^2(I; V^p))
    """
    grid = state.grid
    tau = interval.tau
    K = state.K
    xi = state.table.xi(tau)

    nodes, weights = roots_legendre(quad_points)
    norm_h = 0.0
    norm_v = 0.0
    for node, weight in zip(nodes, weights):
        theta = 0.5 * tau * (node + 1.0)
        phis = phi_values(K, theta, state.k, state.cutoff)
        extrapolation = state.table.evaluate(theta / tau)

        u_theta = np.exp(-K * theta) * interval.u_start
        forcing = np.zeros_like(interval.u_start)
        for i, n_i in enumerate(interval.nonlinear):
            u_theta = u_theta + np.tensordot(xi[i], phis, axes=(0, 0)) * n_i / state.damping
            forcing = forcing + extrapolation[i] * n_i
        du = (forcing - state.model.nu * state.linear_symbol * u_theta) / state.damping

        w = 0.5 * tau * weight
        norm_h += w * sobolev_norm_spectrum(grid, du, 0.0) ** 2
        norm_v += w * sobolev_norm_spectrum(grid, du, state.p) ** 2
    return norm_h, norm_v


def modified_energy(state, quad_points=DEFAULT_QUAD_POINTS):
    """
    Evaluate the modified energy at the state's current time.

    Args:
        state: StepperState that has completed at least k-1 multistep steps
            since its last bootstrap
        quad_points: Gauss-Legendre nodes per interval

    Returns:
        float: E~(u^n)
    """
    k = state.k
    if len(state.intervals) < k - 1:
        raise HistoryError(
            f"Modified energy needs {k - 1} completed multistep intervals, "
            f"{len(state.intervals)} retained"
        )

    params = state.params
    total = state.model.energy(state.u_current)
    for j in range(1, k):
        norm_h, norm_v = interval_derivative_norms(state, state.intervals[j - 1], quad_points)
        tau = state.intervals[j - 1].tau
        total += params.C_L * params.Cbar[j] * (params.C3 * norm_h + params.C4 * tau ** k * norm_v)
    return total
