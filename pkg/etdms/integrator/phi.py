"""
Exponential-integrator weight functions.

phi_j(z; tau) = int_0^tau exp(-z (tau - s)) s^j ds for z >= 0, evaluated per
Fourier mode. Large arguments use the recurrence

    phi_0 = (1 - exp(-z tau)) / z,    phi_j = (tau^j - j phi_{j-1}) / z,

and small arguments the Taylor series

    phi_j = tau^(j+1) j! sum_n (-z tau)^n / (n + j + 1)!.

The recurrence multiplies the relative error of phi_{j-1} by about
(j+1)/(z tau), so order j switches to it only for z tau >= ((j+1)!)^(1/j).
"""

import math

import numpy as np

DEFAULT_CUTOFF = 1e-2
SERIES_TOL = 1e-18
MAX_SERIES_TERMS = 200


def switch_point(j, cutoff=DEFAULT_CUTOFF):
    """Smallest z*tau at which order j is evaluated by the recurrence."""
    if j == 0:
        return cutoff
    return max(cutoff, math.factorial(j + 1) ** (1.0 / j))


def _series(x, tau, j):
    """Taylor series of phi_j at x = z*tau (array), truncated at SERIES_TOL."""
    term = np.full(x.shape, 1.0 / math.factorial(j + 1))
    total = term.copy()
    for n in range(1, MAX_SERIES_TERMS):
        term = term * (-x) / (n + j + 1)
        total += term
        if np.all(np.abs(term) <= SERIES_TOL * np.abs(total)):
            break
    return tau ** (j + 1) * math.factorial(j) * total


def phi_values(z, tau, k, cutoff=DEFAULT_CUTOFF):
    """
    Evaluate phi_0..phi_{k-1} at each entry of z.

    Args:
        z: Nonnegative scalar or array of decay rates
        tau: Positive interval length
        k: Number of functions
        cutoff: Minimum z*tau for the recurrence branch

    Returns:
        numpy.ndarray: Array of shape (k,) + shape(z), all entries positive
    """
    z = np.asarray(z, dtype=np.float64)
    if np.any(z < 0) or not np.all(np.isfinite(z)):
        raise ValueError("phi_values needs finite nonnegative z")
    if not tau > 0:
        raise ValueError(f"tau must be positive, got {tau}")

    x = z * tau
    out = np.empty((k,) + z.shape)
    safe_z = np.where(z > 0, z, 1.0)

    for j in range(k):
        small = x < switch_point(j, cutoff)
        if j == 0:
            large_value = -np.expm1(-x) / safe_z
        else:
            large_value = (tau ** j - j * out[j - 1]) / safe_z
        value = large_value
        if np.any(small):
            value = np.where(small, _series(np.where(small, x, 0.0), tau, j), large_value)
        out[j] = value
    return out


def etdrk4_coefficients(z, tau, cutoff=DEFAULT_CUTOFF):
    """
    Per-mode coefficients of the fourth-order ETD Runge-Kutta step for u' = -z u + N.

    With E = exp(-z tau) the update is

        u+ = E u + f1 N(u) + 2 f2 (N(a) + N(b)) + f3 N(c),

    where f1 = tau^-2 (-z)^-3 [-4 + z tau + E (4 + 3 z tau + (z tau)^2)] and
    f2, f3 follow the same pattern. They are formed from phi_0..phi_2, which
    carry the small-argument safeguard; f1, f2, f3 -> tau/6 as z -> 0.

    Returns:
        dict: E, E_half, Q (half-step weight), f1, f2, f3
    """
    z = np.asarray(z, dtype=np.float64)
    phis = phi_values(z, tau, 3, cutoff)
    # Standard phi-functions of argument -z*tau.
    p1 = phis[0] / tau
    p2 = phis[1] / tau ** 2
    p3 = phis[2] / (2.0 * tau ** 3)
    half = phi_values(z, 0.5 * tau, 1, cutoff)[0]
    return {
        "E": np.exp(-z * tau),
        "E_half": np.exp(-0.5 * z * tau),
        "Q": half,
        "f1": tau * (p1 - 3.0 * p2 + 4.0 * p3),
        "f2": tau * (p2 - 2.0 * p3),
        "f3": tau * (4.0 * p3 - p2),
    }
