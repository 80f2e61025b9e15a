"""
Stabilization constants for the k-th order ETD-MS scheme.

Given the Lipschitz indices (beta, gamma) and constant C_L of the nonlinear
term, this module picks the stabilization exponent p = (beta+gamma)k/2, the
interpolation constants C1..C4 and the coefficient A, and checks the two
sufficient conditions

    1 >= C_L (C3 + C1) Cbar_0,    A >= C_L (C4 + C2) Cbar_0.

A second coefficient, A_table, reproduces the tabulated k=4 value
27 (1 + Cbar_1)^4 / 512 (about 175.2): it is half of the A formula evaluated
with the tabulated interval constants. C_hat_table is the interpolation
constant of that evaluation. For orders without tabulated constants both
equal their exact counterparts.
"""

import logging
import math
from dataclasses import dataclass, asdict
from typing import Any, Dict, Optional

import numpy as np
from scipy.optimize import brentq

from etdms.integrator.lagrange import TABULATED_CSTAR_SQUARED, cbar_constants, cstar_constants, lagrange_table


@dataclass(frozen=True)
class StabilizationParams:
    k: int
    beta: float
    gamma: float
    C_L: float
    p: float
    q: float
    C_hat: float
    C_tilde: float
    C1: float
    C2: float
    C3: float
    C4: float
    Cstar: tuple
    Cbar: tuple
    Cstar_tabulated: Optional[tuple]
    A: float
    A_table: float
    C_hat_table: float
    slack_energy: float
    slack_A: float

    def constraint_slacks(self, A=None):
        """
        Slack of both sufficient conditions.

        Args:
            A: Coefficient to test (default: the sufficient A)

        Returns:
            tuple: (1 - C_L(C3+C1)Cbar_0, A - C_L(C4+C2)Cbar_0)
        """
        A = self.A if A is None else A
        cbar0 = self.Cbar[0]
        return (
            1.0 - self.C_L * (self.C3 + self.C1) * cbar0,
            A - self.C_L * (self.C4 + self.C2) * cbar0,
        )

    def to_dict(self) -> Dict[str, Any]:
        data = asdict(self)
        data["Cstar"] = list(self.Cstar)
        data["Cbar"] = list(self.Cbar)
        if self.Cstar_tabulated is not None:
            data["Cstar_tabulated"] = list(self.Cstar_tabulated)
        return data


def _young_split(c, ratio):
    """(1 - ratio) c^(1/(1-ratio)); zero in the degenerate limit ratio -> 1."""
    if ratio >= 1.0:
        return 0.0
    return (1.0 - ratio) * c ** (1.0 / (1.0 - ratio))


def _interpolation_constants(c_hat, c_tilde, beta, gamma, p):
    """Constants C1..C4 of the interpolation/Young estimate."""
    rb, rg = beta / p, gamma / p
    C1 = 0.5 * _young_split(c_hat, rb)
    C2 = 0.5 * rb * c_hat ** (-p / beta)
    C3 = 0.5 * _young_split(c_tilde, rg)
    C4 = 0.5 * rg * c_tilde ** (-p / gamma)
    return C1, C2, C3, C4


def _solve_c(budget, beta, gamma, p):
    """Common value c = C_hat = C_tilde with equality in the energy constraint."""
    rb, rg = beta / p, gamma / p
    if rb >= 1.0 and rg >= 1.0:
        # The interpolation is trivial: any c works, and c = 1 keeps C2, C4 finite.
        return 1.0
    if abs(rb - rg) < 1e-15:
        return (budget / (2.0 * (1.0 - rb))) ** (1.0 - rb)

    def residual(c):
        return _young_split(c, rb) + _young_split(c, rg) - budget

    upper = 1.0
    while residual(upper) < 0:
        upper *= 2.0
    return brentq(residual, 0.0, upper, xtol=1e-300, rtol=4 * np.finfo(float).eps, maxiter=500)


def _constants_for(cbar0, beta, gamma, p, C_L):
    """c, (C1..C4) and A with equality in both conditions for a given Cbar_0."""
    c = _solve_c(2.0 / (C_L * cbar0), beta, gamma, p)
    constants = _interpolation_constants(c, c, beta, gamma, p)
    A = C_L * (constants[1] + constants[3]) * cbar0
    return c, constants, A


def stabilization_params(k, beta, gamma, C_L):
    """
    Compute the stabilization parameters for order k.

    Args:
        k: Scheme order
        beta: Lipschitz index on the nonlinear side (V^-beta)
        gamma: Lipschitz index on the state side (V^gamma)
        C_L: Lipschitz constant

    Returns:
        StabilizationParams: p, q, C_hat, C_tilde, C1..C4, C*, Cbar, A and slacks
    """
    if not (beta > 0 and gamma > 0 and C_L > 0):
        raise ValueError(f"beta, gamma, C_L must be positive (got {beta}, {gamma}, {C_L})")

    table = lagrange_table(k)
    cstar = cstar_constants(table)
    cbar = cbar_constants(cstar)

    p = (beta + gamma) * k / 2.0
    q = 1.0 / (1.0 + gamma / beta)
    if p < max(beta, gamma):
        raise ValueError(
            f"p={p} is below max(beta, gamma)={max(beta, gamma)}; the interpolation needs p >= both"
        )

    c, (C1, C2, C3, C4), A = _constants_for(cbar[0], beta, gamma, p, C_L)

    tabulated = TABULATED_CSTAR_SQUARED.get(int(k))
    cstar_tabulated = None
    A_table = A
    C_hat_table = c
    if tabulated is not None:
        cstar_tabulated = tuple(math.sqrt(x) for x in tabulated)
        cbar0_tabulated = float(sum(cstar_tabulated))
        C_hat_table, _, A_tabulated = _constants_for(cbar0_tabulated, beta, gamma, p, C_L)
        A_table = 0.5 * A_tabulated

    slack_energy = 1.0 - C_L * (C3 + C1) * cbar[0]
    slack_A = A - C_L * (C4 + C2) * cbar[0]
    # Equality is chosen in both conditions; only round-off may push them below zero.
    assert slack_energy >= -1e-12 and slack_A >= -1e-9 * A, "infeasible stabilization constraints"

    params = StabilizationParams(
        k=int(k),
        beta=float(beta),
        gamma=float(gamma),
        C_L=float(C_L),
        p=p,
        q=q,
        C_hat=c,
        C_tilde=c,
        C1=C1,
        C2=C2,
        C3=C3,
        C4=C4,
        Cstar=tuple(float(x) for x in cstar),
        Cbar=tuple(float(x) for x in cbar),
        Cstar_tabulated=cstar_tabulated,
        A=A,
        A_table=A_table,
        C_hat_table=C_hat_table,
        slack_energy=max(slack_energy, 0.0),
        slack_A=max(slack_A, 0.0),
    )
    logging.debug(f"Stabilization for k={k}: p={p}, A={A:.6g}, A_table={A_table:.6g}")
    return params


def check_override(params, A):
    """
    Warn when a user-supplied A violates the sufficient condition.

    Returns:
        float: Slack of the A condition (negative when violated)
    """
    _, slack = params.constraint_slacks(A)
    if slack < 0:
        logging.warning(
            f"A={A:.6g} is below the sufficient value {params.A:.6g} for k={params.k}; "
            f"energy stability is not guaranteed by the constraint"
        )
    return slack
