"""
Shifted Lagrange extrapolation basis and its L^2 interval constants.

The basis lives on the nodes sigma = 0, -1, ..., -(k-1) in the normalized
time variable sigma = s / tau. Everything is built in exact rational
arithmetic and converted to floats only at the end.
"""

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import List, Tuple

import numpy as np

MAX_ORDER = 8

# Reference k=4 constants C*_j^2 behind the tabulated stabilization
# coefficient. Entry j=2 is the integral of (1 - l_0 + l_1)^2 rather than
# (1 - l_0 - l_1)^2; cstar_squared gives 16003/7560 there.
TABULATED_CSTAR_SQUARED = {
    4: (Fraction(1), Fraction(9143, 3780), Fraction(157441, 7560), Fraction(212, 945)),
}


def _poly_mul(a, b):
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        for j, bj in enumerate(b):
            out[i + j] += ai * bj
    return out


def _poly_eval(coeffs, x):
    total = 0.0
    for c in reversed(coeffs):
        total = total * x + c
    return total


@dataclass(frozen=True)
class LagrangeTable:
    """
    Coefficients of the basis polynomials l_i(sigma) = sum_j xi_hat[i][j] sigma^j.

    The physical coefficients are xi[i][j] = xi_hat[i][j] * tau**(-j).
    """

    k: int
    xi_exact: Tuple[Tuple[Fraction, ...], ...]
    xi_hat: np.ndarray = field(repr=False, compare=False)

    def xi(self, tau):
        """Coefficients in the physical variable s for step size tau."""
        return self.xi_hat * tau ** (-np.arange(self.k, dtype=np.float64))

    def evaluate(self, sigma):
        """
        Evaluate every basis polynomial at sigma.

        Returns:
            numpy.ndarray: k values l_0(sigma), ..., l_{k-1}(sigma)
        """
        return np.array([_poly_eval(row, sigma) for row in self.xi_hat])


def lagrange_table(k):
    """
    Build the shifted Lagrange basis of order k.

    Args:
        k: Order, 1 <= k <= 8

    Returns:
        LagrangeTable: Exact and floating-point coefficient tables
    """
    if int(k) != k or not 1 <= k <= MAX_ORDER:
        raise ValueError(f"Order k must be an integer in [1, {MAX_ORDER}], got {k}")
    k = int(k)

    rows = []
    for i in range(k):
        poly = [Fraction(1)]
        for m in range(k):
            if m == i:
                continue
            # (sigma + m) / (m - i)
            denom = Fraction(m - i)
            poly = _poly_mul(poly, [Fraction(m) / denom, Fraction(1) / denom])
        rows.append(tuple(poly + [Fraction(0)] * (k - len(poly))))

    xi_hat = np.array([[float(c) for c in row] for row in rows])
    xi_hat.setflags(write=False)
    return LagrangeTable(k=k, xi_exact=tuple(rows), xi_hat=xi_hat)


def cstar_squared(table):
    """
    Exact squares of the interval constants C*_j, j = 0..k-1.

    C*_j^2 is the integral over sigma in [0, 1] of (1 - sum_{i<j} l_i(sigma))^2,
    and C*_0 = 1 by convention.

    Returns:
        list: k Fractions
    """
    k = table.k
    result: List[Fraction] = [Fraction(1)]
    partial = [Fraction(0)] * k
    for j in range(1, k):
        partial = [a + b for a, b in zip(partial, table.xi_exact[j - 1])]
        residual = [-c for c in partial]
        residual[0] += 1
        square = _poly_mul(residual, residual)
        result.append(sum((c / (n + 1) for n, c in enumerate(square)), Fraction(0)))
    return result


def cstar_constants(table):
    """
    Interval constants C*_0, ..., C*_{k-1}.

    Args:
        table: LagrangeTable

    Returns:
        numpy.ndarray: C*_j values, C*_0 = 1
    """
    return np.array([math.sqrt(c) for c in cstar_squared(table)])


def cbar_constants(cstar):
    """
    Tail sums Cbar_j = sum_{i >= j} C*_i.

    Returns:
        numpy.ndarray: Cbar_0, ..., Cbar_{k-1}
    """
    return np.cumsum(np.asarray(cstar)[::-1])[::-1].copy()
