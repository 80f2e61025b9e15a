"""
Tests for the scheme coefficients.

Validates:
- Shifted Lagrange basis (exact construction, partition of unity, cardinality)
- Interval constants C*_j and tail sums Cbar_j
- Stabilization parameters and constraint slacks
- phi_j evaluation against a quadrature oracle, and the ETD-RK4 coefficients
"""

import math
from fractions import Fraction

import numpy as np
import pytest
from scipy.special import roots_legendre

from etdms.integrator import (
    cbar_constants,
    cstar_constants,
    cstar_squared,
    etdrk4_coefficients,
    lagrange_table,
    phi_values,
    stabilization_params,
)
from etdms.integrator.lagrange import MAX_ORDER, TABULATED_CSTAR_SQUARED


def exact_eval(row, sigma):
    return sum((c * Fraction(sigma) ** n for n, c in enumerate(row)), Fraction(0))


def phi_quadrature(z, tau, j, points=64):
    """phi_j by Gauss-Legendre on its effective support, s -> tau - s."""
    x = z * tau
    # The integrand exp(-x u) (1-u)^j is negligible beyond u = 40/x.
    upper = min(1.0, 40.0 / x) if x > 0 else 1.0
    nodes, weights = roots_legendre(points)
    u = 0.5 * upper * (nodes + 1.0)
    integrand = np.exp(-x * u) * (1.0 - u) ** j
    return tau ** (j + 1) * 0.5 * upper * float(np.sum(weights * integrand))


class TestLagrangeTable:
    """Shifted Lagrange basis on the nodes 0, -1, ..., -(k-1)."""

    def test_order_one(self):
        table = lagrange_table(1)
        assert table.xi_exact == ((Fraction(1),),)

    def test_order_four_coefficients(self):
        table = lagrange_table(4)
        F = Fraction
        assert table.xi_exact[0] == (F(1), F(11, 6), F(1), F(1, 6))
        assert table.xi_exact[1] == (F(0), F(-3), F(-5, 2), F(-1, 2))
        assert table.xi_exact[2] == (F(0), F(3, 2), F(2), F(1, 2))
        assert table.xi_exact[3] == (F(0), F(-1, 3), F(-1, 2), F(-1, 6))

    @pytest.mark.parametrize("k", range(1, MAX_ORDER + 1))
    def test_partition_of_unity(self, k):
        table = lagrange_table(k)
        for j in range(k):
            column = sum(row[j] for row in table.xi_exact)
            assert column == (1 if j == 0 else 0)
        assert sum(table.evaluate(0.37)) == pytest.approx(1.0, abs=1e-13)

    @pytest.mark.parametrize("k", range(1, MAX_ORDER + 1))
    def test_cardinality(self, k):
        table = lagrange_table(k)
        for i, row in enumerate(table.xi_exact):
            for m in range(k):
                assert exact_eval(row, -m) == (1 if i == m else 0)
        np.testing.assert_allclose(table.evaluate(-1.0), np.eye(k)[:, 1] if k > 1 else [1.0], atol=1e-12)

    @pytest.mark.parametrize("k", [0, 9, 2.5])
    def test_rejects_out_of_range(self, k):
        with pytest.raises(ValueError, match="Order k"):
            lagrange_table(k)

    def test_physical_coefficients_scale(self):
        table = lagrange_table(3)
        tau = 0.1
        xi = table.xi(tau)
        np.testing.assert_allclose(xi[:, 2], table.xi_hat[:, 2] / tau ** 2)


class TestIntervalConstants:
    """C*_j and Cbar_j."""

    def test_order_four_exact(self):
        squares = cstar_squared(lagrange_table(4))
        assert squares == [Fraction(1), Fraction(9143, 3780), Fraction(16003, 7560), Fraction(212, 945)]

    def test_tabulated_table_differs_only_at_second_constant(self):
        exact = cstar_squared(lagrange_table(4))
        tabulated = TABULATED_CSTAR_SQUARED[4]
        assert [e == p for e, p in zip(exact, tabulated)] == [True, True, False, True]

    def test_tabulated_second_constant_is_sign_flipped_integral(self):
        """157441/7560 is the integral of (1 - l_0 + l_1)^2 over [0, 1]."""
        table = lagrange_table(4)
        nodes, weights = roots_legendre(16)
        sigma = 0.5 * (nodes + 1.0)
        l0 = np.array([table.evaluate(s)[0] for s in sigma])
        l1 = np.array([table.evaluate(s)[1] for s in sigma])
        value = 0.5 * np.sum(weights * (1.0 - l0 + l1) ** 2)
        assert value == pytest.approx(157441 / 7560, rel=1e-13)

    @pytest.mark.parametrize("k", range(1, 6))
    def test_cstar_zero_is_one(self, k):
        assert cstar_constants(lagrange_table(k))[0] == 1.0

    def test_quadrature_oracle(self):
        table = lagrange_table(4)
        cstar = cstar_constants(table)
        nodes, weights = roots_legendre(64)
        sigma = 0.5 * (nodes + 1.0)
        values = np.array([table.evaluate(s) for s in sigma])
        for j in range(1, 4):
            residual = 1.0 - values[:, :j].sum(axis=1)
            integral = 0.5 * np.sum(weights * residual ** 2)
            assert math.sqrt(integral) == pytest.approx(cstar[j], rel=1e-12)

    def test_cbar_relations(self):
        cstar = cstar_constants(lagrange_table(5))
        cbar = cbar_constants(cstar)
        assert cbar[-1] == cstar[-1]
        for j in range(len(cstar) - 1):
            assert cbar[j] == pytest.approx(cbar[j + 1] + cstar[j], rel=1e-15)


class TestStabilizationParams:
    """Stabilization exponent, interpolation constants and A."""

    def test_order_four_exponents(self):
        params = stabilization_params(4, 0.5, 0.5, 1.0)
        assert params.p == 2.0
        assert params.q == 0.5

    def test_order_four_c_hat_closed_form(self):
        params = stabilization_params(4, 0.5, 0.5, 1.0)
        expected = (4.0 / (3.0 * params.Cbar[0])) ** 0.75
        assert params.C_hat == pytest.approx(expected, rel=1e-13)
        assert params.C_tilde == params.C_hat

    def test_order_four_sufficient_a_closed_form(self):
        params = stabilization_params(4, 0.5, 0.5, 1.0)
        assert params.A == pytest.approx(27.0 * params.Cbar[0] ** 4 / 256.0, rel=1e-12)

    def test_order_four_tabulated_a(self):
        """A_table reproduces 27 (1 + Cbar_1)^4 / 512 with the tabulated radicals."""
        cbar1 = (math.sqrt(18286) + math.sqrt(157441) + math.sqrt(1696)) / math.sqrt(7560)
        expected = 27.0 * (1.0 + cbar1) ** 4 / 512.0
        params = stabilization_params(4, 0.5, 0.5, 1.0)
        assert params.A_table == pytest.approx(expected, rel=1e-12)
        assert params.A_table == pytest.approx(175.2, abs=0.1)

    def test_order_four_tabulated_c_hat(self):
        cbar0 = 1.0 + (math.sqrt(18286) + math.sqrt(157441) + math.sqrt(1696)) / math.sqrt(7560)
        params = stabilization_params(4, 0.5, 0.5, 1.0)
        assert params.C_hat_table == pytest.approx((4.0 / (3.0 * cbar0)) ** 0.75, rel=1e-12)
        assert params.C_hat_table == pytest.approx(0.2713, abs=1e-4)
        assert params.C_hat_table < params.C_hat

    def test_tabulated_a_meets_sufficient_condition(self):
        params = stabilization_params(4, 0.5, 0.5, 1.0)
        _, slack = params.constraint_slacks(params.A_table)
        assert slack > 0

    @pytest.mark.parametrize("k", [2, 3, 4])
    def test_constraints_hold(self, k):
        params = stabilization_params(k, 0.5, 0.5, 1.0)
        slack_energy, slack_A = params.constraint_slacks()
        assert slack_energy >= -1e-12
        assert slack_A >= -1e-9 * params.A
        assert params.slack_energy >= 0 and params.slack_A >= 0

    def test_order_three(self):
        params = stabilization_params(3, 0.5, 0.5, 1.0)
        assert params.p == 1.5
        assert params.A_table == params.A
        assert params.C_hat_table == params.C_hat

    def test_order_one(self):
        params = stabilization_params(1, 0.5, 0.5, 1.0)
        assert params.Cbar == (1.0,)
        slack_energy, slack_A = params.constraint_slacks()
        assert slack_energy == pytest.approx(1.0 - (params.C1 + params.C3), abs=1e-15)
        assert slack_A == pytest.approx(params.A - (params.C2 + params.C4), abs=1e-12)

    def test_unequal_indices(self):
        params = stabilization_params(4, 0.25, 0.75, 2.0)
        slack_energy, _ = params.constraint_slacks()
        assert abs(slack_energy) < 1e-10

    @pytest.mark.parametrize("args", [(4, 0.0, 0.5, 1.0), (4, 0.5, -1.0, 1.0), (4, 0.5, 0.5, 0.0)])
    def test_rejects_nonpositive(self, args):
        with pytest.raises(ValueError, match="must be positive"):
            stabilization_params(*args)

    def test_rejects_low_exponent(self):
        with pytest.raises(ValueError, match="below max"):
            stabilization_params(1, 0.1, 1.5, 1.0)

    def test_to_dict(self):
        data = stabilization_params(4, 0.5, 0.5, 1.0).to_dict()
        assert len(data["Cstar"]) == 4
        assert len(data["Cstar_tabulated"]) == 4


class TestPhiValues:
    """phi_j(z; tau) = int_0^tau exp(-z (tau - s)) s^j ds."""

    def test_zero_argument(self):
        tau = 0.3
        values = phi_values(0.0, tau, 6)
        for j in range(6):
            assert values[j] == pytest.approx(tau ** (j + 1) / (j + 1), rel=1e-15)

    def test_closed_form_phi0(self):
        assert phi_values(1.0, 1.0, 1)[0] == pytest.approx(1.0 - math.exp(-1.0), rel=1e-15)

    def test_tiny_argument_against_oracle(self):
        tau = 1e-3
        values = phi_values(1e-8, tau, 8)
        for j in range(8):
            assert values[j] == pytest.approx(phi_quadrature(1e-8, tau, j), rel=1e-13)

    @pytest.mark.parametrize("x", [1e-12, 1e-6, 1e-2, 1.0, 1e2, 1e6])
    def test_oracle_across_scales(self, x):
        tau = 0.5
        z = x / tau
        values = phi_values(np.array([z]), tau, 8)[:, 0]
        for j in range(8):
            assert values[j] == pytest.approx(phi_quadrature(z, tau, j), rel=1e-12)

    def test_branches_agree_at_switch(self):
        tau = 1.0
        xs = np.array([1.999999, 2.000001, 2.999999, 3.000001])
        values = phi_values(xs, tau, 4)
        for j in range(4):
            for x, value in zip(xs, values[j]):
                assert value == pytest.approx(phi_quadrature(x, tau, j), rel=1e-12)

    def test_positive(self):
        z = np.logspace(-14, 8, 50)
        assert np.all(phi_values(z, 1e-3, 8) > 0)

    def test_shape(self):
        assert phi_values(np.zeros((3, 5)), 1.0, 4).shape == (4, 3, 5)

    def test_rejects_negative(self):
        with pytest.raises(ValueError):
            phi_values(-1.0, 1.0, 2)
        with pytest.raises(ValueError):
            phi_values(1.0, 0.0, 2)


class TestEtdrk4Coefficients:
    """Coefficients of the fourth-order ETD Runge-Kutta step."""

    def test_small_argument_limits(self):
        tau = 0.01
        coeffs = etdrk4_coefficients(np.array([0.0, 1e-10]), tau)
        for name in ("f1", "f2", "f3"):
            np.testing.assert_allclose(coeffs[name], tau / 6.0, rtol=1e-8)
        np.testing.assert_allclose(coeffs["Q"], tau / 2.0, rtol=1e-8)

    @pytest.mark.parametrize("z", [1.0, 7.5, 250.0])
    def test_closed_forms(self, z):
        tau = 0.2
        x = z * tau
        E = math.exp(-x)
        denom = tau ** 2 * (-z) ** 3
        f1 = (-4.0 + x + E * (4.0 + 3.0 * x + x * x)) / denom
        f2 = (2.0 - x - E * (2.0 + x)) / denom
        f3 = (-4.0 + 3.0 * x - x * x + E * (4.0 + x)) / denom
        coeffs = etdrk4_coefficients(np.array([z]), tau)
        assert coeffs["f1"][0] == pytest.approx(f1, rel=1e-10)
        assert coeffs["f2"][0] == pytest.approx(f2, rel=1e-10)
        assert coeffs["f3"][0] == pytest.approx(f3, rel=1e-10)
        assert coeffs["Q"][0] == pytest.approx((1.0 - math.exp(-x / 2.0)) / z, rel=1e-13)
