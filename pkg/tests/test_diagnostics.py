"""
Tests for diagnostics.

Validates:
- Roughness, mean slope and the Lipschitz probe
- Modified energy reconstruction and its history requirement
- Scaling-law fits
- Series CSV output
"""

import math

import numpy as np
import pytest

from etdms.diagnostics import (
    SERIES_HEADER,
    SeriesWriter,
    TimeSeriesRecord,
    fit_loglog,
    fit_semilog,
    interval_derivative_norms,
    lipschitz_ratio,
    mean_slope,
    modified_energy,
    read_series,
    record,
    relative_difference,
    roughness,
)
from etdms.errors import HistoryError, IdenticalStatesError, MeanNotZeroError
from etdms.integrator import bootstrap, build_stepper, etdms_step
from etdms.models import NssModel, linear_model, smooth_random_field, uniform_random_field
from etdms.spectral import Field, sobolev_norm


def advance(state, n):
    for _ in range(n):
        etdms_step(state)
    return state


class TestObservables:
    """Roughness, slope and relative differences."""

    def test_single_mode(self, cos2x_cos2y):
        assert roughness(cos2x_cos2y) == pytest.approx(0.5, rel=1e-13)
        assert mean_slope(cos2x_cos2y) == pytest.approx(math.sqrt(2.0), rel=1e-13)

    def test_roughness_ignores_constant_shift(self, cos2x_cos2y):
        shifted = Field.from_values(cos2x_cos2y.grid, cos2x_cos2y.values + 3.0)
        assert roughness(shifted) == pytest.approx(roughness(cos2x_cos2y), rel=1e-12)
        assert mean_slope(shifted) == pytest.approx(mean_slope(cos2x_cos2y), rel=1e-12)

    def test_record(self, cos2x_cos2y):
        model = NssModel(0.1)
        row = record(model, cos2x_cos2y, 2.5)
        assert row.t == 2.5
        assert row.E == model.energy(cos2x_cos2y)
        assert row.E_mod is None
        assert TimeSeriesRecord.from_dict(row.to_dict()) == row

    def test_relative_difference(self, cos2x_cos2y):
        assert relative_difference(cos2x_cos2y.scaled(1.1), cos2x_cos2y) == pytest.approx(0.1, rel=1e-12)
        with pytest.raises(IdenticalStatesError):
            relative_difference(cos2x_cos2y, Field.zeros(cos2x_cos2y.grid))


class TestLipschitzRatio:
    """||N(u) - N(v)||_{V^-1/2} / ||u - v||_{V^1/2}."""

    @pytest.mark.parametrize("seed", [1, 2, 3])
    def test_nss_bound(self, grid_2pi, seed):
        model = NssModel(0.1)
        u = uniform_random_field(grid_2pi, seed=seed, amplitude=1.0)
        v = smooth_random_field(grid_2pi, seed=seed + 100, amplitude=2.0)
        assert lipschitz_ratio(model, u, v) <= 1.0 + 1e-10

    def test_linear_model_is_zero(self, grid_2pi, cos2x_cos2y):
        assert lipschitz_ratio(linear_model(0.1), cos2x_cos2y, Field.zeros(grid_2pi)) == 0.0

    def test_identical_states(self, cos2x_cos2y):
        with pytest.raises(IdenticalStatesError):
            lipschitz_ratio(NssModel(0.1), cos2x_cos2y, cos2x_cos2y)

    def test_needs_mean_zero(self, grid_2pi, cos2x_cos2y):
        v = Field.from_values(grid_2pi, 1.0 + np.cos(grid_2pi.X))
        with pytest.raises(MeanNotZeroError):
            lipschitz_ratio(NssModel(0.1), cos2x_cos2y, v)


class TestModifiedEnergy:
    """Reconstruction of du/dt over past intervals."""

    def test_needs_completed_intervals(self, grid_2pi):
        state = build_stepper(grid_2pi, NssModel(0.1), 4, 0.01)
        state.set_initial(uniform_random_field(grid_2pi, seed=1))
        bootstrap(state)
        with pytest.raises(HistoryError, match="intervals"):
            modified_energy(state)
        advance(state, 2)
        with pytest.raises(HistoryError):
            modified_energy(state)
        advance(state, 1)
        assert math.isfinite(modified_energy(state))

    def test_zero_state(self, grid_2pi):
        state = build_stepper(grid_2pi, linear_model(0.1), 4, 0.01)
        state.set_initial(Field.zeros(grid_2pi))
        bootstrap(state)
        advance(state, 3)
        assert modified_energy(state) == 0.0

    def test_linear_mode_norms(self, grid_2pi, cos2x_cos2y):
        """For N = 0 a mode decays as exp(-K theta), so ||u'||^2 = K (1 - exp(-2 K tau)) / 2 ||u^n||^2."""
        tau = 0.01
        state = build_stepper(grid_2pi, linear_model(0.01), 4, tau, A=10.0, p=2.0)
        state.set_initial(cos2x_cos2y)
        bootstrap(state)
        advance(state, 3)

        interval = state.intervals[0]
        K = state.K[2, 2]
        start_norm = sobolev_norm(Field.from_spectrum(grid_2pi, interval.u_start), 0.0)
        expected_h = 0.5 * K * (1.0 - math.exp(-2.0 * K * tau)) * start_norm ** 2

        norm_h, norm_v = interval_derivative_norms(state, interval)
        assert norm_h == pytest.approx(expected_h, rel=1e-10)
        assert norm_v == pytest.approx(64.0 ** 2 * expected_h, rel=1e-10)

    def test_quadrature_converged(self, grid_2pi):
        state = build_stepper(grid_2pi, NssModel(0.1), 4, 0.01)
        state.set_initial(smooth_random_field(grid_2pi, seed=2, amplitude=0.5))
        bootstrap(state)
        advance(state, 5)
        assert modified_energy(state, 6) == pytest.approx(modified_energy(state, 12), rel=1e-9)

    def test_not_below_energy(self, grid_2pi):
        model = NssModel(0.1)
        state = build_stepper(grid_2pi, model, 4, 0.01)
        state.set_initial(smooth_random_field(grid_2pi, seed=3, amplitude=0.5))
        bootstrap(state)
        advance(state, 3)
        assert modified_energy(state) >= model.energy(state.u_current)


class TestFits:
    """Least-squares scaling laws."""

    def test_semilog_recovers_planted_law(self):
        t = np.linspace(1.0, 400.0, 200)
        result = fit_semilog(t, 2.0 * np.log(t) - 3.0)
        assert result.a == pytest.approx(2.0, rel=1e-10)
        assert result.b == pytest.approx(-3.0, rel=1e-10)
        assert result.samples == 200
        assert result.residual < 1e-10

    def test_loglog_recovers_planted_law(self):
        t = np.geomspace(0.5, 1000.0, 300)
        result = fit_loglog(t, 0.7 * t ** (1.0 / 3.0))
        assert result.a == pytest.approx(0.7, rel=1e-10)
        assert result.b == pytest.approx(1.0 / 3.0, rel=1e-10)
        assert result.samples == int(np.count_nonzero((t >= 1.0) & (t <= 400.0)))

    def test_too_few_samples(self):
        t = np.linspace(1.0, 400.0, 5)
        with pytest.raises(ValueError, match="at least"):
            fit_semilog(t, t)

    @pytest.mark.parametrize("window", [(10.0, 1.0), (0.0, 10.0)])
    def test_bad_window(self, window):
        t = np.linspace(1.0, 10.0, 50)
        with pytest.raises(ValueError, match="Fit window"):
            fit_semilog(t, t, window)

    def test_loglog_needs_positive_values(self):
        t = np.linspace(1.0, 10.0, 50)
        with pytest.raises(ValueError, match="positive"):
            fit_loglog(t, -t, (1.0, 10.0))

    def test_describe(self):
        t = np.linspace(1.0, 400.0, 50)
        text = fit_loglog(t, t ** 0.5).describe()
        assert "t^0.5" in text
        assert "50 samples" in text


class TestSeriesWriter:
    """series.csv output."""

    def test_header_and_rows(self, tmp_path):
        path = tmp_path / "series.csv"
        with SeriesWriter(path) as writer:
            writer.write(TimeSeriesRecord(0.0, -1.5, 0.05, 0.2))
            writer.write(TimeSeriesRecord(0.1, -1.25, 0.04, 0.19, E_mod=-1.2))
        lines = path.read_text().splitlines()
        assert lines[0] == ",".join(SERIES_HEADER)
        assert lines[1] == "0,-1.5,0.050000000000000003,0.20000000000000001,"
        assert len(lines) == 3

    def test_read_back(self, tmp_path):
        path = tmp_path / "series.csv"
        with SeriesWriter(path) as writer:
            writer.write(TimeSeriesRecord(0.3, 1.0 / 3.0, 0.05, 0.2))
        columns = read_series(path)
        assert columns["E"] == [1.0 / 3.0]
        assert columns["E_mod"] == [None]

    def test_rejects_foreign_csv(self, tmp_path):
        path = tmp_path / "other.csv"
        path.write_text("a,b\n1,2\n")
        with pytest.raises(ValueError, match="Unexpected series header"):
            read_series(path)
