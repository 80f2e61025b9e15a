"""
Experiment drivers behind the command-line subcommands.
"""

import csv
import logging
import math
import os
from dataclasses import dataclass, asdict
from typing import Any, Dict, Optional, Union

from etdms.diagnostics.fitting import fit_loglog, fit_semilog
from etdms.diagnostics.modified_energy import modified_energy
from etdms.diagnostics.observables import record, relative_difference
from etdms.diagnostics.series_io import SeriesWriter, format_value
from etdms.errors import BlowUpError, GridMismatchError, ScheduleError
from etdms.harness.config import load_schedule, write_run_meta
from etdms.harness.sweep import SweepRunner
from etdms.integrator.lagrange import TABULATED_CSTAR_SQUARED, cstar_squared, lagrange_table
from etdms.integrator.schedule import run_schedule, uniform_schedule
from etdms.integrator.stabilization import stabilization_params
from etdms.integrator.stepper import build_stepper
from etdms.models import make_model, manufactured_exact, smooth_random_field, uniform_random_field
from etdms.spectral.grid import make_grid
from etdms.spectral.operators import sobolev_norm
from etdms.spectral.snapshot import read_snapshot, write_snapshot

CONVERGENCE_CSV = "convergence.csv"
CONVERGENCE_HEADER = ["A", "p", "tau", "error", "order"]
SERIES_CSV = "series.csv"
FITS_TXT = "fits.txt"
CONSTANTS_TXT = "constants.txt"


@dataclass
class ConvergenceRow:
    """One sweep entry: error at T against the exact solution, and observed order."""

    A: Union[str, float]
    A_value: float
    p: Union[str, float]
    p_value: float
    tau: float
    error: float
    order: Optional[float] = None

    def to_dict(self) -> Dict[str, Any]:
        return asdict(self)

    @property
    def blew_up(self):
        return not math.isfinite(self.error)


def snapshot_name(t):
    return f"snap_t{t:.10g}.etds"


def constants_report(params):
    """
    Human-readable report of the Lagrange table and stabilization constants.

    Returns:
        str: Multi-line report
    """
    table = lagrange_table(params.k)
    lines = [f"Order k = {params.k}, beta = {params.beta:g}, gamma = {params.gamma:g}, C_L = {params.C_L:g}", ""]
    lines.append("Lagrange basis l_i(sigma) = sum_j xi_hat[i][j] sigma^j:")
    for i, row in enumerate(table.xi_exact):
        lines.append(f"  l_{i}: " + "  ".join(f"{str(c):>8}" for c in row))
    lines.append("")
    lines.append("Interval constants:")
    for j, (square, cstar, cbar) in enumerate(zip(cstar_squared(table), params.Cstar, params.Cbar)):
        lines.append(f"  C*_{j}^2 = {str(square):<16} C*_{j} = {cstar:.15g}   Cbar_{j} = {cbar:.15g}")
    tabulated = TABULATED_CSTAR_SQUARED.get(params.k)
    if tabulated is not None:
        lines.append("Tabulated interval constants (used for A formula):")
        for j, square in enumerate(tabulated):
            marker = "" if square == cstar_squared(table)[j] else "   (differs from the exact integral)"
            lines.append(f"  C*_{j}^2 = {str(square):<16} C*_{j} = {math.sqrt(square):.15g}{marker}")
    lines.append("")
    lines.append(f"p = {params.p:.15g}")
    lines.append(f"q = {params.q:.15g}")
    lines.append(f"C_hat = {params.C_hat:.15g}")
    lines.append(f"C_tilde = {params.C_tilde:.15g}")
    if params.C_hat_table != params.C_hat:
        lines.append(f"C_hat (tabulated) = {params.C_hat_table:.15g}")
    for name in ("C1", "C2", "C3", "C4"):
        lines.append(f"{name} = {getattr(params, name):.15g}")
    lines.append(f"A (sufficient) = {params.A:.15g}")
    lines.append(f"A (formula) = {params.A_table:.15g}")
    slack_energy, slack_A = params.constraint_slacks()
    _, slack_formula = params.constraint_slacks(params.A_table)
    lines.append(f"slack 1 - C_L(C3+C1)Cbar_0 = {slack_energy:.6e}")
    lines.append(f"slack A - C_L(C4+C2)Cbar_0 = {slack_A:.6e} (sufficient), {slack_formula:.6e} (formula)")
    return "\n".join(lines)


def cmd_constants(k, beta=0.5, gamma=0.5, C_L=1.0, out_dir=None):
    """
    Compute and report the stabilization constants.

    Returns:
        tuple: (StabilizationParams, report text)
    """
    params = stabilization_params(k, beta, gamma, C_L)
    report = constants_report(params)
    if out_dir:
        os.makedirs(out_dir, exist_ok=True)
        path = os.path.join(out_dir, CONSTANTS_TXT)
        with open(path, "w") as handle:
            handle.write(report + "\n")
        logging.info(f"Wrote constants report to {path}")
    return params, report


def _convergence_case(job):
    config, grid, A, p, tau = job["config"], job["grid"], job["A"], job["p"], job["tau"]
    model = make_model(config.model, config.eps, config.eps_convention, forcing=True)
    state = build_stepper(grid, model, config.order, tau, A, p)
    state.set_initial(manufactured_exact(0.0, grid), 0.0)
    try:
        run_schedule(state, uniform_schedule(config.T, tau))
        error = sobolev_norm(state.u_current - manufactured_exact(state.t_current, grid), 0.0)
    except BlowUpError as e:
        logging.error(f"Blow-up for A={A} p={p} tau={tau:g}: {e}")
        error = math.nan
    return ConvergenceRow(A=A, A_value=state.A, p=p, p_value=state.p, tau=tau, error=error)


def observed_orders(rows):
    """
    Fill in observed orders within one (A, p) group, ordered by decreasing tau.

    order_i = ln(e_{i-1}/e_i) / ln(tau_{i-1}/tau_i), from the second row on.
    """
    previous = None
    for row in rows:
        row.order = None
        if previous is not None and previous.error > 0 and row.error > 0:
            if math.isfinite(previous.error) and math.isfinite(row.error):
                row.order = math.log(previous.error / row.error) / math.log(previous.tau / row.tau)
        previous = row
    return rows


def write_convergence_csv(path, rows):
    with open(path, "w", newline="") as handle:
        writer = csv.writer(handle, lineterminator="\n")
        writer.writerow(CONVERGENCE_HEADER)
        for row in rows:
            writer.writerow([
                row.A if isinstance(row.A, str) else format_value(row.A),
                row.p if isinstance(row.p, str) else format_value(row.p),
                format_value(row.tau),
                format_value(row.error),
                format_value(row.order),
            ])
    logging.info(f"Wrote {len(rows)} convergence rows to {path}")


def cmd_convergence(config):
    """
    Temporal convergence sweep on the manufactured NSS problem.

    Args:
        config: Resolved RunConfig

    Returns:
        list: ConvergenceRow entries grouped by (A, p), tau decreasing
    """
    grid = make_grid(config.N, config.L, config.dealias)
    taus = sorted(config.taus, reverse=True)
    jobs = [
        {"config": config, "grid": grid, "A": A, "p": p, "tau": tau}
        for A in config.A_list
        for p in config.p_list
        for tau in taus
    ]
    logging.info(f"Convergence sweep: {len(jobs)} runs on {config.workers} worker(s)")

    def report(index, row):
        logging.info(f"A={row.A} p={row.p} tau={row.tau:g}: error={row.error:.6e}")

    rows = SweepRunner(_convergence_case, config.workers, on_result=report).run(jobs)

    group = len(taus)
    for start in range(0, len(rows), group):
        observed_orders(rows[start:start + group])

    os.makedirs(config.out, exist_ok=True)
    write_convergence_csv(os.path.join(config.out, CONVERGENCE_CSV), rows)
    write_run_meta(config.out, config, "convergence")
    return rows


def _initial_field(config, grid):
    if config.init:
        field, t0 = read_snapshot(config.init, dealias=grid.dealias)
        if not grid.matches(field.grid):
            raise GridMismatchError(f"Snapshot {config.init} is on {field.grid}, run configured for {grid}")
        logging.info(f"Restarting from {config.init} at t={t0:g}")
        return field, t0
    if config.initial == "smooth":
        return smooth_random_field(grid, config.seed), 0.0
    return uniform_random_field(grid, config.seed), 0.0


def _remaining(schedule, t0):
    return [(t_end, tau) for t_end, tau in schedule if t_end > t0]


def _fit_lines(times, energies, roughnesses, slopes, window):
    lines = []
    for label, fit, values in (
        ("E", fit_semilog, energies),
        ("h", fit_loglog, roughnesses),
        ("m", fit_loglog, slopes),
    ):
        try:
            result = fit(times, values, window)
            lines.append(f"{label}: {result.describe()}")
            logging.info(f"Fit {label}: {result.describe()}")
        except ValueError as e:
            logging.warning(f"Fit {label} skipped: {e}")
            lines.append(f"{label}: not fitted ({e})")
    return lines


def cmd_coarsen(config):
    """
    Coarsening run from random (or snapshot) initial data.

    Writes series.csv, snapshots, fits.txt and run_meta to config.out.

    Returns:
        StepperState: Final state

    Raises:
        BlowUpError: After saving a snapshot of the last finite state
    """
    grid = make_grid(config.N, config.L, config.dealias)
    model = make_model(config.model, config.eps, config.eps_convention)
    field, t0 = _initial_field(config, grid)
    schedule = _remaining(load_schedule(config), t0)
    if not schedule:
        raise ScheduleError(f"Nothing to integrate: initial time {t0:g} is not before T={config.T:g}")

    state = build_stepper(grid, model, config.order, schedule[0][1], config.A, config.p)
    state.set_initial(field, t0)

    os.makedirs(config.out, exist_ok=True)
    write_run_meta(
        config.out, config, "coarsen",
        extra={"nu": model.nu, "A_resolved": state.A, "p_resolved": state.p},
    )

    snapshot_times = list(config.snapshot_times or [])
    times, energies, roughnesses, slopes = [], [], [], []

    def save_snapshot(current):
        path = os.path.join(config.out, snapshot_name(current.t_current))
        write_snapshot(path, current.u_current, current.t_current)
        logging.info(f"Saved snapshot {path}")

    def emit(current, writer):
        n = current.steps_taken
        monitored = config.monitor_every > 0 and n % config.monitor_every == 0
        if n % config.series_every == 0 or monitored:
            E_mod = None
            if monitored and current.multistep_ready and len(current.intervals) >= current.k - 1:
                E_mod = modified_energy(current, config.quad_points)
            row = record(model, current.u_current, current.t_current, E_mod)
            writer.write(row)
            times.append(row.t)
            energies.append(row.E)
            roughnesses.append(row.h)
            slopes.append(row.m)
        if config.snapshot_every and n % config.snapshot_every == 0:
            save_snapshot(current)
        elif any(abs(current.t_current - ts) <= 0.5 * current.tau for ts in snapshot_times):
            save_snapshot(current)

    with SeriesWriter(os.path.join(config.out, SERIES_CSV)) as writer:
        row = record(model, state.u_current, state.t_current)
        writer.write(row)
        times.append(row.t)
        energies.append(row.E)
        roughnesses.append(row.h)
        slopes.append(row.m)
        try:
            run_schedule(state, schedule, on_step=lambda current: emit(current, writer), progress=config.progress)
        except BlowUpError as e:
            logging.error(f"Blow-up at t={e.t}: {e}; saving last finite state")
            save_snapshot(state)
            raise

    lines = _fit_lines(times, energies, roughnesses, slopes, config.fit_window)
    path = os.path.join(config.out, FITS_TXT)
    with open(path, "w") as handle:
        handle.write("\n".join(lines) + "\n")
    logging.info(f"Wrote fits to {path}")
    return state


def cmd_compare(path_a, path_b):
    """
    Relative discrete L^2 difference of two snapshots, ||a - b|| / ||b||.

    Returns:
        float: The relative difference
    """
    a, t_a = read_snapshot(path_a)
    b, t_b = read_snapshot(path_b)
    if not a.grid.matches(b.grid):
        raise GridMismatchError(f"{path_a} is on {a.grid}, {path_b} on {b.grid}")
    if t_a != t_b:
        logging.warning(f"Comparing snapshots at different times: {t_a:g} vs {t_b:g}")
    value = relative_difference(a, b)
    logging.info(f"Relative L2 difference at t={t_b:g}: {value:.6e}")
    return value
