"""
Stabilized k-th order ETD multistep stepper with an ETD-RK4 start-up.

Per Fourier mode the scheme integrates

    (1 + A tau^k l^p) du/dt + nu l u = sum_i l_i(t - t_n) N(u^{n-i})

over one step, where l = |k|^4 is the symbol of the linear operator. Dividing by
D = 1 + A tau^k l^p and using the integrating factor K = nu l / D, the update is

    u^{n+1} = exp(-K tau) u^n + sum_i w_i N(u^{n-i}),   w_i = D^{-1} sum_j xi_ij phi_j(K),

so a step is diagonal multiplications plus one nonlinear evaluation.
"""

import logging
from collections import deque, namedtuple

import numpy as np

from etdms.errors import BlowUpError, GridMismatchError, HistoryError
from etdms.integrator.lagrange import lagrange_table
from etdms.integrator.phi import DEFAULT_CUTOFF, etdrk4_coefficients, phi_values
from etdms.integrator.stabilization import check_override, stabilization_params
from etdms.spectral.field import Field

AUTO = "auto"
FORMULA = "formula"

HistoryEntry = namedtuple("HistoryEntry", ["t", "spectrum"])
IntervalRecord = namedtuple("IntervalRecord", ["u_start", "nonlinear", "tau"])


def regularization_symbol(linear_symbol, A, tau, k, p):
    """Per-mode D = 1 + A tau^k l^p."""
    return 1.0 + A * tau ** k * np.power(linear_symbol, p)


def combined_weights(table, K, tau, cutoff=DEFAULT_CUTOFF, damping=1.0):
    """
    Per-mode multistep weights w_i = sum_j xi_ij phi_j(K; tau) / D.

    Returns:
        numpy.ndarray: Array of shape (k,) + shape(K)
    """
    phis = phi_values(K, tau, table.k, cutoff)
    xi = table.xi(tau)
    return np.tensordot(xi, phis, axes=([1], [0])) / damping


class StepperState:
    """
    Mutable state of one ETD-MS integration.

    A state is owned by a single caller and advanced sequentially; the
    precomputed operator tables inside it are never modified in place.
    """

    def __init__(self, grid, model, k, tau, A, p, params, cutoff=DEFAULT_CUTOFF):
        """
        Initialize the stepper.

        Args:
            grid: SpectralGrid
            model: GradientFlowModel providing the linear symbol and N(u, t)
            k: Scheme order
            tau: Step size
            A: Stabilization coefficient (resolved number)
            p: Stabilization exponent (resolved number)
            params: StabilizationParams for the model's Lipschitz data
            cutoff: Small-argument switch for the phi functions
        """
        self.grid = grid
        self.model = model
        self.k = int(k)
        self.A = float(A)
        self.p = float(p)
        self.params = params
        self.cutoff = cutoff
        self.table = lagrange_table(self.k)
        self.linear_symbol = np.asarray(model.linear_symbol(grid), dtype=np.float64)
        self.linear_symbol.setflags(write=False)

        self.history = deque(maxlen=self.k)
        self.intervals = deque(maxlen=max(self.k - 1, 1))

        self.u_hat = None
        self.t_current = 0.0
        self.t_origin = 0.0
        self.steps_since_origin = 0
        self.steps_taken = 0
        self.multistep_ready = False

        self.tau = None
        self.set_step_size(tau)

    def set_step_size(self, tau):
        """
        Precompute the diagonal operators for step size tau.

        Changing tau invalidates the multistep history, so the state must be
        bootstrapped again before the next multistep step.
        """
        if not tau > 0:
            raise ValueError(f"tau must be positive, got {tau}")
        tau = float(tau)
        if tau == self.tau:
            return

        self.tau = tau
        self.damping = regularization_symbol(self.linear_symbol, self.A, tau, self.k, self.p)
        self.K = self.model.nu * self.linear_symbol / self.damping
        self.exp_op = np.exp(-self.K * tau)
        self.weights = combined_weights(self.table, self.K, tau, self.cutoff, self.damping)
        self.rk4 = etdrk4_coefficients(self.model.nu * self.linear_symbol, tau, self.cutoff)
        for array in (self.damping, self.K, self.exp_op, self.weights):
            array.setflags(write=False)

        self.history.clear()
        self.intervals.clear()
        self.multistep_ready = False
        self.t_origin = self.t_current
        self.steps_since_origin = 0
        logging.info(f"Stepper operators built: k={self.k} tau={tau:g} A={self.A:.6g} p={self.p:g}")

    def set_initial(self, u0, t0=0.0):
        """
        Set the initial state; the history is cleared.

        Args:
            u0: Initial Field
            t0: Initial time
        """
        if not self.grid.matches(u0.grid):
            raise GridMismatchError(f"Initial field on {u0.grid}, stepper on {self.grid}")
        self.u_hat = np.array(u0.spectrum, dtype=np.complex128)
        self.t_current = float(t0)
        self.t_origin = float(t0)
        self.steps_since_origin = 0
        self.history.clear()
        self.intervals.clear()
        self.multistep_ready = False

    @property
    def u_current(self):
        return Field.from_spectrum(self.grid, self.u_hat)

    def evaluate_nonlinear(self, u_hat, t):
        """Spectrum of N(u, t) for a state given by its spectrum."""
        result = self.model.nonlinear(Field.from_spectrum(self.grid, u_hat), t).spectrum
        if not np.all(np.isfinite(result)):
            raise BlowUpError(f"Non-finite nonlinear term at t={t:g}", t=t, step=self.steps_taken)
        return result

    def _advance_clock(self):
        self.steps_since_origin += 1
        self.steps_taken += 1
        self.t_current = self.t_origin + self.steps_since_origin * self.tau

    def check_history(self):
        """
        Verify the multistep history.

        Raises:
            HistoryError: If fewer than k entries or non-uniform time stamps
        """
        if len(self.history) < self.k:
            raise HistoryError(f"History holds {len(self.history)} of {self.k} entries; bootstrap first")
        tol = 1e-9 * max(1.0, abs(self.t_current))
        for i, entry in enumerate(self.history):
            if abs(entry.t - (self.t_current - i * self.tau)) > tol:
                raise HistoryError(
                    f"History entry {i} at t={entry.t:g} is not spaced tau={self.tau:g} "
                    f"before t={self.t_current:g}"
                )


def _resolve(value, auto_value, name, formula_value=None):
    if value is None or value == AUTO:
        return auto_value
    if value == FORMULA and formula_value is not None:
        return formula_value
    value = float(value)
    if value < 0:
        raise ValueError(f"{name} must be nonnegative, got {value}")
    return value


def build_stepper(grid, model, k, tau, A=AUTO, p=AUTO, cutoff=DEFAULT_CUTOFF):
    """
    Precompute an ETD-MS stepper.

    Args:
        grid: SpectralGrid
        model: GradientFlowModel
        k: Scheme order
        tau: Step size
        A: "auto" (sufficient value), "formula" (tabulated value) or a number
        p: "auto" ((beta+gamma)k/2) or a number
        cutoff: Small-argument switch for the phi functions

    Returns:
        StepperState: State with operators built and no initial data yet
    """
    if not tau > 0:
        raise ValueError(f"tau must be positive, got {tau}")
    params = stabilization_params(k, model.beta, model.gamma, model.C_L)
    A_value = _resolve(A, params.A, "A", params.A_table)
    p_value = _resolve(p, params.p, "p")
    if A not in (AUTO, None):
        check_override(params, A_value)
    return StepperState(grid, model, k, tau, A_value, p_value, params, cutoff)


def etdms_step(state):
    """
    Advance one ETD-MS step.

    Args:
        state: StepperState with a full, uniformly spaced history

    Returns:
        StepperState: The same state, advanced by tau
    """
    state.check_history()

    u_new = state.exp_op * state.u_hat
    for i, entry in enumerate(state.history):
        u_new = u_new + state.weights[i] * entry.spectrum
    if not np.all(np.isfinite(u_new)):
        raise BlowUpError(
            f"Non-finite state at step {state.steps_taken + 1} (t={state.t_current + state.tau:g})",
            t=state.t_current + state.tau,
            step=state.steps_taken + 1,
        )

    state.intervals.appendleft(
        IntervalRecord(state.u_hat, tuple(entry.spectrum for entry in state.history), state.tau)
    )
    state.u_hat = u_new
    state._advance_clock()
    state.history.appendleft(HistoryEntry(state.t_current, state.evaluate_nonlinear(u_new, state.t_current)))
    return state


def _etdrk4_spectrum(state, u_hat, t, n_u=None):
    c = state.rk4
    tau = state.tau
    if n_u is None:
        n_u = state.evaluate_nonlinear(u_hat, t)
    a = c["E_half"] * u_hat + c["Q"] * n_u
    n_a = state.evaluate_nonlinear(a, t + 0.5 * tau)
    b = c["E_half"] * u_hat + c["Q"] * n_a
    n_b = state.evaluate_nonlinear(b, t + 0.5 * tau)
    cc = c["E_half"] * a + c["Q"] * (2.0 * n_b - n_u)
    n_c = state.evaluate_nonlinear(cc, t + tau)
    u_new = c["E"] * u_hat + c["f1"] * n_u + 2.0 * c["f2"] * (n_a + n_b) + c["f3"] * n_c
    if not np.all(np.isfinite(u_new)):
        raise BlowUpError(f"Non-finite ETD-RK4 state from t={t:g}", t=t + tau, step=state.steps_taken + 1)
    return u_new


def etdrk4_step(state, u_n, t_n, n_u=None):
    """
    One unstabilized fourth-order ETD Runge-Kutta step of size state.tau.

    Args:
        state: StepperState supplying the model and coefficients
        u_n: Field at time t_n
        t_n: Current time
        n_u: Optional precomputed spectrum of N(u_n, t_n)

    Returns:
        Field: Approximation at t_n + tau
    """
    return Field.from_spectrum(state.grid, _etdrk4_spectrum(state, u_n.spectrum, t_n, n_u))


def bootstrap(state, on_step=None):
    """
    Fill the multistep history with k-1 ETD-RK4 steps.

    Args:
        state: StepperState with initial data set
        on_step: Optional callback invoked with the state after each step

    Returns:
        StepperState: State ready for multistep stepping
    """
    if state.u_hat is None:
        raise HistoryError("Initial data must be set before bootstrapping")

    state.history.clear()
    state.intervals.clear()
    state.t_origin = state.t_current
    state.steps_since_origin = 0

    logging.debug(f"Bootstrapping k={state.k} from t={state.t_current:g} with {state.k - 1} ETD-RK4 steps")
    state.history.appendleft(HistoryEntry(state.t_current, state.evaluate_nonlinear(state.u_hat, state.t_current)))
    for _ in range(state.k - 1):
        state.u_hat = _etdrk4_spectrum(state, state.u_hat, state.t_current, state.history[0].spectrum)
        state._advance_clock()
        state.history.appendleft(
            HistoryEntry(state.t_current, state.evaluate_nonlinear(state.u_hat, state.t_current))
        )
        if on_step:
            on_step(state)

    state.multistep_ready = True
    return state
