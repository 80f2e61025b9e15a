"""
Piecewise-constant time-step schedules.

A schedule is a list of (t_end, tau) segments; segment i covers
(t_end[i-1], t_end[i]] with step size tau[i], starting from the state's time.
"""

import logging
import math

import tqdm

from etdms.errors import ScheduleError
from etdms.integrator.stepper import bootstrap, etdms_step

# Variable steps used for long coarsening runs: fine steps through the initial
# transient, then progressively coarser ones.
VARIABLE_STEP_SCHEDULE = [
    (1.0, 1e-6),
    (10.0, 1e-5),
    (100.0, 1e-4),
    (30000.0, 1e-3),
]

STEP_TOLERANCE = 1e-6


def uniform_schedule(T, tau):
    return [(float(T), float(tau))]


def truncate_schedule(schedule, T):
    """
    Cut a schedule at horizon T.

    Returns:
        list: Segments ending at or before T, the last one ending exactly at T
    """
    out = []
    for t_end, tau in schedule:
        if t_end >= T:
            out.append((float(T), float(tau)))
            return out
        out.append((float(t_end), float(tau)))
    raise ScheduleError(f"Schedule ends at {schedule[-1][0]:g}, before the horizon T={T:g}")


def validate_schedule(schedule, t_start=0.0):
    """
    Check that a schedule is a contiguous cover of (t_start, t_end_last].

    Raises:
        ScheduleError: On empty schedules, nonpositive steps or overlapping segments
    """
    if not schedule:
        raise ScheduleError("Schedule is empty")
    previous = t_start
    for index, (t_end, tau) in enumerate(schedule):
        if not (tau > 0 and math.isfinite(tau)):
            raise ScheduleError(f"Segment {index}: step size must be positive, got {tau}")
        if not t_end > previous:
            raise ScheduleError(
                f"Segment {index}: end time {t_end:g} does not follow {previous:g}"
            )
        previous = t_end


def segment_steps(t_start, t_end, tau):
    """
    Number of steps of size tau spanning (t_start, t_end].

    Raises:
        ScheduleError: If the span is not an integer multiple of tau
    """
    span = t_end - t_start
    n = int(round(span / tau))
    if n < 1 or abs(n * tau - span) > STEP_TOLERANCE * tau:
        raise ScheduleError(
            f"Segment ({t_start:g}, {t_end:g}] is not an integer number of steps of size {tau:g}"
        )
    return n


def run_schedule(state, schedule, on_step=None, stride=1, progress=False):
    """
    Integrate through a piecewise-constant step schedule.

    At every change of step size the operators are rebuilt and the history is
    re-bootstrapped; consecutive segments with equal tau continue the same
    multistep run.

    Args:
        state: StepperState with initial data set
        schedule: List of (t_end, tau) segments
        on_step: Optional callback receiving the state after emitted steps
        stride: Emit every stride-th step (counted by steps_taken)
        progress: Show a tqdm progress bar

    Returns:
        StepperState: The advanced state
    """
    if int(stride) != stride or stride < 1:
        raise ValueError(f"stride must be a positive integer, got {stride}")
    validate_schedule(schedule, state.t_current)

    def emit(current):
        if on_step and current.steps_taken % stride == 0:
            on_step(current)

    t_final = schedule[-1][0]
    pbar = tqdm.tqdm(
        total=t_final - state.t_current,
        bar_format="{desc}: {percentage:.2f}% |{bar}| {n:.3f}/{total:.3f} [{elapsed}<{remaining}] {postfix}",
        mininterval=0.5,
        disable=not progress,
    )
    try:
        for t_end, tau in schedule:
            if tau != state.tau:
                logging.info(f"Step size change at t={state.t_current:g}: tau {state.tau:g} -> {tau:g}")
                state.set_step_size(tau)
            n_steps = segment_steps(state.t_current, t_end, tau)
            logging.info(f"Segment to t={t_end:g}: {n_steps} steps of tau={tau:g}")

            done = 0
            if not state.multistep_ready:
                if n_steps < state.k - 1:
                    raise ScheduleError(
                        f"Segment to t={t_end:g} has {n_steps} steps, fewer than the "
                        f"{state.k - 1} start-up steps"
                    )
                bootstrap(state, on_step=emit)
                done = state.k - 1
                pbar.update((state.k - 1) * tau)

            for _ in range(n_steps - done):
                etdms_step(state)
                emit(state)
                pbar.update(tau)
            pbar.set_postfix({"t": state.t_current, "time_step": tau})
    finally:
        pbar.close()
    return state
