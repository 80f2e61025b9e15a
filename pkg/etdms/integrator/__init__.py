"""
ETD-MS Gradient Flow Solver - Integrator Package
"""

from etdms.integrator.lagrange import (
    LagrangeTable,
    lagrange_table,
    cstar_squared,
    cstar_constants,
    cbar_constants,
)
from etdms.integrator.stabilization import StabilizationParams, stabilization_params, check_override
from etdms.integrator.phi import phi_values, etdrk4_coefficients
from etdms.integrator.stepper import (
    AUTO,
    FORMULA,
    StepperState,
    build_stepper,
    etdms_step,
    etdrk4_step,
    bootstrap,
)
from etdms.integrator.schedule import (
    VARIABLE_STEP_SCHEDULE,
    uniform_schedule,
    truncate_schedule,
    validate_schedule,
    run_schedule,
)

__all__ = [
    "LagrangeTable",
    "lagrange_table",
    "cstar_squared",
    "cstar_constants",
    "cbar_constants",
    "StabilizationParams",
    "stabilization_params",
    "check_override",
    "phi_values",
    "etdrk4_coefficients",
    "AUTO",
    "FORMULA",
    "StepperState",
    "build_stepper",
    "etdms_step",
    "etdrk4_step",
    "bootstrap",
    "VARIABLE_STEP_SCHEDULE",
    "uniform_schedule",
    "truncate_schedule",
    "validate_schedule",
    "run_schedule",
]
