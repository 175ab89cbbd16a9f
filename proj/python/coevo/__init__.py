"""Coevolution of migrant assimilation and native skill formation.

Parameters are plain dicts using the config-file keys (I_HS, I_LS, I_A,
I_NA, I_E, c_HS, c_A, beta, m and optional N, A). Results are dicts and
lists shaped like the JSON output of the ``coevo`` command.
"""

from ._core import (
    BudgetError,
    DomainError,
    Error,
    InputError,
    InternalAssumptionError,
    ParseError,
    ValidationError,
    __version__,
    basins,
    example_params,
    jacobian,
    rates,
    sample_params,
    simulate,
    simulate_closed,
    steady_states,
    sweep,
    thresholds,
    validate,
    welfare,
)

__all__ = [
    "BudgetError",
    "DomainError",
    "Error",
    "InputError",
    "InternalAssumptionError",
    "ParseError",
    "ValidationError",
    "__version__",
    "basins",
    "example_params",
    "jacobian",
    "rates",
    "sample_params",
    "simulate",
    "simulate_closed",
    "steady_states",
    "sweep",
    "thresholds",
    "validate",
    "welfare",
]
