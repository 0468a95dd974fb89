"""Immersed finite element solver for Neumann interface optimal control.

The heavy lifting lives in the compiled extension ``ifem_control._core``;
this package re-exports its public entry points.
"""

from ._core import (
    __version__,
    convergence_order,
    run_study,
    solve_case,
    validate_case,
)

__all__ = [
    "__version__",
    "convergence_order",
    "run_study",
    "solve_case",
    "validate_case",
]
