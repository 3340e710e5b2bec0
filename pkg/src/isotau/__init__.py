"""Tau-function connection constants for Painleve VI and Painleve II."""

from .errors import (
    BranchCutError,
    DegenerateError,
    GenericityError,
    IsotauError,
    NonConvergenceError,
    ParameterError,
    PoleEncountered,
    PoleError,
    ResonanceError,
    SingularError,
    ToleranceError,
    ValidityError,
)

__version__ = "0.1.0"

__all__ = [
    "BranchCutError",
    "DegenerateError",
    "GenericityError",
    "IsotauError",
    "NonConvergenceError",
    "ParameterError",
    "PoleEncountered",
    "PoleError",
    "ResonanceError",
    "SingularError",
    "ToleranceError",
    "ValidityError",
    "__version__",
]
