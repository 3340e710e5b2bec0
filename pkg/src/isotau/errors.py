"""Exception hierarchy shared by all isotau modules."""


class IsotauError(Exception):
    """Base class for every error raised by the library."""


class PoleError(IsotauError, ValueError):
    """A Gamma or Barnes factor was evaluated at one of its poles or zeros."""


class BranchCutError(IsotauError, ValueError):
    """The argument lies on a branch cut of a principal-branch function."""


class ParameterError(IsotauError, ValueError):
    """Function parameters outside the supported domain."""


class NonConvergenceError(IsotauError, ArithmeticError):
    """A series or iteration failed to converge."""


class DegenerateError(IsotauError, ValueError):
    """Monodromy data at a degenerate point of the chosen chart."""


class GenericityError(IsotauError, ValueError):
    """Monodromy or Stokes data violating a genericity assumption."""


class ResonanceError(IsotauError, ValueError):
    """A resonant exponent (2 sigma in {0, 1, -1}) makes a formula singular."""


class SingularError(IsotauError, ArithmeticError):
    """A matrix that must be inverted is numerically singular."""


class ValidityError(IsotauError, ValueError):
    """An asymptotic formula was requested outside its validity region."""


class PoleEncountered(IsotauError, ArithmeticError):
    """The integrator detected a movable pole of the solution on the path."""

    def __init__(self, message, location=None):
        super().__init__(message)
        self.location = location


class ToleranceError(IsotauError, ArithmeticError):
    """A numerical run failed to meet its requested tolerance."""
