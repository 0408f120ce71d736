"""Exception types raised across the package."""


class DomainError(ValueError):
    """Evaluation requested at or too close to a coordinate-singular point."""


class ConvergenceError(ArithmeticError):
    """A non-terminating series was requested outside its disk of convergence."""


class PoleError(ZeroDivisionError):
    """The hypergeometric denominator hits a pole before the series terminates."""


class DegenerateEnergyError(ValueError):
    """The mode has epsilon**2 <= 0 or sits on a division-by-zero threshold."""


class AssemblyError(RuntimeError):
    """A field could not be built for the requested mode."""


class InversionError(AssemblyError):
    """Numerical inversion of a radial ladder operator did not converge."""
