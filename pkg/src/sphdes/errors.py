"""Exception hierarchy shared by all sphdes modules."""


class SphdesError(Exception):
    """Base class for every error raised by sphdes."""


class DomainError(SphdesError, ValueError):
    """An argument lies outside the mathematical domain of an operation."""


class DesignFormatError(SphdesError, ValueError):
    """A design file could not be parsed or failed validation."""


class SingularMatrixError(SphdesError, ArithmeticError):
    """An information matrix is singular where an inverse is required."""


class ConvergenceError(SphdesError, RuntimeError):
    """An iterative solver failed to converge within its retry budget."""
