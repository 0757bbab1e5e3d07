class DimensionError(ValueError):
    """Raised when a matrix does not have the expected shape."""


class HermiticityError(ValueError):
    """Raised when a matrix is not Hermitian within tolerance."""


class ConvergenceError(RuntimeError):
    """Raised when the Jacobi eigensolver exceeds its sweep cap."""


class PositivityError(ValueError):
    """Raised when a state has an eigenvalue (or a discord value) that is negative beyond float noise."""


class DomainError(ValueError):
    """Raised when a physical input lies outside its domain (kT <= 0, concurrence outside [0, 1], ...)."""


class SweepSpecError(ValueError):
    """Raised for malformed sweep specifications."""


class SweepEvaluationError(RuntimeError):
    """
    Raised when a grid point of a sweep fails to evaluate.

    Args:
        point (dict): Axis name -> value of the offending grid point.
        cause (Exception): The original error.
    """

    def __init__(self, point: dict, cause: Exception):
        self.point = point
        self.cause = cause
        point_str = ", ".join(f"{key}={value:.12g}" for key, value in point.items())
        super().__init__(f"evaluation failed at grid point ({point_str}): {cause}")


class SignatureNotFoundError(ValueError):
    """Raised when a series does not vanish at exactly one isolated point."""


class DetectorInputError(ValueError):
    """Raised when a detector receives a series it cannot analyse."""
