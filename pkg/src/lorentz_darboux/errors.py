"""Exception hierarchy.

Errors fall into three families that the CLI maps to exit codes:
configuration problems (2), solver failures (3) and everything geometric
that callers are expected to handle themselves.
"""


class DarbouxError(Exception):
    """Base class for every error raised by this package."""


# -- algebra / geometry ------------------------------------------------------

class ZeroDivisorError(DarbouxError, ZeroDivisionError):
    """Inverse requested for an element with vanishing squared norm."""


class LightlikePointError(DarbouxError):
    """Inversion requested at a point on the light cone through the center."""


class BoundaryPointError(DarbouxError):
    """Penrose coordinates on (or too close to) the boundary of the diamond."""


class NotAtInfinityError(DarbouxError):
    """Both null coordinates converge, so the trajectory does not blow up."""


class InvalidParamsError(DarbouxError, ValueError):
    pass


class ZeroVelocityError(DarbouxError):
    pass


class CoincidentPointsError(DarbouxError):
    """x_hat == x; the transform is undefined there."""


class NotACircleError(DarbouxError):
    pass


# -- solver ------------------------------------------------------------------

class SolverError(DarbouxError):
    """Failures of the Darboux integrator and its event machinery."""


class LightlikeBaseCurveError(SolverError):
    """Generic mode refuses to cross a lightlike point of the base curve."""


class StepSizeUnderflowError(SolverError):
    pass


class DomainExceededError(SolverError):
    pass


class NoSignChangeError(SolverError):
    pass


# -- analysis ----------------------------------------------------------------

class InsufficientSamplesError(DarbouxError):
    pass


class LightlikeObstructionError(DarbouxError):
    pass


# -- configuration -----------------------------------------------------------

class ConfigError(DarbouxError):
    pass


class ParseError(ConfigError):
    def __init__(self, message, line=None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class ValidationError(ConfigError):
    def __init__(self, field, message=""):
        self.field = field
        super().__init__(f"{field}: {message}" if message else field)
