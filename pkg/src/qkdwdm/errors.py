"""Exception hierarchy."""


class QkdWdmError(Exception):
    """Base class for all errors raised by this package."""


class DomainError(QkdWdmError, ValueError):
    """A numeric argument is outside the domain of the function."""


class ConfigurationError(QkdWdmError, ValueError):
    """Inconsistent or incomplete model parameters (fiber tables, coefficients, ...)."""


class PlanningError(QkdWdmError):
    """No channel assignment satisfies the constraints, or a channel is unassigned."""

    def __init__(self, message, violations=()):
        super().__init__(message)
        self.violations = list(violations)


class EstimationError(QkdWdmError):
    """The decoy-state linear program could not be solved."""

    def __init__(self, message, residuals=None):
        super().__init__(message)
        self.residuals = residuals
