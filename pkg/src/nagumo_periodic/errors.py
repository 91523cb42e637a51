"""Exception hierarchy.

Every error carries an ``exit_code`` so the command-line front-end can map
failures to distinct process statuses without a lookup table.
"""


class NagumoError(Exception):
    exit_code = 4


class UsageError(NagumoError, ValueError):
    exit_code = 2


class DomainError(UsageError):
    """Argument outside the mathematical domain of a function."""


class BadParams(UsageError):
    """Model parameters outside ``0 < a < 1``, ``d >= 0``."""


class DimensionMismatch(UsageError):
    pass


class ParamMismatch(UsageError):
    pass


class BudgetExceeded(NagumoError):
    exit_code = 3


class NumericalError(NagumoError):
    exit_code = 4


class SingularJacobian(NumericalError):
    pass


class NoConvergence(NumericalError):
    pass


class EigenFailure(NumericalError):
    pass


class StepTooLarge(NumericalError):
    exit_code = 2


class NonfiniteState(NumericalError):
    pass
