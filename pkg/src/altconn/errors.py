"""Exception hierarchy; each class carries the CLI exit code it maps to."""


class AltconnError(Exception):
    exit_code = 1


class ParameterError(AltconnError, ValueError):
    exit_code = 2


class RegimeError(AltconnError):
    exit_code = 3


class VerificationError(AltconnError):
    exit_code = 4


class BudgetError(AltconnError):
    """A computation would exceed its hard size budget."""

    exit_code = 5
