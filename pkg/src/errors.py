"""Exception hierarchy shared by every om-forge module, with the CLI exit code each one maps to."""

from __future__ import annotations

from typing import Any


class OMError(ValueError):
    """Base class for all oriented-matroid errors raised by this package."""

    exit_code = 3

    def __init__(self, message: str, **details: Any):
        super().__init__(message)
        self.details = details


class LengthMismatchError(OMError):
    exit_code = 1


class ParseError(OMError):
    exit_code = 1


class ValidationError(OMError):
    """An object failed the chirotope or cocircuit axioms; ``report`` carries the witnesses."""

    def __init__(self, message: str, report: Any = None, **details: Any):
        super().__init__(message, **details)
        self.report = report


class NotInSeparatorError(OMError):
    pass


class NotComodularError(OMError):
    pass


class NotAnEdgeError(OMError):
    pass


class PreconditionError(OMError):
    pass


class StaleCertificateError(OMError):
    pass


class PerturbationError(OMError):
    pass


class VerificationError(OMError):
    pass


class BudgetExhausted(OMError):
    exit_code = 2
