"""Exceptions shared across the package."""


class VerificationError(Exception):
    """Base class for failures of the certified computations."""


class CertificationError(VerificationError):
    """A certificate that the construction requires could not be established.

    This signals a genuine negative answer (or an input violating a
    precondition of a certified routine), not a lack of precision.
    """


class PrecisionBudgetError(VerificationError):
    """The refinement budget was exhausted before a certificate was decided.

    Raised instead of silently returning an inconclusive answer; callers may
    retry with a larger budget or higher working precision.
    """
