"""Exception hierarchy.

Every error raised on bad input derives from :class:`FibertypeError`, which
is a ``ValueError`` so callers that only care about "invalid input" can catch
that.
"""


class FibertypeError(ValueError):
    pass


class RankMismatch(FibertypeError):
    pass


class NotPointed(FibertypeError):
    pass


class NotARay(FibertypeError):
    pass


class OutsideDualCone(FibertypeError):
    pass


class TailMismatch(FibertypeError):
    pass


class FaceNotCovered(FibertypeError):
    pass


class NotProjective(FibertypeError):
    pass


class Unsupported(FibertypeError):
    pass


class IrreducibleFactorOutsideGroundField(FibertypeError):
    pass


class MembershipViolation(FibertypeError):
    """A product or derivative left the ring. Indicates a bug, not bad input."""


class NotInSRho(FibertypeError):
    pass


class PhiNotInPhiE(FibertypeError):
    pass


class ZeroPhi(FibertypeError):
    pass


class ContextMismatch(FibertypeError):
    pass


class NotInteriorPoint(FibertypeError):
    pass


class NotBigDivisor(FibertypeError):
    pass


class VerificationFailed(FibertypeError):
    pass


class NotStandardForm(FibertypeError):
    pass


class SchemaError(FibertypeError):
    """Malformed JSON input. ``location`` is a path like ``coeffs[1].at``."""

    def __init__(self, location, message):
        super().__init__(f"{location}: {message}")
        self.location = location
        self.message = message
