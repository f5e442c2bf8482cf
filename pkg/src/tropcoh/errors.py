"""Exception hierarchy.

Every error carries a stable ``code`` used by the command line front end to
pick an exit status: 2 for malformed or invalid input, 3 for a violated
mathematical precondition, 4 for an internal invariant breach.
"""


class TropError(Exception):
    code = 3


class ParseError(TropError):
    code = 2


class ValidationError(TropError):
    code = 2

    def __init__(self, invariant, detail=""):
        self.invariant = invariant
        msg = invariant if not detail else f"{invariant}: {detail}"
        super().__init__(msg)


class InvalidFan(ValidationError):
    pass


class NonCompactComplex(TropError):
    pass


class FaceNotFound(TropError):
    pass


class NotTriangulated(TropError):
    pass


class SupportMismatch(TropError):
    pass


class NonOrientable(TropError):
    def __init__(self, msg, pair=None):
        self.pair = pair
        super().__init__(msg)


class WrongDimension(TropError):
    pass


class MonomialNotInMonoid(TropError):
    pass


class InvariantBreach(TropError):
    """Raised when an internal identity such as d∘d = 0 fails. Always a bug."""

    code = 4
