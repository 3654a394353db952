"""Exception hierarchy shared by every module."""


class HypJacError(ValueError):
    """Base class for all library errors."""


class InvalidParameter(HypJacError):
    pass


class ParseError(HypJacError):
    def __init__(self, message, position=None):
        if position is not None:
            message = f"{message} (at position {position})"
        super().__init__(message)
        self.position = position


class GenusMismatch(HypJacError):
    pass


class InexactDivision(HypJacError):
    """A division that should be exact left a nonzero remainder."""


class UndefinedDerivation(HypJacError):
    pass


class DegenerateDivisor(HypJacError):
    pass


class OffCurve(HypJacError):
    pass


class Inconsistency(HypJacError):
    pass


class StructuralError(HypJacError):
    """An internal identity failed; signals a bug rather than bad input."""


class WindowTooSmall(HypJacError):
    def __init__(self, needed, given):
        super().__init__(
            f"window {given[0]}:{given[1]} does not cover the predicted support "
            f"plus guard band; need at least {needed[0]}:{needed[1]}"
        )
        self.needed = needed
        self.given = given
