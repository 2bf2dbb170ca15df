"""Exception hierarchy shared by every module of the package."""


class MorError(Exception):
    """Base class for all errors raised by chevmor."""


class ZeroInverse(MorError, ZeroDivisionError):
    pass


class DimMismatch(MorError, ValueError):
    pass


class Singular(MorError, ValueError):
    pass


class NoForm(MorError, ValueError):
    pass


class NotSimilitude(MorError, ValueError):
    pass


class BadLabel(MorError, ValueError):
    pass


class BadIndex(MorError, ValueError):
    pass


class NotMember(MorError, ValueError):
    pass


class InternalStuck(MorError, RuntimeError):
    """A reduction step met an input that violates its shape contract.

    For genuine group members this never happens; it indicates a bug.
    """


class NotASquareForFamily(MorError, ValueError):
    pass


class NotNormalizing(MorError, ValueError):
    pass


class GroupMismatch(MorError, ValueError):
    pass


class RecoveryFailed(MorError, ValueError):
    pass


class TooLong(MorError, ValueError):
    pass


class NotCodecShape(MorError, ValueError):
    pass


class FamilyUnsupported(MorError, ValueError):
    pass


class Inconsistent(MorError, ValueError):
    pass


class AmbiguousRecovery(MorError, ValueError):
    pass


class ParseError(MorError, ValueError):
    pass
