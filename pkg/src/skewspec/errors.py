"""Exception hierarchy. Every error raised by the package derives from SkewSpecError."""


class SkewSpecError(Exception):
    pass


class ZeroDenominator(SkewSpecError, ZeroDivisionError):
    pass


class OutOfDomain(SkewSpecError, ValueError):
    pass


class InvalidMap(SkewSpecError, ValueError):
    pass


class InvalidSft(SkewSpecError, ValueError):
    pass


class PreconditionError(SkewSpecError, ValueError):
    pass


class NotLeoWithinCap(SkewSpecError):
    """Some partition piece did not cover [0, 1] within the iteration cap."""


class NotPrimitive(SkewSpecError):
    """The transition matrix has no all-positive power up to the Wielandt bound."""


class NoPath(SkewSpecError):
    pass


class BudgetTooSmall(SkewSpecError):
    pass


class NotPeriodic(SkewSpecError):
    pass


class NotExpanding(SkewSpecError):
    pass


class NoTrigger(SkewSpecError):
    pass


class NoAnchorFound(SkewSpecError):
    pass


class TargetNotCovered(SkewSpecError):
    pass


class InternalContradiction(SkewSpecError):
    """A constructed witness failed its own audit; this is a bug, never expected."""


class ConfigError(SkewSpecError, ValueError):
    pass
