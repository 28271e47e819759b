"""Exception hierarchy shared by every module."""


class FordError(Exception):
    """Base class for all library errors."""


class UsageError(FordError, ValueError):
    """Caller passed arguments of the wrong shape or kind."""


class InvalidInputError(FordError, ValueError):
    """A numerical precondition on the inputs does not hold."""


class InvalidModuliError(FordError, ValueError):
    """(h, t) lies outside the moduli region or the requested slice."""


class FixesInfinityError(FordError):
    """The element fixes q_inf, so it has no isometric sphere."""


class DegenerateChartError(FordError):
    """The three points of a chart lie in a common complex line."""


class OutOfScopeError(FordError):
    """The computation is only meaningful under a hypothesis that fails here."""


class NoSignChangeError(FordError):
    """A root bracket does not change sign."""


class WordSyntaxError(FordError, ValueError):
    def __init__(self, message: str, position: int):
        super().__init__(f"{message} at position {position}")
        self.position = position
