"""Exception hierarchy shared by every module of the package."""


class PosetRainbowError(Exception):
    """Base class for all errors raised by poset_rainbow."""


class BadParams(PosetRainbowError, ValueError):
    pass


class CycleDetected(PosetRainbowError, ValueError):
    pass


class EmptyPoset(PosetRainbowError, ValueError):
    pass


class NotTreePoset(PosetRainbowError, ValueError):
    pass


class NotSaturated(PosetRainbowError, ValueError):
    pass


class Disconnected(PosetRainbowError, ValueError):
    pass


class BadRange(PosetRainbowError, ValueError):
    pass


class RangeViolation(PosetRainbowError, ValueError):
    pass


class NotConvex(PosetRainbowError, ValueError):
    pass


class TooLarge(PosetRainbowError, ValueError):
    pass


class PreconditionViolated(PosetRainbowError, ValueError):
    pass


class BadPivot(PosetRainbowError, ValueError):
    pass


class SearchTimeout(PosetRainbowError):
    """Raised by searches that ran out of time; carries the best result so far."""

    def __init__(self, message, best=None):
        super().__init__(message)
        self.best = best


class EmbeddingFailure(PosetRainbowError):
    """A greedy embedding step could not continue.

    ``partial`` holds whatever state had been built when the search gave up,
    so callers can inspect how far it got.
    """

    def __init__(self, message, partial=None):
        super().__init__(message)
        self.partial = partial


class Stuck(EmbeddingFailure):
    pass


class NoPairFound(EmbeddingFailure):
    pass


class Infeasible(EmbeddingFailure):
    pass
