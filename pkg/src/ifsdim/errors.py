"""Exception hierarchy shared across the package."""


class IfsDimError(Exception):
    """Base class for every error raised by ifsdim."""


class ParameterError(IfsDimError, ValueError):
    pass


class AlphaOutOfRange(ParameterError):
    pass


class BetaOutOfRange(ParameterError):
    pass


class ProbabilityOutOfRange(ParameterError):
    pass


class BetaNotOne(ParameterError):
    pass


class TruncationTooSmall(ParameterError):
    pass


class HypothesisNotMet(IfsDimError):
    """A theorem hypothesis required by the requested quantity does not hold."""

    def __init__(self, hypothesis, message=None):
        self.hypothesis = hypothesis
        super().__init__(message or f"hypothesis not met: {hypothesis}")


class NoConvergence(IfsDimError, ArithmeticError):
    pass


class NonPositiveInput(IfsDimError, ValueError):
    pass


class PrefixTooLong(IfsDimError, ValueError):
    pass


class EmptyPrefix(IfsDimError, ValueError):
    pass


class NotAProbabilityVector(IfsDimError, ValueError):
    pass


class MeanOutOfRange(IfsDimError, ValueError):
    pass


class InsufficientParentCoverage(IfsDimError, IndexError):
    pass


class NoSamples(IfsDimError, ValueError):
    pass


class StateOverflow(IfsDimError, OverflowError):
    pass
