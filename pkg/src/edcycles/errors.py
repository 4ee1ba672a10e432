"""Typed errors raised by the library.

Every refusal is explicit: operations never silently approximate outside
their documented domain.
"""


class ParameterDomainError(ValueError):
    """Input lies outside the documented parameter domain of an operation."""


class SizeExceededError(ValueError):
    """Instance is larger than the configured exact-search bound."""


class NonConvergenceError(RuntimeError):
    """Iterative solver hit its iteration cap before meeting tolerance."""


class EmbedTimeoutError(RuntimeError):
    """Embedding search ran out of time budget; the verdict is unknown."""


class TruncatedSpectrumError(ValueError):
    """Clique spectrum was truncated; extreme points may be incomplete."""


class NonConcavityError(RuntimeError):
    """A curve failed a three-point concavity probe; unimodal search is invalid."""
