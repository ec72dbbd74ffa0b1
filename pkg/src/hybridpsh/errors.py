"""Exception types shared across the package."""


class HybridPshError(Exception):
    """Base class for all errors raised by this package."""


class ConfigError(HybridPshError):
    """Invalid configuration value or file."""


class DataLoadError(HybridPshError):
    """A CSV input failed validation; message carries row/column context."""


class MetricUndefinedError(HybridPshError):
    """A metric denominator is zero (e.g. no delivered energy)."""


class GridTooLargeError(HybridPshError):
    """Brute-force enumeration refused because the grid exceeds the cap."""


class EvaluationError(HybridPshError):
    """Candidate evaluation failed inside the optimizer.

    Carries the offending candidate so callers can reproduce the failure.
    """

    def __init__(self, candidate, cause):
        self.candidate = candidate
        self.cause = cause
        super().__init__(f"evaluation failed for candidate {candidate}: {cause}")
