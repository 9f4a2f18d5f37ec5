"""Exception types shared across the package."""


class CloneToolError(Exception):
    """Base class for all errors raised by this package."""


class ManifestError(CloneToolError):
    """The corpus manifest is missing, malformed, or violates an invariant."""


class CorpusError(CloneToolError):
    """A document could not be read or decoded."""


class FilterError(CloneToolError):
    """A tailoring filter file is malformed or a rule does not compile."""


class AssessmentError(CloneToolError):
    """An assessment file is malformed or precision is undefined."""


class StatisticsError(CloneToolError):
    """A study statistic is undefined for the given input."""
