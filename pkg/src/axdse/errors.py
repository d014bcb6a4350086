"""Exception and warning types shared across the package."""


class AxdseError(Exception):
    """Base class for all axdse-specific errors."""


# catalog loading
class CatalogError(AxdseError, ValueError):
    """Invalid operator catalog document."""


class MissingField(CatalogError):
    pass


class DuplicateOperator(CatalogError):
    pass


class UnsortedCatalog(CatalogError):
    pass


# functional models
class OperandOutOfRange(AxdseError, ValueError):
    pass


class KindMismatch(AxdseError, ValueError):
    """An adder model was used where a multiplier was expected, or vice versa."""


class UnsupportedFamily(AxdseError, ValueError):
    pass


class WidthTooLargeForExhaustive(AxdseError, ValueError):
    pass


class CalibrationOutOfRange(AxdseError, RuntimeError):
    """No family member lands within a factor of 4 of the target error."""


# benchmark kernels
class WidthMismatch(AxdseError, ValueError):
    pass


class SelectionLengthMismatch(AxdseError, ValueError):
    pass


class LengthMismatch(AxdseError, ValueError):
    pass


class EmptyOutput(AxdseError, ValueError):
    pass


# environment
class BaselineMissing(AxdseError, RuntimeError):
    pass


class InvalidAction(AxdseError, ValueError):
    pass


class StateSpaceTooLarge(AxdseError, ValueError):
    pass


# agent
class NoValidAction(AxdseError, ValueError):
    pass


# harness
class ConfigError(AxdseError, ValueError):
    """Bad run configuration; message names the file and field."""


class MixedBenchmarks(AxdseError, ValueError):
    pass


class EmptyTrace(AxdseError, ValueError):
    pass


class DegenerateBaseline(UserWarning):
    """Baseline average output is zero, so the accuracy threshold collapses to 0."""
