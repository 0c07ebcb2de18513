"""Exception hierarchy shared by every module."""


class SqrtSepError(Exception):
    """Base class for all library errors."""


class NotSquarefreeError(SqrtSepError, ValueError):
    def __init__(self, value):
        super().__init__(f"{value} is not square-free; decompose it first")
        self.value = value


class NotGeneratedError(SqrtSepError, ValueError):
    def __init__(self, value, generators):
        super().__init__(
            f"{value} is not a product of a subset of {list(generators)}"
        )
        self.value = value
        self.generators = tuple(generators)


class GeneratorMismatchError(SqrtSepError, ValueError):
    """Two field elements live over different generator sets."""


class InvariantViolation(SqrtSepError, AssertionError):
    """An internal arithmetic invariant failed. Always a bug."""


class ParseError(SqrtSepError, ValueError):
    def __init__(self, message, position, text=""):
        super().__init__(f"{message} at position {position}")
        self.message = message
        self.position = position
        self.text = text

    def caret(self):
        """Two-line diagnostic pointing at the offending column."""
        return f"{self.text}\n{' ' * self.position}^ {self.message}"


class ResourceError(SqrtSepError):
    """A configured size limit (sieve, field dimension, enumeration) was hit."""


class BudgetExceededError(ResourceError):
    pass


class BoundViolationError(SqrtSepError):
    """Interval evaluation failed to separate two unequal sums at the cap.

    Either an implementation bug or a counterexample to the separation
    bound; never resolved silently.
    """

    def __init__(self, message, difference=None, bound_report=None, precisions_tried=()):
        super().__init__(message)
        self.difference = difference
        self.bound_report = bound_report
        self.precisions_tried = precisions_tried
