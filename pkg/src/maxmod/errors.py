"""Exception types.

Every error carries a short machine-readable ``code`` that the command line
front end prints verbatim.
"""


class MaxModError(Exception):
    code = "error"


class ShapeError(MaxModError, ValueError):
    code = "shape"


class TooLargeError(MaxModError, ValueError):
    code = "too-large"


class NonFiniteError(MaxModError, ValueError):
    code = "non-finite"


class NotUnitaryError(MaxModError, ValueError):
    code = "not-unitary"


class NoConvergeError(MaxModError, ArithmeticError):
    """Iteration cap reached.

    ``bracket`` holds the best ``(lower, upper)`` enclosure known at the time
    of failure, or ``None`` when the routine has no bracket to offer.
    """

    code = "no-converge"

    def __init__(self, message, bracket=None):
        super().__init__(message)
        self.bracket = bracket


class OutsideDiscError(MaxModError, ValueError):
    code = "outside-disc"


class DegreeError(MaxModError, ValueError):
    code = "degree"


class DegreeExceedsDilationError(MaxModError, ValueError):
    code = "degree-exceeds-dilation"


class EpsUnreachableError(MaxModError, ValueError):
    code = "eps-unreachable"

    def __init__(self, message, tail_at_cap):
        super().__init__(message)
        self.tail_at_cap = tail_at_cap


class NoBoundaryError(MaxModError, ValueError):
    code = "no-boundary"


class FormatError(MaxModError, ValueError):
    """Malformed text input; ``source`` and ``line`` locate the offence."""

    code = "format"

    def __init__(self, message, source="<string>", line=None):
        where = source if line is None else f"{source}:{line}"
        super().__init__(f"{where}: {message}")
        self.source = source
        self.line = line


class PipelineError(MaxModError):
    """A lower-level error re-raised with the name of the stage that hit it."""

    def __init__(self, stage, cause):
        super().__init__(f"{stage}: [{cause.code}] {cause}")
        self.stage = stage
        self.cause = cause
        self.code = cause.code
