"""Exception types raised across polarkit."""


class PolarKitError(Exception):
    """Base class for all library errors."""


class LengthMismatch(PolarKitError, ValueError):
    pass


class FamilySizeMismatch(PolarKitError, ValueError):
    pass


class ExceedsEnumerationBudget(PolarKitError):
    """An exhaustive enumeration would exceed its configured ceiling."""


class NotSquare(PolarKitError, ValueError):
    pass


class NotInvertible(PolarKitError, ValueError):
    pass


class InvalidProfile(PolarKitError, ValueError):
    pass


class InvalidSize(PolarKitError, ValueError):
    pass


class HypothesisViolated(PolarKitError):
    """The precondition of a checked identity does not hold for the inputs."""


class UnknownKernel(PolarKitError, KeyError):
    def __str__(self):
        return str(self.args[0]) if self.args else "unknown kernel"


class InvalidExponent(PolarKitError, ValueError):
    pass


class DuplicateName(PolarKitError, ValueError):
    pass


class ExpressionSyntaxError(PolarKitError, ValueError):
    def __init__(self, message, position):
        super().__init__(f"{message} (at position {position})")
        self.position = position


class KernelFormatError(PolarKitError, ValueError):
    def __init__(self, message, line, column=None):
        where = f"line {line}" if column is None else f"line {line}, column {column}"
        super().__init__(f"{where}: {message}")
        self.line = line
        self.column = column


class MatrixUnavailable(PolarKitError):
    pass


class SizeCapExceeded(PolarKitError):
    pass


class FrozenViolation(PolarKitError, ValueError):
    pass


class InvalidRate(PolarKitError, ValueError):
    pass


class InvalidTrials(PolarKitError, ValueError):
    pass


class UnsupportedChannel(PolarKitError, ValueError):
    pass
