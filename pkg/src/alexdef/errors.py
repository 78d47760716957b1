"""Exception hierarchy shared by every layer of the package."""


class AlexdefError(Exception):
    """Base class for all errors raised by alexdef."""


class PresentationSyntaxError(AlexdefError, ValueError):
    """Malformed presentation text; carries the 1-based line and column."""

    def __init__(self, message: str, line: int, column: int) -> None:
        super().__init__(f"line {line}, column {column}: {message}")
        self.line = line
        self.column = column


class PreconditionError(AlexdefError, ValueError):
    """Input outside the domain of an operation (betti != 1, bad sigma, ...)."""


class ReducibleMinpolyError(AlexdefError, ArithmeticError):
    """A nonzero element turned out to be a zero divisor.

    Only possible when a user-supplied minimal polynomial is reducible.
    ``factor`` holds the nontrivial common factor that was found.
    """

    def __init__(self, message: str, factor=None) -> None:
        super().__init__(message)
        self.factor = factor


class InternalInconsistencyError(AlexdefError, RuntimeError):
    """A consequence of the theory failed to hold on the computed data.

    On a genuine presentation of a rational homology circle this cannot
    happen; it signals either a bug or an input violating the hypotheses.
    """
