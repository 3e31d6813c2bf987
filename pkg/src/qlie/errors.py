"""Exception types shared across the engine."""


class QlieError(Exception):
    """Base class for all errors raised by this package."""


class ArithmeticFieldError(QlieError):
    """Division by zero or other impossible field operation."""


class ContextMismatchError(QlieError):
    """Two scalars (or elements) from different scalar contexts were mixed."""


class PoleAtOneError(QlieError):
    """A scalar was evaluated at v = 1 but its denominator vanishes there."""

    def __init__(self, scalar_text: str):
        super().__init__(f"pole at v = 1 in scalar {scalar_text}")
        self.scalar_text = scalar_text


class SquareRootError(QlieError):
    """A square root was requested that does not exist in the field
    (even after adjoining the single formal radical)."""

    def __init__(self, radicand_text: str):
        super().__init__(
            f"no square root in the coefficient field for radicand {radicand_text}"
        )
        self.radicand_text = radicand_text


class DegreeCapError(QlieError):
    """A rewriting step exceeded the configured word-degree bound."""


class ConstructionError(QlieError):
    """The module construction pipeline failed (bad ansatz, wrong dimension,
    missing invariance); the message names the failing stage."""


class InconsistentSystemError(QlieError):
    """An exact linear solve had no solution; ``row`` is a certificate row."""

    def __init__(self, row: int):
        super().__init__(f"inconsistent linear system (certificate row {row})")
        self.row = row
