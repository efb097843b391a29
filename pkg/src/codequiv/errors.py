"""Exception types shared across the package."""


class FieldMismatch(ValueError):
    """Operands live in different fields."""


class AdditivityFailure(ValueError):
    """A symbol map is not additive.

    ``x`` and ``y`` are a witness pair with ``sigma(x + y) != sigma(x) + sigma(y)``
    (integer element encodings).
    """

    def __init__(self, x: int, y: int, message: str | None = None):
        self.x = x
        self.y = y
        super().__init__(message or f"map is not additive: sigma({x} + {y}) != sigma({x}) + sigma({y})")


class BudgetExceeded(RuntimeError):
    """A search ran out of node expansions before reaching a verdict."""

    def __init__(self, budget: int):
        self.budget = budget
        super().__init__(f"search budget of {budget} nodes exhausted")


class ExtractionError(ValueError):
    """A witness could not be turned into a structured witness."""


class WeightOneHypothesis(ExtractionError):
    """Every column of both standard-form generators has weight one."""


class ComponentConflict(ExtractionError):
    """Independent blocks of a decomposable code demand different Frobenius exponents."""

    def __init__(self, exponents: list[set[int]]):
        self.exponents = exponents
        super().__init__(f"no Frobenius exponent common to all blocks: {exponents}")


class ParseError(ValueError):
    """Malformed code or witness file."""

    def __init__(self, message: str, line: int | None = None):
        self.line = line
        super().__init__(f"line {line}: {message}" if line is not None else message)
