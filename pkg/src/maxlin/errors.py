"""Exception hierarchy shared across the package."""


class MaxLinError(Exception):
    """Base class for every error raised by :mod:`maxlin`."""


class DimensionError(MaxLinError, ValueError):
    """An assignment does not match the number of variables of a system."""


class WeightOverflowError(MaxLinError, OverflowError):
    """A weight or total weight does not fit in an unsigned 64-bit integer."""


class ContractError(MaxLinError, ValueError):
    """A precondition of an operation was violated by its input."""


class BudgetExceededError(MaxLinError):
    """Exhaustive search was requested on more variables than allowed."""

    def __init__(self, n_vars, budget):
        super().__init__(f"{n_vars} variables exceed the brute-force budget of {budget}")
        self.n_vars = n_vars
        self.budget = budget


class InternalConsistencyError(MaxLinError, AssertionError):
    """A guarantee that should hold by construction failed to hold."""


class ParseError(MaxLinError, ValueError):
    """Malformed input text.

    ``code`` names the error class (``"header"``, ``"weight"``, ...) and
    ``line`` is the 1-based line number when known.
    """

    def __init__(self, message, line=None, code="syntax"):
        prefix = f"line {line}: " if line is not None else ""
        super().__init__(prefix + message)
        self.line = line
        self.code = code
