"""Exception hierarchy shared by all etkit modules.

``TableError`` subclasses describe rejected input (CLI exit code 2);
``AxiomViolation`` and ``CriteriaDisagree`` signal internal consistency
failures that should never occur on correct code (CLI exit code 1).
"""


class EtkitError(Exception):
    """Base class for all etkit exceptions."""


class TableError(EtkitError):
    """Invalid test-table input."""


class EmptyTable(TableError):
    pass


class MalformedTable(TableError):
    """Ragged rows, non-integer entries, or bad outcome names."""


class NegativeEntry(TableError):
    pass


class EntryTooLarge(TableError):
    pass


class ZeroColumn(TableError):
    def __init__(self, outcome):
        super().__init__(f"outcome {outcome!r} appears in no test")
        self.outcome = outcome


class AntichainViolation(TableError):
    def __init__(self, smaller, larger):
        super().__init__(f"test {smaller} <= test {larger}")
        self.smaller = tuple(smaller)
        self.larger = tuple(larger)


class NotAnEvent(TableError):
    """A vector that is not below any test of the table."""


class BudgetExceeded(EtkitError):
    """A configured enumeration cap was hit."""


class EventBudgetExceeded(BudgetExceeded):
    pass


class NotAlgebraic(EtkitError):
    """Quotient construction requested on a non-algebraic test space."""

    def __init__(self, witness):
        super().__init__(f"test space is not algebraic; witness {witness}")
        self.witness = witness


class AxiomViolation(EtkitError):
    """A structural fact that must hold by theorem failed at runtime."""

    def __init__(self, message, witness=None):
        super().__init__(message if witness is None else f"{message}; witness {witness}")
        self.witness = witness


class CriteriaDisagree(EtkitError):
    """Equivalent homogeneity criteria evaluated to different answers."""


class ZeroIsotropy(EtkitError):
    """Isotropic index of the zero class is unbounded and never reported."""


class NotHomogeneous(EtkitError):
    """Operation requires a homogeneous effect algebra."""
