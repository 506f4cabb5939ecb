"""Exception hierarchy shared by every dopaudit module."""


class DopError(Exception):
    """Base class for all dopaudit errors."""


class StructuralError(DopError, ValueError):
    """Shape or variable-count mismatch, index out of range, zero divisor."""


class DegenerateMetric(DopError):
    """The cometric has identically vanishing determinant."""


class Condition2Violated(DopError):
    """Some row g^{ij} d_j D is not divisible by D."""


class NeedsExtension(DopError):
    """A splitting or root extraction requires irrational numbers."""


class InternalContradiction(DopError):
    """A computed object violates an identity the input assumptions guarantee."""


class NotSquarefree(DopError):
    """The boundary polynomial has a repeated factor."""


class IllConditioned(DopError):
    """A numeric sample point lies too close to the boundary divisor."""


class UnknownFixture(DopError, KeyError):
    pass


class ModelSyntaxError(DopError):
    """Model file could not be parsed.

    ``code`` is one of SYNTAX, MISSING_ENTRY, DUPLICATE_ENTRY, UNKNOWN_VARIABLE.
    """

    def __init__(self, message, line=None, column=None, code="SYNTAX"):
        self.line = line
        self.column = column
        self.code = code
        where = ""
        if line is not None:
            where = f"line {line}"
            if column is not None:
                where += f", column {column}"
            where += ": "
        super().__init__(f"{where}{message}")
