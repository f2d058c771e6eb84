class CellcalcError(Exception):
    """Base class for all errors raised by cellcalc."""


class InputError(CellcalcError):
    """Malformed user input (files, flags, builtin identifiers)."""


class InvalidRelation(InputError):
    pass


class NotFiniteDimensional(CellcalcError):
    pass


class SubsetOutOfRange(InputError):
    pass


class PreconditionError(CellcalcError):
    """A well-formed request whose mathematical preconditions fail."""


class NotSuperdiagonal(PreconditionError):
    pass


class NotSubdiagonal(PreconditionError):
    pass


class NotACore(PreconditionError):
    pass


class ColumnNotPresent(PreconditionError):
    pass


class NoGreatestElement(PreconditionError):
    pass


class SizeMismatch(PreconditionError):
    pass


class NotConformant(CellcalcError):
    """No object ordering puts an action matrix into the expected block shape."""
