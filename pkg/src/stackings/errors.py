"""Exception types shared across the library."""


class StackingsError(Exception):
    """Base class for all library errors."""


class FormatError(StackingsError):
    """Malformed input file or word string."""


class BudgetExceededError(StackingsError):
    """A rewriting or reduction loop exceeded its step budget.

    For complete rewriting systems and valid stacking structures this
    never fires; it is the fail-fast guard against non-terminating input.
    """


class StructureError(StackingsError):
    """A stacking structure violated one of its defining constraints."""


class OutsideExploredRegionError(StackingsError):
    """A query left the finite explored portion of the Cayley graph."""


class AlmostConvexityError(StackingsError):
    """No in-ball connecting path of the required length exists."""


class DiagramError(StackingsError):
    """A van Kampen diagram operation received inconsistent input."""
