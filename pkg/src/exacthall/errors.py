"""Exception hierarchy shared by all modules."""


class ExactHallError(Exception):
    """Base class for library errors."""


class QuiverError(ExactHallError, ValueError):
    """Invalid quiver input."""


class QuiverParseError(QuiverError):
    """The quiver document is malformed."""


class CyclicQuiverError(QuiverError):
    """The quiver has an oriented cycle (or a loop)."""


class NotDynkinError(QuiverError):
    """The underlying graph is not a disjoint union of simply-laced Dynkin diagrams."""


class BudgetExceeded(ExactHallError):
    """A brute-force enumeration would exceed its configured budget."""


class RealizationError(ExactHallError):
    """No representation with the requested isomorphism class was found."""


class DecompositionError(ExactHallError):
    """Hom-dimension data admits no non-negative integral multiplicity vector."""


class StructureOrderError(ExactHallError, ValueError):
    """A pair of exact structures is not comparable in the required direction."""


class InterpolationError(ExactHallError):
    """Structure-constant values did not stabilise to a polynomial."""
