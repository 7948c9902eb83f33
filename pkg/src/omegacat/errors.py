class OmegaError(Exception):
    """Base class for all library errors."""


class StructuralError(OmegaError):
    """Malformed data: dangling references, wrong dimensions, missing maps."""


class BoundaryError(OmegaError):
    """Cells that were asked to compose (or act) do not have matching boundaries."""


class NotReversible(OmegaError):
    pass


class BudgetExceeded(OmegaError):
    """A bounded enumeration or search ran out of budget.

    ``reached`` records how far the enumeration got.
    """

    def __init__(self, what: str, reached: int, budget: int):
        super().__init__(f"{what}: budget {budget} exceeded (reached {reached})")
        self.what = what
        self.reached = reached
        self.budget = budget


class Unsupported(OmegaError):
    pass


class CrossCheckError(OmegaError):
    """Two independent computations of the same value disagreed."""
