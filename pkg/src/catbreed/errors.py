"""Exception types raised by the simulator."""


class CatBreedError(Exception):
    """Base class for all simulator errors."""


class DomainError(CatBreedError, ValueError):
    """An argument lies outside the domain of the operation."""


class DegenerateInputError(CatBreedError, ValueError):
    """A state or operator has zero norm/trace where a physical one is required."""


class NotFoundError(CatBreedError, LookupError):
    """A search (e.g. for a threshold crossing) found nothing in its range."""


class CutoffError(DomainError):
    """The Fock-space cutoff is too small to hold a state faithfully."""

    def __init__(self, message: str, required: int | None = None):
        super().__init__(message)
        self.required = required
