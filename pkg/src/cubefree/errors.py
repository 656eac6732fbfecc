"""Exception types shared across the package."""


class RangeError(ValueError):
    """A residue, layer index or cardinality is outside its legal range."""


class CapacityError(RuntimeError):
    """An exact computation would exceed the configured search budget."""

    def __init__(self, message: str, space_size: int | None = None):
        super().__init__(message)
        self.space_size = space_size


class InapplicableCompressionError(ValueError):
    """A compression was requested at a site where its hypothesis fails."""
