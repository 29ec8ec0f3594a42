"""Exception types shared across the package."""


class InputError(ValueError):
    """User-supplied data violates a documented precondition."""


class GenerationError(RuntimeError):
    """A seeded matrix generator failed to converge."""


class ConstructionError(RuntimeError):
    """An iterative construction missed its residual target."""
