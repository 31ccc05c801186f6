"""Exception types shared across the package."""


class InputError(ValueError):
    """Invalid argument or malformed input data."""


class CapacityError(RuntimeError):
    """Input exceeds a documented solver capacity limit."""


class GeodesicSearchError(RuntimeError):
    """No sampled geodesic produced a balanced cut; try more trials."""


class DecompositionError(InputError):
    """A (strong) tree decomposition violates one of its axioms."""
