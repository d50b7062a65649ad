"""Exception types shared across the package."""


class InvalidArgument(ValueError):
    """An argument violates a documented precondition."""


class ResourceExhausted(RuntimeError):
    """A bounded retry or search budget ran out."""


class NonGenericDirection(ValueError):
    """A projection direction is degenerate for the scene; retry with another."""


class GeometryError(RuntimeError):
    """The geometry is not an embedding (curves touch in 3-space)."""


class TheoremContradiction(RuntimeError):
    """A measurement contradicts a classical theorem; signals a geometry-stack bug."""
