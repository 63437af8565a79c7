"""Exception hierarchy shared by every module."""


class VassilievError(Exception):
    """Base class for library errors."""


class ParameterError(VassilievError, ValueError):
    """An argument is outside its documented range."""


class StructuralError(VassilievError, ValueError):
    """A graph or diagram violates a structural invariant."""


class UnsupportedGraphError(VassilievError):
    """The graph has a shape the STU extension does not handle."""


class TotalityError(VassilievError, KeyError):
    """A weight system is missing a value it needs."""


class NumericalError(VassilievError, ArithmeticError):
    """A numerical computation produced a non-finite or degenerate result."""

    def __init__(self, message, location=None):
        super().__init__(message)
        self.location = location


class GenericityError(NumericalError):
    """No generic direction was found within the retry budget."""


class EmbeddingError(NumericalError):
    """A curve self-intersects, or two curves intersect, within tolerance."""
