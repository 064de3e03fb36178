"""Exception hierarchy.

Everything raised on bad input derives from ``FacialCyclesError``; the CLI maps
``InputError`` subclasses to exit code 2 and everything else to 1.
"""


class FacialCyclesError(Exception):
    pass


class InputError(FacialCyclesError, ValueError):
    """Malformed or unsupported input."""


class MixedDimensions(InputError):
    pass


class DuplicatePoint(InputError):
    def __init__(self, first, second):
        super().__init__(f"points {first} and {second} coincide")
        self.indices = (first, second)


class NotFullDimensional(InputError):
    pass


class NonVertexPoint(InputError):
    def __init__(self, index):
        super().__init__(f"point {index} is not a vertex of the convex hull")
        self.index = index


class NotALattice(InputError):
    pass


class NotRealized(InputError):
    pass


class NoCoordinates(InputError):
    pass


class NoEdges(InputError):
    pass


class NotPure(FacialCyclesError, ValueError):
    pass


class Malformed2Face(FacialCyclesError, ValueError):
    pass


class AmbientMismatch(FacialCyclesError, ValueError):
    pass


class NotEven(InputError):
    def __init__(self, odd_vertices):
        odd_vertices = sorted(odd_vertices)
        super().__init__(f"target is not even; odd-degree vertices: {odd_vertices}")
        self.odd_vertices = odd_vertices


class DimensionTooLow(InputError):
    pass


class GenericityExhausted(FacialCyclesError, RuntimeError):
    pass


class ShellingCheckFailed(FacialCyclesError, RuntimeError):
    pass


class InternalAssertion(FacialCyclesError, AssertionError):
    """A structural fact the decomposition relies on did not hold."""
