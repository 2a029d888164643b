"""Exception types raised by the geometry and transform layers."""


class GeometryError(ValueError):
    """Base class for invalid geometric input."""


class DegenerateError(GeometryError):
    """Coincident points, collinear triples or otherwise null constructions."""


class UndefinedLocationError(GeometryError):
    """Location requested for a zero-weight element (a pure vector)."""


class GradeOverflowError(GeometryError):
    """Paravector product whose grades would exceed 4."""


class DomainError(ValueError):
    """Operation applied outside the creation-only subalgebra."""


class InternalConsistencyError(RuntimeError):
    """A sandwich produced annihilation terms or left its paravector band."""


class EyeOnPlaneError(GeometryError):
    """Perspective eye lies on the projection plane."""


class PointAtInfinityError(GeometryError):
    """Point lies in the eye plane parallel to the projection plane."""
