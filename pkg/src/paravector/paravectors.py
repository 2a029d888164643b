"""
k-paravectors: elements supported on grades ``k-1`` and ``k``.

A paravector ``x0 + x`` is a weighted point (weight ``|x0|``, orientation
``sign(x0)``, location ``x/|x0|``). Products of points with alternating
orientation build line segments (biparavectors), plane fragments
(triparavectors) and signed volumes (quadriparavectors).
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .errors import DegenerateError, GeometryError, GradeOverflowError, UndefinedLocationError
from .exterior import (
    Multivector,
    grade_project,
    hodge,
    interior,
    reversion,
    scalar_product,
    wedge,
)

#: Relative tolerance for incidence and degeneracy tests.
REL_TOL = 1e-9


def as_vector3(v: Sequence[float]) -> np.ndarray:
    arr = np.asarray(v, dtype=float).reshape(-1)
    if arr.shape != (3,):
        raise GeometryError(f"expected a 3-vector, got shape {arr.shape}")
    if not np.all(np.isfinite(arr)):
        raise GeometryError("vector components must be finite")
    return arr


def _band(a: Multivector, k: int) -> Multivector:
    out = Multivector()
    for g in (k - 1, k):
        if 0 <= g <= 3:
            out = out + grade_project(a, g)
    return out


def _is_small(residual: float, *scales: float) -> bool:
    return residual <= REL_TOL * (1.0 + sum(scales))


class KParavector:
    """A multivector restricted to the grade band ``{k-1, k}``.

    Construction checks that the input lives in the band (up to the relative
    tolerance) and drops the out-of-band residue.
    """

    __slots__ = ("data", "k")

    def __init__(self, data: Multivector, k: int):
        if not 0 <= k <= 4:
            raise ValueError(f"paravector order must be in [0, 4], got {k}")
        band = _band(data, k)
        residual = (data - band).norm()
        if not _is_small(residual, data.norm()):
            raise GeometryError(f"multivector {data!r} is not a {k}-paravector")
        self.data = band
        self.k = k

    @staticmethod
    def of(data: Multivector, k: int) -> KParavector:
        """Build the most specific subclass for order ``k``."""
        return _CLASSES.get(k, KParavector)(data) if k in _CLASSES else KParavector(data, k)

    def lower(self) -> Multivector:
        """The grade ``k-1`` part."""
        return grade_project(self.data, self.k - 1) if self.k >= 1 else Multivector()

    def upper(self) -> Multivector:
        """The grade ``k`` part."""
        return grade_project(self.data, self.k) if self.k <= 3 else Multivector()

    def norm(self) -> float:
        return self.data.norm()

    def allclose(self, other: KParavector, atol: float = 1e-9) -> bool:
        return self.k == other.k and self.data.allclose(other.data, atol)

    def __add__(self, other: KParavector) -> KParavector:
        if not isinstance(other, KParavector) or other.k != self.k:
            return NotImplemented
        return KParavector.of(self.data + other.data, self.k)

    def __sub__(self, other: KParavector) -> KParavector:
        if not isinstance(other, KParavector) or other.k != self.k:
            return NotImplemented
        return KParavector.of(self.data - other.data, self.k)

    def __neg__(self) -> KParavector:
        return KParavector.of(-self.data, self.k)

    def __mul__(self, s: float) -> KParavector:
        if isinstance(s, (KParavector, Multivector)):
            return NotImplemented
        return KParavector.of(self.data * s, self.k)

    __rmul__ = __mul__

    def __xor__(self, other: KParavector) -> KParavector:
        return pv_product(self, other)

    def __eq__(self, other):
        if not isinstance(other, KParavector):
            return NotImplemented
        return self.k == other.k and self.data == other.data

    def __hash__(self):
        return hash((self.k, self.data))

    def __repr__(self):
        return f"{type(self).__name__}({self.data!r})"


class Point(KParavector):
    """Weighted, oriented point ``x0 + x``."""

    __slots__ = ()

    def __init__(self, data: Multivector):
        super().__init__(data, 1)

    @property
    def scalar(self) -> float:
        return self.data.scalar_part

    @property
    def vector(self) -> np.ndarray:
        return self.data.to_vector()

    def weight(self) -> float:
        return abs(self.scalar)

    def orientation(self) -> int:
        return int(np.sign(self.scalar))

    def location(self) -> np.ndarray:
        if self.scalar == 0.0:
            raise UndefinedLocationError("a zero-weight paravector is a vector and has no location")
        return self.vector / abs(self.scalar)

    def normalized(self) -> Point:
        """Unit-weight, positively oriented point at the same location."""
        return make_point(self.location())


class LineSegment(KParavector):
    """Oriented segment: direction vector plus moment bivector."""

    __slots__ = ()

    def __init__(self, data: Multivector):
        super().__init__(data, 2)

    def direction(self) -> np.ndarray:
        return self.lower().to_vector()

    def moment(self) -> Multivector:
        return self.upper()


class PlaneFragment(KParavector):
    """Oriented plane fragment: direction bivector plus moment trivector."""

    __slots__ = ()

    def __init__(self, data: Multivector):
        super().__init__(data, 3)

    def bivector(self) -> Multivector:
        return self.lower()

    def trivector(self) -> Multivector:
        return self.upper()


class VolumeElement(KParavector):
    """Signed volume, a pure trivector."""

    __slots__ = ()

    def __init__(self, data: Multivector):
        super().__init__(data, 4)

    def volume(self) -> float:
        return self.data.trivector_part


_CLASSES = {1: Point, 2: LineSegment, 3: PlaneFragment, 4: VolumeElement}


def pv_product(a: KParavector, b: KParavector) -> KParavector:
    """Paravector product: the ``{k+l}`` band of ``a ^ b``."""
    k = a.k + b.k
    if k > 4:
        raise GradeOverflowError(f"product of a {a.k}- and a {b.k}-paravector exceeds order 4")
    return KParavector.of(_band(wedge(a.data, b.data), k), k)


def dagger(a: KParavector) -> KParavector:
    """Orientation flip.

    On points ``P^dagger = -conj(P)``; extended as the anti-automorphism of
    the paravector product, ``(A ^ B)^dagger = B^dagger ^ A^dagger``, which on
    a k-paravector reads ``rev(A_k) - rev(A_{k-1})``.
    """
    return KParavector.of(reversion(a.upper()) - reversion(a.lower()), a.k)


def make_point(p: Sequence[float], weight: float = 1.0) -> Point:
    """Point of the given weight located at ``p``: ``w + w p``."""
    p = as_vector3(p)
    return Point(Multivector.scalar(weight) + Multivector.vector(weight * p))


def point_parts(point: Point) -> tuple[float, int, np.ndarray]:
    """(weight, orientation, location)."""
    return point.weight(), point.orientation(), point.location()


def _unit(point: KParavector) -> Point:
    if not isinstance(point, Point):
        point = Point(point.data)
    return point.normalized()


def line_through(p: Point, q: Point) -> LineSegment:
    """Segment from ``p`` to ``q``: ``P ^ dagger(Q) = (q - p) + p^q``."""
    pu, qu = _unit(p), _unit(q)
    line = pv_product(pu, dagger(qu))
    if _is_small(line.norm(), pu.norm(), qu.norm()):
        raise DegenerateError("line through coincident points")
    return line


def line_parts(line: LineSegment) -> tuple[np.ndarray, Multivector, np.ndarray]:
    """(direction, moment, support), support being the point nearest the origin."""
    direction = line.lower()
    l2 = scalar_product(direction, direction)
    if l2 == 0.0:
        raise DegenerateError("line with zero direction")
    support = interior(line.upper(), direction) / l2
    return direction.to_vector(), line.upper(), support.to_vector()


def plucker(line: LineSegment) -> tuple[np.ndarray, np.ndarray]:
    """Plücker pair (l, m) with ``m`` the Hodge dual of the moment."""
    if _is_small(line.lower().norm(), line.norm()):
        raise DegenerateError("line with zero direction")
    return line.lower().to_vector(), hodge(line.upper()).to_vector()


def plane_through(p: Point, q: Point, r: Point) -> PlaneFragment:
    """Fragment ``P ^ dagger(Q) ^ R``."""
    pu, qu, ru = _unit(p), _unit(q), _unit(r)
    plane = pv_product(pv_product(pu, dagger(qu)), ru)
    if _is_small(plane.bivector().norm(), pu.norm() * qu.norm() * ru.norm()):
        raise DegenerateError("plane through collinear points")
    return plane


def plane_dual(plane: PlaneFragment) -> tuple[np.ndarray, float]:
    """(n, c) with ``plane = *(n + c)``; the plane equation is ``n . x = c``."""
    return hodge(plane.bivector()).to_vector(), hodge(plane.trivector()).scalar_part


def plane_parts(plane: PlaneFragment) -> tuple[Multivector, Multivector, np.ndarray]:
    """(bivector, trivector, support), support being the point nearest the origin."""
    n, c = plane_dual(plane)
    n2 = float(n @ n)
    if n2 == 0.0:
        raise DegenerateError("plane with zero bivector part")
    return plane.bivector(), plane.trivector(), c * n / n2


def on_line(line: LineSegment, x: Point) -> bool:
    """Incidence test ``L ^ X = 0``."""
    xu = _unit(x)
    return _is_small(pv_product(line, xu).norm(), line.norm() * xu.norm())


def on_plane(plane: PlaneFragment, x: Point) -> bool:
    """Incidence test ``P ^ dagger(X) = 0``."""
    xu = _unit(x)
    return _is_small(pv_product(plane, dagger(xu)).norm(), plane.norm() * xu.norm())


def tetra_volume(p: Point, q: Point, r: Point, s: Point) -> float:
    """Trivector coefficient of ``P ^ dagger(Q) ^ R ^ dagger(S)``.

    Six times the signed volume of the tetrahedron PQRS, equal to
    ``(q-p)^(r-q)^(s-r)``.
    """
    pu, qu, ru, su = (_unit(x) for x in (p, q, r, s))
    lm = pv_product(pv_product(pu, dagger(qu)), pv_product(ru, dagger(su)))
    return lm.data.trivector_part


@dataclass(frozen=True)
class LineRelation:
    """Outcome of :func:`classify_lines`."""

    kind: str  # skew | parallel | coincident | intersecting
    volume: float
    perpendicular: bool = False

    def __str__(self) -> str:
        label = "intersecting, perpendicular" if self.perpendicular else self.kind
        return f"{label}, volume={self.volume + 0.0:.17g}"


def classify_lines(a: LineSegment, b: LineSegment) -> LineRelation:
    """Relative position of two lines.

    Non-coplanar lines (``a ^ b != 0``) are skew. Coplanar lines are
    classified from the wedges of the directions and of the offset between
    their support points.
    """
    for line in (a, b):
        if _is_small(line.lower().norm(), line.norm()):
            raise GeometryError("cannot classify a degenerate line")
    volume = pv_product(a, b).data.trivector_part
    la, _, da = line_parts(a)
    lb, _, db = line_parts(b)
    na, nb = float(np.linalg.norm(la)), float(np.linalg.norm(lb))
    if not _is_small(abs(volume), a.norm() * b.norm()):
        return LineRelation("skew", volume)
    # ties at the threshold fall to the stricter class: strict > for "nonzero"
    offset = db - da
    no = float(np.linalg.norm(offset))
    dir_wedge = np.linalg.norm(np.cross(la, lb))
    if not _is_small(dir_wedge, na * nb):
        perpendicular = _is_small(abs(float(la @ lb)), na * nb)
        return LineRelation("intersecting", volume, perpendicular)
    off_a = np.linalg.norm(np.cross(offset, la))
    off_b = np.linalg.norm(np.cross(offset, lb))
    if _is_small(off_a, no * na) and _is_small(off_b, no * nb):
        return LineRelation("coincident", volume)
    return LineRelation("parallel", volume)
