"""
Sandwich transformations of paravectors and their line/plane extensions.

Every transformation is an operator ``U`` in the creation/annihilation
algebra with ``conj(U) U = epsilon = +-1``. Points and plane fragments
transform as ``epsilon U X rev(U)``, line segments and volumes as
``epsilon U X conj(U)``.

Cotranslation and perspective involve a Hodge conjugation and are plain
functions rather than :class:`Transform` values.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Any, Sequence

import numpy as np

from .errors import EyeOnPlaneError, InternalConsistencyError, PointAtInfinityError
from .exterior import Multivector, hodge, interior, wedge
from .operators import (
    IDENTITY,
    OpElement,
    ann,
    commutator,
    cre,
    iota,
    is_creation_only,
    op_conjugation,
    op_reversion,
    vacuum,
)
from .paravectors import KParavector, Point, as_vector3

#: Tolerance for orthonormality and unit-length preconditions.
FRAME_TOL = 1e-9
#: Below this |v.u| the removable singularity of H(t) takes its limit value.
H_BRANCH = 1e-12

KINDS = ("identity", "reflection", "scale", "shear", "rotation", "hrotation", "translation", "composed")

# bands whose sandwich uses the reversion (points, planes); others use conjugation
_REVERSION_BANDS = (1, 3)


def H(t: float, s: float) -> float:
    """``(exp(t s) - 1) / s``, continued by ``t`` at ``s = 0``."""
    if abs(s) < H_BRANCH:
        return t
    return math.expm1(t * s) / s


@dataclass(frozen=True)
class Transform:
    """An operator ``U`` together with its sign ``epsilon = conj(U) U``.

    Attributes
    ----------
    U : OpElement
    epsilon : float
        +1 or -1.
    kind : str
        One of :data:`KINDS`.
    params : dict
        Constructor arguments, kept for diagnostics.
    generator : OpElement or None
        ``W`` with ``U = exp(W)`` when the transform has one.
    """

    U: OpElement
    epsilon: float
    kind: str
    params: dict = field(default_factory=dict)
    generator: OpElement | None = None

    def __call__(self, x):
        return apply(self, x)


def _make(U: OpElement, kind: str, params: dict, generator=None) -> Transform:
    eps = (op_conjugation(U) * U).scalar_part
    if not math.isclose(abs(eps), 1.0, abs_tol=1e-9):
        raise InternalConsistencyError(f"{kind}: conj(U) U = {eps!r}, expected +-1")
    return Transform(U, float(np.sign(eps)), kind, params, generator)


def _check_unit(v: np.ndarray, name: str) -> None:
    if abs(float(np.linalg.norm(v)) - 1.0) > FRAME_TOL:
        raise ValueError(f"{name} must be a unit vector, got |{name}| = {np.linalg.norm(v):.17g}")


def _check_frame(u: np.ndarray, v: np.ndarray) -> None:
    _check_unit(u, "u")
    _check_unit(v, "v")
    if abs(float(u @ v)) > FRAME_TOL:
        raise ValueError(f"u and v must be orthogonal, got u.v = {float(u @ v):.17g}")


def identity() -> Transform:
    return _make(IDENTITY, "identity", {}, IDENTITY * 0.0)


def reflection(n: Sequence[float]) -> Transform:
    """Mirror in the plane through the origin with unit normal ``n``.

    ``U = n* n - n n*``; epsilon is -1.
    """
    n = as_vector3(n)
    _check_unit(n, "n")
    N = ann(n) * cre(n) - cre(n) * ann(n)
    return _make(N, "reflection", {"n": n.tolist()})


def exp_commutator(u: Sequence[float], v: Sequence[float], t: float) -> OpElement:
    """Closed form of ``exp(t [u, v*] / 2) = exp(-t (v.u)/2) (1 + H(t) u v*)``."""
    u, v = as_vector3(u), as_vector3(v)
    s = float(u @ v)
    return math.exp(-t * s / 2.0) * (IDENTITY + H(t, s) * (cre(u) * ann(v)))


def scale_along(v: Sequence[float], t: float) -> Transform:
    """Stretch by ``exp(t |v|^2)`` along ``v``, leaving the orthogonal part fixed."""
    v = as_vector3(v)
    if not np.any(v):
        raise ValueError("scale direction must be nonzero")
    gen = t / 2.0 * commutator(cre(v), ann(v))
    return _make(exp_commutator(v, v, t), "scale", {"v": v.tolist(), "t": t}, gen)


def shear(u: Sequence[float], v: Sequence[float], t: float) -> Transform:
    """``p -> p + t |v|^2 p_v u`` for orthogonal nonzero ``u``, ``v``."""
    u, v = as_vector3(u), as_vector3(v)
    if not np.any(u) or not np.any(v):
        raise ValueError("shear vectors must be nonzero")
    if abs(float(u @ v)) > FRAME_TOL * (1.0 + np.linalg.norm(u) * np.linalg.norm(v)):
        raise ValueError(f"shear requires u.v = 0, got {float(u @ v):.17g}")
    gen = t / 2.0 * commutator(cre(u), ann(v))
    return _make(exp_commutator(u, v, t), "shear", {"u": u.tolist(), "v": v.tolist(), "t": t}, gen)


def rotation_split(u, v) -> tuple[OpElement, OpElement]:
    """``R1 = [u + u*, v + v*]/2`` and ``R2 = [u - u*, v - v*]/2``."""
    u, v = as_vector3(u), as_vector3(v)
    cu, au, cv, av = cre(u), ann(u), cre(v), ann(v)
    return 0.5 * commutator(cu + au, cv + av), 0.5 * commutator(cu - au, cv - av)


def hyperbolic_split(u, v) -> tuple[OpElement, OpElement]:
    """``S1 = [u - u*, v + v*]/2`` and ``S2 = [u + u*, v - v*]/2``."""
    u, v = as_vector3(u), as_vector3(v)
    cu, au, cv, av = cre(u), ann(u), cre(v), ann(v)
    return 0.5 * commutator(cu - au, cv + av), 0.5 * commutator(cu + au, cv - av)


def rotation(u: Sequence[float], v: Sequence[float], theta: float) -> Transform:
    """Rotation by ``theta`` in the plane of the orthonormal pair (u, v).

    Positive angles turn ``v`` towards ``u``. Built from the commuting
    factors ``exp(theta R1/2) exp(-theta R2/2)``, each of which squares to
    ``-1`` and so has an Euler closed form.
    """
    u, v = as_vector3(u), as_vector3(v)
    _check_frame(u, v)
    R1, R2 = rotation_split(u, v)
    c, s = math.cos(theta / 2.0), math.sin(theta / 2.0)
    U = (c * IDENTITY + s * R1) * (c * IDENTITY - s * R2)
    cu, au, cv, av = cre(u), ann(u), cre(v), ann(v)
    gen = theta / 2.0 * (commutator(cu, av) - commutator(cv, au))
    return _make(U, "rotation", {"u": u.tolist(), "v": v.tolist(), "theta": theta}, gen)


def hyperbolic_rotation(u: Sequence[float], v: Sequence[float], theta: float) -> Transform:
    """Hyperbolic rotation (boost) by ``theta`` in the plane of (u, v)."""
    u, v = as_vector3(u), as_vector3(v)
    _check_frame(u, v)
    S1, S2 = hyperbolic_split(u, v)
    c, s = math.cosh(theta / 2.0), math.sinh(theta / 2.0)
    U = (c * IDENTITY + s * S1) * (c * IDENTITY - s * S2)
    cu, au, cv, av = cre(u), ann(u), cre(v), ann(v)
    gen = theta / 2.0 * (commutator(cu, av) + commutator(cv, au))
    return _make(U, "hrotation", {"u": u.tolist(), "v": v.tolist(), "theta": theta}, gen)


def translation(v: Sequence[float]) -> Transform:
    """``U = exp(v/2) = 1 + v/2``; moves unit points by ``v``, fixes vectors."""
    v = as_vector3(v)
    return _make(IDENTITY + 0.5 * cre(v), "translation", {"v": v.tolist()}, 0.5 * cre(v))


def compose(t1: Transform, t2: Transform) -> Transform:
    """``t1`` after ``t2``."""
    return Transform(
        t1.U * t2.U,
        t1.epsilon * t2.epsilon,
        "composed",
        {"outer": t1.kind, "inner": t2.kind},
    )


def frame_from(bivector: Multivector) -> tuple[np.ndarray, np.ndarray]:
    """Orthonormal (u, v) with ``u ^ v`` the normalized ``bivector``."""
    b = bivector.grade(2)
    norm = b.norm()
    if norm == 0.0:
        raise ValueError("frame of a zero bivector")
    n = hodge(b).to_vector() / norm
    seed = np.eye(3)[int(np.argmin(np.abs(n)))]
    u = seed - (seed @ n) * n
    u /= np.linalg.norm(u)
    v = np.cross(n, u)
    if wedge(Multivector.vector(u), Multivector.vector(v)).coeffs @ b.coeffs < 0:
        v = -v
    return u, v


def sandwich(U: OpElement, epsilon: float, x: KParavector) -> KParavector:
    """``epsilon U X U'`` with ``U'`` the reversion or conjugation by band."""
    right = op_reversion(U) if x.k in _REVERSION_BANDS else op_conjugation(U)
    out = epsilon * (U * iota(x.data) * right)
    if not is_creation_only(out):
        raise InternalConsistencyError(f"sandwich of a {x.k}-paravector left annihilation terms")
    data = vacuum(out)
    try:
        return KParavector.of(data, x.k)
    except ValueError as exc:
        raise InternalConsistencyError(str(exc)) from exc


def apply(T: Transform, x: Any) -> KParavector:
    """Apply ``T`` to a point, line segment, plane fragment or volume."""
    if not isinstance(x, KParavector):
        raise TypeError(f"cannot transform {type(x).__name__}")
    return sandwich(T.U, T.epsilon, x)


def _star_band(k: int) -> int:
    return 4 - k


def cotranslate(v: Sequence[float], x: KParavector) -> KParavector:
    """Star-conjugated translation, ``*T_v(*X)``.

    Equals ``X + A_k . v`` where ``A_k`` is the upper grade of ``X``; on a
    point it turns position into weight, ``p0 + p -> p0 + p.v + p``.
    """
    v = as_vector3(v)
    starred = KParavector.of(hodge(x.data), _star_band(x.k))
    moved = apply(translation(v), starred)
    return KParavector.of(hodge(moved.data), x.k)


def cotranslate_closed(v: Sequence[float], x: KParavector) -> KParavector:
    """Closed form ``X + A_k . v`` of :func:`cotranslate`."""
    v = as_vector3(v)
    return KParavector.of(x.data + interior(x.upper(), Multivector.vector(v)), x.k)


@dataclass(frozen=True)
class PerspectiveCamera:
    """Eye ``e`` and projection plane ``n . x = c`` (``n`` unit)."""

    eye: np.ndarray
    normal: np.ndarray
    c: float

    def __post_init__(self):
        object.__setattr__(self, "eye", as_vector3(self.eye))
        object.__setattr__(self, "normal", as_vector3(self.normal))
        object.__setattr__(self, "c", float(self.c))
        _check_unit(self.normal, "normal")
        if self.a == 0.0:
            raise EyeOnPlaneError("eye lies on the projection plane")

    @property
    def a(self) -> float:
        """Plane offset after moving the eye to the origin, ``c - n.e``."""
        return self.c - float(self.normal @ self.eye)


@dataclass(frozen=True)
class Projection:
    """Result of :func:`perspective_project`.

    Attributes
    ----------
    point : Point
        Weighted point at the projected location with weight
        ``a / (n.(p - e))``; negative when ``P`` is behind the eye.
    raw : Point
        Output of the translate/cotranslate/translate composition applied
        to ``P - E``. Its scalar is ``n.(p - e) / a``.
    location : ndarray
        The projected location, ``raw.vector / raw.scalar``; always on the plane.
    front : bool
        True when ``P`` is in front of the eye.
    """

    point: Point
    raw: Point
    location: np.ndarray
    front: bool


def perspective_operator(cam: PerspectiveCamera, x: KParavector) -> KParavector:
    """``T_e(W_{n/a}(T_{-e}(X)))``."""
    moved = apply(translation(-cam.eye), x)
    cot = cotranslate(cam.normal / cam.a, moved)
    return apply(translation(cam.eye), cot)


def perspective_project(cam: PerspectiveCamera, p: Point) -> Projection:
    """Perspective image of ``p`` from the camera eye onto its plane."""
    p = p.normalized() if isinstance(p, Point) else Point(p.data).normalized()
    depth = float(cam.normal @ (p.vector - cam.eye))
    if depth == 0.0:
        raise PointAtInfinityError("point lies in the eye plane parallel to the projection plane")
    diff = Point(p.data - Multivector.scalar(1.0) - Multivector.vector(cam.eye))
    raw = perspective_operator(cam, diff)
    location = raw.vector / raw.scalar
    weight = cam.a / depth
    point = Point(Multivector.scalar(weight) + Multivector.vector(weight * location))
    return Projection(point, raw, location, weight > 0)


def pseudo_perspective(n: Sequence[float], x: Point) -> Point:
    """Cotranslation by a unit ``n``; sends the eye ``1 - n`` to ``-n``."""
    n = as_vector3(n)
    _check_unit(n, "n")
    return cotranslate(n, x)
