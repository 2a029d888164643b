"""
Exterior algebra of R^3 with an orthonormal Euclidean metric.

Elements are stored as 8 coefficients indexed by blade bitmask: bit ``i-1``
set means ``e_i`` is a factor, and the stored coefficient belongs to the blade
written in ascending index order (``e1^e3``, never ``e3^e1``).

Product tables for the wedge and interior products are built once at import
time and are read-only afterwards.
"""
from __future__ import annotations

from typing import Iterable, Sequence

import numpy as np

N_BLADES = 8
OMEGA_BLADE = 0b111

#: Blade bitmasks grouped by grade.
BLADES_BY_GRADE = tuple(
    tuple(s for s in range(N_BLADES) if bin(s).count("1") == k) for k in range(4)
)

INVOLUTIONS = ("grade_involution", "reversion", "conjugation")


def blade_grade(s: int) -> int:
    return bin(s).count("1")


def blade_indices(s: int) -> tuple[int, ...]:
    """Ascending 1-based indices of the factors of blade ``s``."""
    return tuple(i + 1 for i in range(3) if s >> i & 1)


def blade_name(s: int) -> str:
    if s == 0:
        return "1"
    return "e" + "".join(str(i) for i in blade_indices(s))


def _reorder_sign(s: int, t: int) -> int:
    """Sign of the permutation that sorts the concatenation ``e_S e_T``."""
    inversions = 0
    for i in blade_indices(s):
        inversions += sum(1 for j in blade_indices(t) if j < i)
    return -1 if inversions % 2 else 1


def _vector_contract(i: int, s: int) -> tuple[int, int]:
    """``e_i . e_S`` as (sign, blade); sign 0 when the result vanishes."""
    bit = 1 << (i - 1)
    if not s & bit:
        return 0, 0
    before = sum(1 for j in blade_indices(s) if j < i)
    return (-1 if before % 2 else 1), s & ~bit


def _contract_blades(s: int, t: int) -> tuple[int, int]:
    """Interior product of basis blades ``e_S . e_T``.

    Grade-wise rules: a scalar acts by multiplication, anything of positive
    grade annihilates a scalar, ``(a^b).X = a.(b.X)`` when grade(S) <= grade(T),
    and ``A_k . B_j = (-1)^(j(k-1)) B_j . A_k`` when k > j >= 1.
    """
    k, j = blade_grade(s), blade_grade(t)
    if k == 0:
        return 1, t
    if j == 0:
        return 0, 0
    if k > j:
        sign, blade = _contract_blades(t, s)
        return sign * (-1) ** (j * (k - 1)), blade
    sign, blade = 1, t
    for i in reversed(blade_indices(s)):
        step, blade = _vector_contract(i, blade)
        sign *= step
        if sign == 0:
            return 0, 0
    return sign, blade


def _table(fn) -> np.ndarray:
    # table[s, t] is the 8-vector of fn(e_s, e_t)
    out = np.zeros((N_BLADES, N_BLADES, N_BLADES))
    for s in range(N_BLADES):
        for t in range(N_BLADES):
            sign, blade = fn(s, t)
            if sign:
                out[s, t, blade] = sign
    out.setflags(write=False)
    return out


def _wedge_blades(s: int, t: int) -> tuple[int, int]:
    if s & t:
        return 0, 0
    return _reorder_sign(s, t), s | t


WEDGE_TABLE = _table(_wedge_blades)
INTERIOR_TABLE = _table(_contract_blades)

_GRADES = np.array([blade_grade(s) for s in range(N_BLADES)])
_INVOLUTION_SIGNS = {
    "grade_involution": (-1.0) ** _GRADES,
    "reversion": (-1.0) ** (_GRADES * (_GRADES - 1) // 2),
    "conjugation": (-1.0) ** (_GRADES * (_GRADES + 1) // 2),
}


class Multivector:
    """Immutable element of the exterior algebra of R^3.

    Parameters
    ----------
    coeffs : sequence of 8 floats
        Coefficients indexed by blade bitmask.
    """

    __slots__ = ("_c",)

    def __init__(self, coeffs: Iterable[float] = (0.0,) * N_BLADES):
        c = np.array(coeffs, dtype=float).reshape(-1)
        if c.shape != (N_BLADES,):
            raise ValueError(f"expected {N_BLADES} coefficients, got {c.size}")
        if not np.all(np.isfinite(c)):
            raise ValueError("multivector coefficients must be finite")
        c.setflags(write=False)
        self._c = c

    @classmethod
    def scalar(cls, value: float) -> Multivector:
        c = np.zeros(N_BLADES)
        c[0] = value
        return cls(c)

    @classmethod
    def vector(cls, v: Sequence[float]) -> Multivector:
        x, y, z = (float(a) for a in v)
        c = np.zeros(N_BLADES)
        c[1], c[2], c[4] = x, y, z
        return cls(c)

    @classmethod
    def blade(cls, s: int, value: float = 1.0) -> Multivector:
        c = np.zeros(N_BLADES)
        c[s] = value
        return cls(c)

    @property
    def coeffs(self) -> np.ndarray:
        return self._c

    def __getitem__(self, s: int) -> float:
        return float(self._c[s])

    def to_vector(self) -> np.ndarray:
        """Grade-1 coefficients as an (x, y, z) array."""
        return np.array([self._c[1], self._c[2], self._c[4]])

    def grade(self, k: int) -> Multivector:
        return grade_project(self, k)

    @property
    def scalar_part(self) -> float:
        return float(self._c[0])

    @property
    def trivector_part(self) -> float:
        return float(self._c[OMEGA_BLADE])

    def norm(self) -> float:
        return float(np.linalg.norm(self._c))

    def is_zero(self, tol: float = 0.0) -> bool:
        return bool(np.max(np.abs(self._c)) <= tol)

    def allclose(self, other: Multivector, atol: float = 1e-9) -> bool:
        return bool(np.allclose(self._c, _coerce(other)._c, rtol=0.0, atol=atol))

    def __add__(self, other):
        other = _coerce(other)
        return Multivector(self._c + other._c)

    __radd__ = __add__

    def __sub__(self, other):
        return Multivector(self._c - _coerce(other)._c)

    def __rsub__(self, other):
        return Multivector(_coerce(other)._c - self._c)

    def __neg__(self):
        return Multivector(-self._c)

    def __mul__(self, other):
        if isinstance(other, Multivector):
            return NotImplemented
        return Multivector(self._c * float(other))

    __rmul__ = __mul__

    def __truediv__(self, other):
        return Multivector(self._c / float(other))

    def __xor__(self, other):
        return wedge(self, _coerce(other))

    def __rxor__(self, other):
        return wedge(_coerce(other), self)

    def __eq__(self, other):
        if not isinstance(other, (Multivector, int, float)):
            return NotImplemented
        return bool(np.array_equal(self._c, _coerce(other)._c))

    def __hash__(self):
        return hash(self._c.tobytes())

    def __repr__(self):
        terms = [
            f"{self._c[s]:+g}{'' if s == 0 else '*' + blade_name(s)}"
            for s in range(N_BLADES)
            if self._c[s] != 0.0
        ]
        return f"Multivector({' '.join(terms) if terms else '0'})"


def _coerce(x) -> Multivector:
    if isinstance(x, Multivector):
        return x
    if isinstance(x, (int, float, np.floating, np.integer)):
        return Multivector.scalar(float(x))
    raise TypeError(f"cannot interpret {type(x).__name__} as a multivector")


ONE = Multivector.scalar(1.0)
E1 = Multivector.blade(0b001)
E2 = Multivector.blade(0b010)
E3 = Multivector.blade(0b100)
OMEGA = Multivector.blade(OMEGA_BLADE)


def vec(x: float, y: float, z: float) -> Multivector:
    return Multivector.vector((x, y, z))


def wedge(a: Multivector, b: Multivector) -> Multivector:
    """Exterior product ``a ^ b``."""
    return Multivector(np.einsum("i,j,ijk->k", a.coeffs, b.coeffs, WEDGE_TABLE))


def interior(a: Multivector, b: Multivector) -> Multivector:
    """Interior product ``a . b``, extended bilinearly from the blade rules."""
    return Multivector(np.einsum("i,j,ijk->k", a.coeffs, b.coeffs, INTERIOR_TABLE))


def grade_project(a: Multivector, k: int) -> Multivector:
    if not 0 <= k <= 3:
        raise ValueError(f"grade must be in [0, 3], got {k}")
    return Multivector(np.where(_GRADES == k, a.coeffs, 0.0))


def involution(a: Multivector, kind: str) -> Multivector:
    try:
        signs = _INVOLUTION_SIGNS[kind]
    except KeyError:
        raise ValueError(f"unknown involution {kind!r}; expected one of {INVOLUTIONS}") from None
    return Multivector(signs * a.coeffs)


def grade_involution(a: Multivector) -> Multivector:
    return involution(a, "grade_involution")


def reversion(a: Multivector) -> Multivector:
    return involution(a, "reversion")


def conjugation(a: Multivector) -> Multivector:
    return involution(a, "conjugation")


def scalar_product(a: Multivector, b: Multivector) -> float:
    """``(A|B)``: zero across grades, ``rev(A_k) . B_k`` within a grade."""
    total = a.scalar_part * b.scalar_part
    ra = reversion(a)
    for k in (1, 2, 3):
        total += interior(grade_project(ra, k), grade_project(b, k)).scalar_part
    return total


def hodge(a: Multivector) -> Multivector:
    """Hodge star, ``*A_k = rev(A_k) . Omega`` and ``*1 = Omega``."""
    return interior(reversion(a), OMEGA)
