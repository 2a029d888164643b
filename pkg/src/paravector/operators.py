"""
The algebra of transformations: operators on the exterior algebra generated
by creation operators ``e_i`` (left wedge) and annihilation operators ``e_i*``
(left contraction) subject to the canonical anticommutation relations

    e_i e_j + e_j e_i = 0,   e_i* e_j* + e_j* e_i* = 0,   e_i e_j* + e_j* e_i = delta_ij.

Elements are stored in normal order: 64 coefficients ``c[S, T]`` of the
monomials ``e_S e*_T`` where every creation factor stands left of every
annihilation factor and each group is in ascending index order.

Two independent routes exist for products. ``OpElement.__mul__`` uses
structure constants derived by rewriting words with the anticommutation
relations; ``OpElement.matrix()`` computes the induced 8x8 action on the
exterior algebra from the wedge/interior tables. Tests compare them.
"""
from __future__ import annotations

import math
from functools import lru_cache
from typing import Iterable, Sequence

import numpy as np

from .errors import DomainError
from .exterior import (
    INTERIOR_TABLE,
    N_BLADES,
    OMEGA_BLADE,
    WEDGE_TABLE,
    Multivector,
    blade_grade,
    blade_indices,
    grade_project,
    hodge,
)

N_OPS = N_BLADES * N_BLADES
CREATION_TOL = 1e-12

# A generator is (kind, index) with kind 0 = creation, 1 = annihilation.
_CRE, _ANN = 0, 1


def _blade_of(indices: Iterable[int]) -> int:
    s = 0
    for i in indices:
        s |= 1 << (i - 1)
    return s


@lru_cache(maxsize=None)
def _normal_order(word: tuple[tuple[int, int], ...]) -> tuple[tuple[int, int, float], ...]:
    """Rewrite a word of generators into normal order.

    Returns a tuple of (S, T, coefficient). Only one rewrite is needed: swap
    the first out-of-order adjacent pair, picking up a sign and, for an
    annihilator moved across its own creator, a contraction term.
    """
    for pos in range(len(word) - 1):
        (ka, ia), (kb, ib) = word[pos], word[pos + 1]
        if ka == kb and ia == ib:
            return ()
        if (ka, kb) == (_ANN, _CRE) or (ka == kb and ia > ib):
            head, tail = word[:pos], word[pos + 2 :]
            swapped = _normal_order(head + ((kb, ib), (ka, ia)) + tail)
            terms = {(s, t): -c for s, t, c in swapped}
            if (ka, kb) == (_ANN, _CRE) and ia == ib:
                for s, t, c in _normal_order(head + tail):
                    terms[(s, t)] = terms.get((s, t), 0.0) + c
            return tuple((s, t, c) for (s, t), c in terms.items() if c != 0.0)
    creators = [i for k, i in word if k == _CRE]
    annihilators = [i for k, i in word if k == _ANN]
    return ((_blade_of(creators), _blade_of(annihilators), 1.0),)


def _monomial_word(s: int, t: int) -> tuple[tuple[int, int], ...]:
    return tuple((_CRE, i) for i in blade_indices(s)) + tuple((_ANN, i) for i in blade_indices(t))


def _index(s: int, t: int) -> int:
    return s * N_BLADES + t


def _build_mul_table() -> np.ndarray:
    table = np.zeros((N_OPS, N_OPS, N_OPS))
    for s1 in range(N_BLADES):
        for t1 in range(N_BLADES):
            w1 = _monomial_word(s1, t1)
            for s2 in range(N_BLADES):
                for t2 in range(N_BLADES):
                    for s, t, c in _normal_order(w1 + _monomial_word(s2, t2)):
                        table[_index(s1, t1), _index(s2, t2), _index(s, t)] += c
    table.setflags(write=False)
    return table


def _build_reversion() -> np.ndarray:
    # column (S, T) holds the normal-ordered expansion of the reversed word
    rev = np.zeros((N_OPS, N_OPS))
    for s in range(N_BLADES):
        for t in range(N_BLADES):
            for s2, t2, c in _normal_order(tuple(reversed(_monomial_word(s, t)))):
                rev[_index(s2, t2), _index(s, t)] += c
    rev.setflags(write=False)
    return rev


def _build_action_basis() -> np.ndarray:
    basis = np.zeros((N_OPS, N_BLADES, N_BLADES))
    for s in range(N_BLADES):
        for t in range(N_BLADES):
            m = np.eye(N_BLADES)
            # rightmost factor acts first: e*_T = e*_t1 ... e*_tm
            for i in reversed(blade_indices(t)):
                m = INTERIOR_TABLE[1 << (i - 1)].T @ m
            for i in reversed(blade_indices(s)):
                m = WEDGE_TABLE[1 << (i - 1)].T @ m
            basis[_index(s, t)] = m
    basis.setflags(write=False)
    return basis


MUL_TABLE = _build_mul_table()
REVERSION = _build_reversion()
_DEGREE = np.array([blade_grade(s) + blade_grade(t) for s in range(N_BLADES) for t in range(N_BLADES)])
GRADE_INVOLUTION = np.diag((-1.0) ** _DEGREE)
GRADE_INVOLUTION.setflags(write=False)
CONJUGATION = REVERSION @ GRADE_INVOLUTION
CONJUGATION.setflags(write=False)
ACTION_BASIS = _build_action_basis()
# maps vec(8x8 action) back to normal-ordered coefficients; faithful, so invertible
_FROM_ACTION = np.linalg.inv(ACTION_BASIS.reshape(N_OPS, N_OPS).T)

_CREATION_MASK = np.array([t == 0 for s in range(N_BLADES) for t in range(N_BLADES)])


class OpElement:
    """Immutable element of the 64-dimensional algebra of transformations.

    ``*`` is the algebra product (or scaling by a real), ``+``/``-`` are
    linear. Use :func:`cre`, :func:`ann`, :func:`iota` to build elements.
    """

    __slots__ = ("_c",)

    def __init__(self, coeffs: Iterable[float]):
        c = np.array(coeffs, dtype=float).reshape(-1)
        if c.shape != (N_OPS,):
            raise ValueError(f"expected {N_OPS} coefficients, got {c.size}")
        c.setflags(write=False)
        self._c = c

    @classmethod
    def monomial(cls, s: int, t: int, value: float = 1.0) -> OpElement:
        c = np.zeros(N_OPS)
        c[_index(s, t)] = value
        return cls(c)

    @classmethod
    def scalar(cls, value: float) -> OpElement:
        return cls.monomial(0, 0, value)

    @classmethod
    def from_matrix(cls, m: np.ndarray) -> OpElement:
        """Inverse of :meth:`matrix`."""
        return cls(_FROM_ACTION @ np.asarray(m, dtype=float).reshape(-1))

    @property
    def coeffs(self) -> np.ndarray:
        return self._c

    def coeff(self, s: int, t: int) -> float:
        return float(self._c[_index(s, t)])

    def matrix(self) -> np.ndarray:
        """Induced linear map on the 8 blade coefficients."""
        return np.einsum("a,aij->ij", self._c, ACTION_BASIS)

    def norm(self) -> float:
        return float(np.linalg.norm(self._c))

    def allclose(self, other, atol: float = 1e-9) -> bool:
        return bool(np.allclose(self._c, _coerce(other)._c, rtol=0.0, atol=atol))

    @property
    def scalar_part(self) -> float:
        return float(self._c[0])

    def __add__(self, other):
        return OpElement(self._c + _coerce(other)._c)

    __radd__ = __add__

    def __sub__(self, other):
        return OpElement(self._c - _coerce(other)._c)

    def __rsub__(self, other):
        return OpElement(_coerce(other)._c - self._c)

    def __neg__(self):
        return OpElement(-self._c)

    def __mul__(self, other):
        if isinstance(other, OpElement):
            return op_mul(self, other)
        if isinstance(other, Multivector):
            return op_mul(self, iota(other))
        return OpElement(self._c * float(other))

    def __rmul__(self, other):
        if isinstance(other, Multivector):
            return op_mul(iota(other), self)
        return OpElement(self._c * float(other))

    def __truediv__(self, other):
        return OpElement(self._c / float(other))

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative powers are not defined")
        out = IDENTITY
        for _ in range(n):
            out = out * self
        return out

    def __eq__(self, other):
        if not isinstance(other, (OpElement, int, float)):
            return NotImplemented
        return bool(np.array_equal(self._c, _coerce(other)._c))

    def __hash__(self):
        return hash(self._c.tobytes())

    def __repr__(self):
        terms = []
        for s in range(N_BLADES):
            for t in range(N_BLADES):
                c = self._c[_index(s, t)]
                if c != 0.0:
                    word = "".join(f"e{i}" for i in blade_indices(s))
                    word += "".join(f"e{i}*" for i in blade_indices(t))
                    terms.append(f"{c:+g}{'*' + word if word else ''}")
        return f"OpElement({' '.join(terms) if terms else '0'})"


def _coerce(x) -> OpElement:
    if isinstance(x, OpElement):
        return x
    if isinstance(x, Multivector):
        return iota(x)
    if isinstance(x, (int, float, np.floating, np.integer)):
        return OpElement.scalar(float(x))
    raise TypeError(f"cannot interpret {type(x).__name__} as an operator")


IDENTITY = OpElement.scalar(1.0)
ZERO = OpElement(np.zeros(N_OPS))


def cre(v: Sequence[float]) -> OpElement:
    """Creation operator ``v = v^i e_i`` (left wedge by ``v``)."""
    c = np.zeros(N_OPS)
    for i, vi in enumerate(v):
        c[_index(1 << i, 0)] = vi
    return OpElement(c)


def ann(v: Sequence[float]) -> OpElement:
    """Annihilation operator ``v* = v^i e_i*`` (left contraction by ``v``)."""
    c = np.zeros(N_OPS)
    for i, vi in enumerate(v):
        c[_index(0, 1 << i)] = vi
    return OpElement(c)


def e(i: int) -> OpElement:
    return OpElement.monomial(1 << (i - 1), 0)


def e_star(i: int) -> OpElement:
    return OpElement.monomial(0, 1 << (i - 1))


OMEGA_OP = OpElement.monomial(OMEGA_BLADE, 0)


def iota(a: Multivector) -> OpElement:
    """Natural map: blade ``e_S`` goes to the creation monomial ``e_S``."""
    c = np.zeros(N_OPS)
    c[[_index(s, 0) for s in range(N_BLADES)]] = a.coeffs
    return OpElement(c)


def op_mul(x: OpElement, y: OpElement) -> OpElement:
    return OpElement(np.einsum("i,j,ijk->k", x.coeffs, y.coeffs, MUL_TABLE, optimize=True))


def op_apply(x: OpElement, phi: Multivector) -> Multivector:
    return Multivector(x.matrix() @ phi.coeffs)


def vacuum(x: OpElement) -> Multivector:
    """Action on the vacuum ``1``; recovers ``A`` from ``iota(A)``."""
    return op_apply(x, Multivector.scalar(1.0))


def op_involution(x: OpElement, kind: str) -> OpElement:
    """Reversion fixes the generators and reverses order; grade involution
    negates every generator; conjugation is their composition."""
    if kind == "reversion":
        return OpElement(REVERSION @ x.coeffs)
    if kind == "grade_involution":
        return OpElement(GRADE_INVOLUTION @ x.coeffs)
    if kind == "conjugation":
        return OpElement(CONJUGATION @ x.coeffs)
    raise ValueError(f"unknown involution {kind!r}")


def op_reversion(x: OpElement) -> OpElement:
    return op_involution(x, "reversion")


def op_conjugation(x: OpElement) -> OpElement:
    return op_involution(x, "conjugation")


def op_grade_involution(x: OpElement) -> OpElement:
    return op_involution(x, "grade_involution")


def commutator(x: OpElement, y: OpElement) -> OpElement:
    return x * y - y * x


def _inf_norm(m: np.ndarray) -> float:
    return float(np.max(np.sum(np.abs(m), axis=1)))


def expm_series(m: np.ndarray, tol: float = 1e-14) -> np.ndarray:
    """Matrix exponential by scaling and squaring with a truncated Taylor series.

    The square count makes the scaled norm fall below 0.5; the series stops
    once an added term has norm below ``tol``.
    """
    m = np.asarray(m, dtype=float)
    if not np.all(np.isfinite(m)):
        raise ValueError("matrix exponential of non-finite input")
    if tol <= 0:
        raise ValueError("tol must be positive")
    norm = _inf_norm(m)
    squarings = max(0, math.ceil(math.log2(norm / 0.5))) if norm > 0.5 else 0
    a = m / 2.0**squarings
    result = np.eye(m.shape[0])
    term = np.eye(m.shape[0])
    for n in range(1, 200):
        term = term @ a / n
        result = result + term
        if _inf_norm(term) < tol:
            break
    for _ in range(squarings):
        result = result @ result
    return result


def op_exp_series(x: OpElement, tol: float = 1e-14) -> OpElement:
    """``exp(x)`` computed on the induced 8x8 action."""
    if not np.all(np.isfinite(x.coeffs)):
        raise ValueError("exponential of an element with non-finite coefficients")
    return OpElement.from_matrix(expm_series(x.matrix(), tol))


def is_creation_only(x: OpElement, tol: float = CREATION_TOL) -> bool:
    scale = max(1.0, float(np.max(np.abs(x.coeffs))))
    return bool(np.max(np.abs(x.coeffs[~_CREATION_MASK])) <= tol * scale)


def _require_creation_only(x: OpElement, what: str) -> None:
    if not is_creation_only(x):
        raise DomainError(f"{what} is only defined for creation-only elements")


def op_grade_project(x: OpElement, k: int) -> OpElement:
    """Projection onto the k-paravector band, grades ``k-1`` and ``k``."""
    if not 0 <= k <= 4:
        raise ValueError(f"paravector band must be in [0, 4], got {k}")
    _require_creation_only(x, "band projection")
    a = vacuum(x)
    out = Multivector()
    for g in (k - 1, k):
        if 0 <= g <= 3:
            out = out + grade_project(a, g)
    return iota(out)


def op_star(x: OpElement) -> OpElement:
    """Hodge star on creation-only elements, through the vacuum."""
    _require_creation_only(x, "the star operator")
    return iota(hodge(vacuum(x)))


def bracket(i: int, x: OpElement) -> OpElement:
    """``{e_i* | X} = e_i* X - X^ e_i*`` with ``X^`` the grade involution.

    On a creation monomial of degree k this is ``e_i* X - (-1)^k X e_i*``.
    """
    return e_star(i) * x - op_grade_involution(x) * e_star(i)


def star_monomial(s: int) -> OpElement:
    """Star of the creation monomial ``e_S`` from the bracket definition,
    ``*(e_mu) = {tau(rev(e_mu)) | Omega}`` with ``tau(e_i) = e_i*``."""
    if s == 0:
        return OMEGA_OP
    # tau(rev(e_mu1 ... e_muk)) = e*_muk ... e*_mu1; the innermost bracket
    # takes the rightmost factor, which is e*_mu1
    out = OMEGA_OP
    for i in blade_indices(s):
        out = bracket(i, out)
    return out
