"""Finite-dimensional bicomplex modules with the bicomplex inner product.

A :class:`BCVector` of length ``n`` is an element of ``BC^n``.  Its idempotent
split is a pair of complex vectors ``(x1, x2)`` and the inner product

    <x, y> = sum_i x_i * conj_star(y_i) = e1 <x1, y1> + e2 <x2, y2>

is linear in the first slot.  ``<x, x>`` always lands in the nonnegative
hyperbolic cone.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import math

import numpy as np

from . import _kernels
from .errors import DimensionMismatch
from .scalars import (
    Bicomplex,
    Hyperbolic,
    as_quadruples,
    bc_conj_star,
    bc_join,
    bc_mul,
    bc_split,
)

#: relative cutoff for dropping dependent vectors during orthonormalization
ORTHO_TOL = 1e-10


def _frozen(arr: np.ndarray) -> np.ndarray:
    arr = np.array(arr, dtype=np.float64, copy=True)
    arr.setflags(write=False)
    return arr


@dataclass(frozen=True)
class ComponentVector:
    """Complex vector living in one idempotent component (``component`` is 1 or 2)."""

    entries: np.ndarray
    component: int

    def __post_init__(self):
        if self.component not in (1, 2):
            raise ValueError("component must be 1 or 2")
        arr = np.array(self.entries, dtype=np.complex128, copy=True)
        arr.setflags(write=False)
        object.__setattr__(self, "entries", arr)

    def __len__(self):
        return len(self.entries)

    def inner(self, other: "ComponentVector") -> complex:
        if len(self) != len(other):
            raise DimensionMismatch(f"lengths differ: {len(self)} vs {len(other)}")
        return complex(np.vdot(other.entries, self.entries))

    def norm(self) -> float:
        return float(np.linalg.norm(self.entries))


class BCVector:
    """Immutable element of ``BC^n`` stored as an ``(n, 4)`` array of quadruples."""

    __slots__ = ("_q",)

    def __init__(self, entries):
        if isinstance(entries, BCVector):
            q = entries._q
        elif (isinstance(entries, (list, tuple)) and entries
              and isinstance(entries[0], Bicomplex)):
            q = np.array([e.to_list() for e in entries])
        else:
            q = as_quadruples(entries)
        if q.ndim != 2 or q.shape[0] < 1:
            raise ValueError(f"a BCVector needs shape (n, 4) with n >= 1, got {q.shape}")
        self._q = _frozen(q)

    @classmethod
    def from_components(cls, x1, x2) -> "BCVector":
        x1 = x1.entries if isinstance(x1, ComponentVector) else np.asarray(x1)
        x2 = x2.entries if isinstance(x2, ComponentVector) else np.asarray(x2)
        if x1.shape != x2.shape or x1.ndim != 1:
            raise DimensionMismatch(f"component shapes differ: {x1.shape} vs {x2.shape}")
        return cls(bc_join(x1, x2))

    @classmethod
    def basis(cls, n: int, index: int) -> "BCVector":
        q = np.zeros((n, 4))
        q[index, 0] = 1.0
        return cls(q)

    @classmethod
    def zeros(cls, n: int) -> "BCVector":
        return cls(np.zeros((n, 4)))

    @property
    def quadruples(self) -> np.ndarray:
        return self._q

    def components(self) -> tuple[np.ndarray, np.ndarray]:
        """Idempotent split as two complex arrays."""
        return bc_split(self._q)

    def split(self) -> tuple[ComponentVector, ComponentVector]:
        x1, x2 = self.components()
        return ComponentVector(x1, 1), ComponentVector(x2, 2)

    def __len__(self):
        return self._q.shape[0]

    def __getitem__(self, i) -> Bicomplex:
        return Bicomplex(*self._q[i])

    def __iter__(self):
        return (Bicomplex(*row) for row in self._q)

    def to_list(self) -> list[list[float]]:
        return (self._q + 0.0).tolist()

    def _check(self, other: "BCVector"):
        if len(self) != len(other):
            raise DimensionMismatch(f"lengths differ: {len(self)} vs {len(other)}")

    def __add__(self, other):
        if not isinstance(other, BCVector):
            return NotImplemented
        self._check(other)
        return BCVector(self._q + other._q)

    def __sub__(self, other):
        if not isinstance(other, BCVector):
            return NotImplemented
        self._check(other)
        return BCVector(self._q - other._q)

    def __neg__(self):
        return BCVector(-self._q)

    def scale(self, alpha) -> "BCVector":
        """Module action ``alpha * x`` for a bicomplex (or real/complex) scalar."""
        if not isinstance(alpha, Bicomplex):
            alpha = Bicomplex() + alpha
        return BCVector(bc_mul(alpha.to_array(), self._q))

    def __mul__(self, alpha):
        if isinstance(alpha, BCVector):
            return NotImplemented
        return self.scale(alpha)

    __rmul__ = __mul__

    def __eq__(self, other):
        if not isinstance(other, BCVector):
            return NotImplemented
        return self._q.shape == other._q.shape and bool(np.array_equal(self._q, other._q))

    __hash__ = None

    def __repr__(self):
        return f"BCVector({self._q.tolist()!r})"


def vec_split(x: BCVector) -> tuple[ComponentVector, ComponentVector]:
    return x.split()


def vec_join(x1, x2) -> BCVector:
    return BCVector.from_components(x1, x2)


def inner(x: BCVector, y: BCVector) -> Bicomplex:
    """``sum_i x_i * conj_star(y_i)``, linear in ``x``."""
    x._check(y)
    return Bicomplex(*bc_mul(x.quadruples, bc_conj_star(y.quadruples)).sum(axis=0))


def _euclid(z: np.ndarray) -> float:
    # scaled so tiny entries do not underflow
    m = float(np.max(np.abs(z))) if z.size else 0.0
    if m == 0.0:
        return 0.0
    return m * float(np.linalg.norm(z / m))


def _rms(a: float, b: float) -> float:
    """``sqrt((a^2 + b^2) / 2)`` without underflow; exact when ``a == b``."""
    m = max(a, b)
    if m == 0.0:
        return 0.0
    return m * math.sqrt(0.5 * ((a / m) ** 2 + (b / m) ** 2))


def norm_hyperbolic(x: BCVector) -> Hyperbolic:
    x1, x2 = x.components()
    return Hyperbolic.from_idempotent(_euclid(x1), _euclid(x2))


def norm_real(x: BCVector) -> float:
    x1, x2 = x.components()
    return _rms(_euclid(x1), _euclid(x2))


@dataclass(frozen=True)
class OrthonormalSet:
    """Result of componentwise Gram-Schmidt.

    ``vectors[a]`` joins the ``a``-th basis vector of each component, with a
    zero component once that side's basis is exhausted, so
    ``split(inner(v_a, v_b)) = (delta_ab [a < rank1], delta_ab [a < rank2])``.
    """

    vectors: tuple[BCVector, ...]
    rank1: int
    rank2: int
    basis1: np.ndarray
    basis2: np.ndarray

    def __len__(self):
        return len(self.vectors)

    def __iter__(self):
        return iter(self.vectors)

    def __getitem__(self, i):
        return self.vectors[i]


def orthonormalize_component(cols: np.ndarray, tol: float = ORTHO_TOL) -> np.ndarray:
    """Gram-Schmidt on the columns of a complex matrix.

    Columns whose residual falls to ``tol`` times the largest input column
    norm or below are dropped.
    """
    cols = np.ascontiguousarray(cols, dtype=np.complex128)
    if cols.shape[1] == 0:
        return np.zeros((cols.shape[0], 0), dtype=np.complex128)
    scale = float(np.max(np.linalg.norm(cols, axis=0)))
    if scale == 0.0:
        return np.zeros((cols.shape[0], 0), dtype=np.complex128)
    q, _ = _kernels.orthonormalize_columns(cols, tol * scale)
    return q


def orthonormalize_componentwise(vs: Sequence[BCVector], tol: float = ORTHO_TOL) -> OrthonormalSet:
    if not vs:
        raise ValueError("need at least one vector")
    n = len(vs[0])
    for v in vs:
        if len(v) != n:
            raise DimensionMismatch("vectors have different lengths")
    c1 = np.column_stack([v.components()[0] for v in vs])
    c2 = np.column_stack([v.components()[1] for v in vs])
    q1 = orthonormalize_component(c1, tol)
    q2 = orthonormalize_component(c2, tol)
    r1, r2 = q1.shape[1], q2.shape[1]
    vectors = []
    for a in range(max(r1, r2)):
        u1 = q1[:, a] if a < r1 else np.zeros(n, dtype=np.complex128)
        u2 = q2[:, a] if a < r2 else np.zeros(n, dtype=np.complex128)
        vectors.append(BCVector.from_components(u1, u2))
    return OrthonormalSet(tuple(vectors), r1, r2, q1, q2)
