"""Bicomplex-linear operators on ``BC^n`` and their spectral theory.

A :class:`BCMatrix` is a dense ``n x n`` matrix of bicomplex entries.  Its
idempotent split ``(T1, T2)`` is a pair of complex matrices, and every
question asked here (adjoints, eigenvalues, cyclic vectors, invariant
subspaces) decouples into the same question for ``T1`` and ``T2``:

    T = e1 T1 + e2 T2,   T^k w = e1 T1^k w1 + e2 T2^k w2.

Matrix norms ``||.||_X`` are the real Frobenius-type norm
``sqrt((||T1||_F^2 + ||T2||_F^2) / 2)``, i.e. the root sum of squares of
the four real coordinates of every entry.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional, Sequence

import numpy as np

from . import _kernels
from .errors import DimensionMismatch, NoConvergence, NotHermitian, NotSelfAdjoint
from .hilbert import BCVector, norm_real
from .scalars import Bicomplex, Hyperbolic, as_quadruples, bc_conj_star, bc_join, bc_mul, bc_split

SELF_ADJOINT_TOL = 1e-12
HERMITIAN_TOL = 1e-12
JACOBI_TOL = 1e-13
JACOBI_MAX_SWEEPS = 60
RESIDUAL_TOL = 1e-10
RANK_TOL = 1e-10
GAP_TOL = 1e-10


class BCMatrix:
    """Immutable ``n x n`` bicomplex matrix stored as an ``(n, n, 4)`` array."""

    __slots__ = ("_q",)

    def __init__(self, entries):
        if isinstance(entries, BCMatrix):
            q = entries._q
        elif (isinstance(entries, (list, tuple)) and entries
              and isinstance(entries[0], (list, tuple)) and entries[0]
              and isinstance(entries[0][0], Bicomplex)):
            q = np.array([[e.to_list() for e in row] for row in entries])
        else:
            q = as_quadruples(entries)
        if q.ndim != 3 or q.shape[0] != q.shape[1] or q.shape[0] < 1:
            raise DimensionMismatch(f"a BCMatrix needs shape (n, n, 4), got {q.shape}")
        q = np.array(q, dtype=np.float64, copy=True)
        q.setflags(write=False)
        self._q = q

    # construction ----------------------------------------------------------
    @classmethod
    def from_components(cls, t1, t2) -> "BCMatrix":
        t1 = np.asarray(t1, dtype=np.complex128)
        t2 = np.asarray(t2, dtype=np.complex128)
        if t1.shape != t2.shape or t1.ndim != 2 or t1.shape[0] != t1.shape[1]:
            raise DimensionMismatch(f"component shapes differ or not square: {t1.shape}, {t2.shape}")
        return cls(bc_join(t1, t2))

    @classmethod
    def identity(cls, n: int) -> "BCMatrix":
        q = np.zeros((n, n, 4))
        q[np.arange(n), np.arange(n), 0] = 1.0
        return cls(q)

    @classmethod
    def zeros(cls, n: int) -> "BCMatrix":
        return cls(np.zeros((n, n, 4)))

    @classmethod
    def diag(cls, values: Sequence) -> "BCMatrix":
        n = len(values)
        q = np.zeros((n, n, 4))
        for i, v in enumerate(values):
            v = Bicomplex() + v
            q[i, i] = v.to_array()
        return cls(q)

    # views -----------------------------------------------------------------
    @property
    def n(self) -> int:
        return self._q.shape[0]

    @property
    def quadruples(self) -> np.ndarray:
        return self._q

    def components(self) -> tuple[np.ndarray, np.ndarray]:
        return bc_split(self._q)

    def __getitem__(self, ij) -> Bicomplex:
        i, j = ij
        return Bicomplex(*self._q[i, j])

    def to_list(self) -> list:
        # "+ 0.0" folds negative zeros
        return (self._q + 0.0).tolist()

    # algebra ---------------------------------------------------------------
    def apply(self, x: BCVector) -> BCVector:
        """Matrix-vector product over the bicomplex ring (quadruple arithmetic)."""
        if len(x) != self.n:
            raise DimensionMismatch(f"vector length {len(x)} does not match n = {self.n}")
        return BCVector(bc_mul(self._q, x.quadruples[None, :, :]).sum(axis=1))

    def __call__(self, x: BCVector) -> BCVector:
        return self.apply(x)

    def __matmul__(self, other):
        if isinstance(other, BCVector):
            return self.apply(other)
        if isinstance(other, BCMatrix):
            if other.n != self.n:
                raise DimensionMismatch(f"sizes differ: {self.n} vs {other.n}")
            a1, a2 = self.components()
            b1, b2 = other.components()
            return BCMatrix.from_components(a1 @ b1, a2 @ b2)
        return NotImplemented

    def __add__(self, other):
        if not isinstance(other, BCMatrix):
            return NotImplemented
        if other.n != self.n:
            raise DimensionMismatch(f"sizes differ: {self.n} vs {other.n}")
        return BCMatrix(self._q + other._q)

    def __sub__(self, other):
        if not isinstance(other, BCMatrix):
            return NotImplemented
        if other.n != self.n:
            raise DimensionMismatch(f"sizes differ: {self.n} vs {other.n}")
        return BCMatrix(self._q - other._q)

    def __neg__(self):
        return BCMatrix(-self._q)

    def scale(self, alpha) -> "BCMatrix":
        alpha = Bicomplex() + alpha
        return BCMatrix(bc_mul(alpha.to_array(), self._q))

    def adjoint(self) -> "BCMatrix":
        return BCMatrix(bc_conj_star(np.swapaxes(self._q, 0, 1)))

    def norm_x(self) -> float:
        return float(np.sqrt(np.sum(self._q * self._q)))

    def __eq__(self, other):
        if not isinstance(other, BCMatrix):
            return NotImplemented
        return self._q.shape == other._q.shape and bool(np.array_equal(self._q, other._q))

    __hash__ = None

    def __repr__(self):
        return f"BCMatrix(n={self.n})"


def adjoint(t: BCMatrix) -> BCMatrix:
    """Entrywise star conjugate of the transpose."""
    return t.adjoint()


def self_adjoint_defect(t: BCMatrix) -> float:
    return (t - t.adjoint()).norm_x()


def is_self_adjoint(t: BCMatrix, tol: float = SELF_ADJOINT_TOL) -> bool:
    return self_adjoint_defect(t) <= tol * (1.0 + t.norm_x())


def _require_self_adjoint(t: BCMatrix, tol: float = SELF_ADJOINT_TOL):
    defect = self_adjoint_defect(t)
    if defect > tol * (1.0 + t.norm_x()):
        raise NotSelfAdjoint(
            f"operator is not self-adjoint: ||T - T*||_X = {defect:.3e}", defect=defect
        )


def op_split(t: BCMatrix) -> tuple[np.ndarray, np.ndarray]:
    return t.components()


def op_join(t1, t2) -> BCMatrix:
    return BCMatrix.from_components(t1, t2)


# --------------------------------------------------------------------------
# complex Hermitian eigensolver
# --------------------------------------------------------------------------

def _normalize_phases(v: np.ndarray) -> np.ndarray:
    idx = np.argmax(np.abs(v), axis=0)
    cols = np.arange(v.shape[1])
    pivots = v[idx, cols]
    mags = np.abs(pivots)
    phase = np.where(mags > 0, pivots.conj() / np.where(mags > 0, mags, 1.0), 1.0)
    v = v * phase[None, :]
    v[idx, cols] = mags
    return v


def hermitian_eig(a, tol: float = JACOBI_TOL, max_sweeps: int = JACOBI_MAX_SWEEPS,
                  hermitian_tol: float = HERMITIAN_TOL):
    """Eigen-decomposition of a complex Hermitian matrix by cyclic Jacobi.

    Returns ``(values, vectors)`` with ascending real eigenvalues and a
    unitary whose columns are the eigenvectors, each scaled so its
    largest-magnitude entry is real and positive.

    Raises :class:`NotHermitian` if ``||A - A^H||_F`` exceeds
    ``hermitian_tol * (1 + ||A||_F)`` and :class:`NoConvergence` if the
    off-diagonal mass is still above ``tol * ||A||_F`` after ``max_sweeps``.
    """
    a = np.array(a, dtype=np.complex128)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise DimensionMismatch(f"expected a square matrix, got shape {a.shape}")
    n = a.shape[0]
    norm = float(np.linalg.norm(a))
    defect = float(np.linalg.norm(a - a.conj().T))
    if defect > hermitian_tol * (1.0 + norm):
        raise NotHermitian(f"matrix is not Hermitian: ||A - A^H|| = {defect:.3e}", defect=defect)
    work = np.ascontiguousarray(0.5 * (a + a.conj().T))
    vecs = np.eye(n, dtype=np.complex128)
    sweeps, off = _kernels.jacobi_sweeps(work, vecs, tol * norm, max_sweeps)
    if off > tol * norm:
        raise NoConvergence(
            f"Jacobi did not converge in {sweeps} sweeps (off-diagonal mass {off:.3e})",
            off_diagonal=off, sweeps=sweeps,
        )
    values = np.diagonal(work).real.copy()
    order = np.argsort(values, kind="stable")
    return values[order], _normalize_phases(vecs[:, order])


# --------------------------------------------------------------------------
# spectral decomposition
# --------------------------------------------------------------------------

@dataclass(frozen=True)
class SpectralDecomposition:
    """``U T U* = diag(M)`` with ``U = e1 V1^H + e2 V2^H``.

    ``M[i]`` pairs the ``i``-th ascending eigenvalue of ``T1`` with the
    ``i``-th ascending eigenvalue of ``T2``.
    """

    U: BCMatrix
    M: tuple[Hyperbolic, ...]
    component_spectra: tuple[np.ndarray, np.ndarray]
    residual: float
    unitarity_defect: float
    eigenvectors: tuple[np.ndarray, np.ndarray] = field(repr=False)

    def diagonal(self) -> BCMatrix:
        return BCMatrix.diag(self.M)

    def reconstruct(self) -> BCMatrix:
        """``U* diag(M) U``, which should reproduce ``T``."""
        return self.U.adjoint() @ self.diagonal() @ self.U


def spectral_decompose(t: BCMatrix, self_adjoint_tol: float = SELF_ADJOINT_TOL,
                       tol: float = JACOBI_TOL,
                       max_sweeps: int = JACOBI_MAX_SWEEPS) -> SpectralDecomposition:
    _require_self_adjoint(t, self_adjoint_tol)
    t1, t2 = t.components()
    # self-adjointness of T already bounds the component defects
    l1, v1 = hermitian_eig(t1, tol, max_sweeps, hermitian_tol=np.inf)
    l2, v2 = hermitian_eig(t2, tol, max_sweeps, hermitian_tol=np.inf)
    u = BCMatrix.from_components(v1.conj().T, v2.conj().T)
    m = tuple(Hyperbolic.from_idempotent(float(a), float(b)) for a, b in zip(l1, l2))
    residual = (u @ t @ u.adjoint() - BCMatrix.diag(m)).norm_x()
    unitarity = (u @ u.adjoint() - BCMatrix.identity(t.n)).norm_x()
    return SpectralDecomposition(u, m, (l1, l2), residual, unitarity, (v1, v2))


# --------------------------------------------------------------------------
# Krylov spaces and cyclic vectors
# --------------------------------------------------------------------------

def krylov_matrix(t: BCMatrix, w: BCVector, depth: int) -> tuple[np.ndarray, np.ndarray]:
    """Component images of ``w, Tw, ..., T^(depth-1) w`` as ``n x depth`` columns."""
    if depth < 1:
        raise ValueError("depth must be >= 1")
    if len(w) != t.n:
        raise DimensionMismatch(f"vector length {len(w)} does not match n = {t.n}")
    cols = [w]
    for _ in range(depth - 1):
        cols.append(t.apply(cols[-1]))
    q = np.stack([c.quadruples for c in cols], axis=1)
    return bc_split(q)


def component_krylov_rank(a, v, tol: float = RANK_TOL, scale: Optional[float] = None) -> int:
    """Dimension of ``span{v, A v, A^2 v, ...}`` for a complex matrix ``A``.

    The start vector counts as zero when its norm is ``<= tol * scale``
    (``scale`` defaults to ``||v||``, so only an exact zero vanishes); a new
    Krylov direction is rejected once its orthogonal residual drops to
    ``tol * ||A||_2``.
    """
    basis = _component_krylov_basis(a, v, tol, scale)
    return basis.shape[1]


def _component_krylov_basis(a, v, tol, scale=None, prior=None):
    a = np.ascontiguousarray(a, dtype=np.complex128)
    v = np.ascontiguousarray(v, dtype=np.complex128)
    n = a.shape[0]
    if v.shape != (n,):
        raise DimensionMismatch(f"vector length {v.shape} does not match n = {n}")
    vnorm = float(np.linalg.norm(v))
    if scale is None:
        scale = vnorm
    if vnorm == 0.0 or vnorm <= tol * scale:
        return np.zeros((n, 0), dtype=np.complex128)
    if prior is None:
        prior = np.zeros((n, 0), dtype=np.complex128)
    anorm = float(np.linalg.norm(a, 2)) if n else 0.0
    return _kernels.krylov_basis(a, v / vnorm, np.ascontiguousarray(prior), tol, tol * anorm,
                                 n - prior.shape[1])


def krylov_ranks(t: BCMatrix, w: BCVector, tol: float = RANK_TOL) -> tuple[int, int]:
    if len(w) != t.n:
        raise DimensionMismatch(f"vector length {len(w)} does not match n = {t.n}")
    t1, t2 = t.components()
    w1, w2 = w.components()
    scale = max(float(np.linalg.norm(w1)), float(np.linalg.norm(w2)))
    return (component_krylov_rank(t1, w1, tol, scale),
            component_krylov_rank(t2, w2, tol, scale))


def is_cyclic(t: BCMatrix, w: BCVector, tol: float = RANK_TOL) -> bool:
    """True iff ``w`` is cyclic for ``T``, i.e. for both ``T1`` and ``T2``."""
    r1, r2 = krylov_ranks(t, w, tol)
    return r1 == t.n and r2 == t.n


def _spectrum_is_simple(values: np.ndarray, gap: float) -> bool:
    return values.size < 2 or float(np.min(np.diff(values))) > gap


def find_cyclic_vector(t: BCMatrix, tol: float = RANK_TOL,
                       gap_tol: float = GAP_TOL) -> Optional[BCVector]:
    """A cyclic vector of unit real norm, or ``None`` if none exists.

    For self-adjoint ``T`` one exists iff both component spectra are simple;
    the returned vector joins the per-component sums of eigenvectors.
    """
    _require_self_adjoint(t)
    gap = gap_tol * (1.0 + t.norm_x())
    t1, t2 = t.components()
    l1, v1 = hermitian_eig(t1, hermitian_tol=np.inf)
    l2, v2 = hermitian_eig(t2, hermitian_tol=np.inf)
    if not (_spectrum_is_simple(l1, gap) and _spectrum_is_simple(l2, gap)):
        return None
    w = BCVector.from_components(v1.sum(axis=1), v2.sum(axis=1))
    w = w.scale(1.0 / norm_real(w))
    return w if is_cyclic(t, w, tol) else None


# --------------------------------------------------------------------------
# cyclic direct sum
# --------------------------------------------------------------------------

@dataclass(frozen=True)
class CyclicBlock:
    """One cyclic submodule ``S = e1 S1 + e2 S2``.

    ``basis1``/``basis2`` hold orthonormal columns spanning ``S1``/``S2``
    (either may have zero columns) and ``cyclic_vector`` generates ``S``.
    """

    basis1: np.ndarray
    basis2: np.ndarray
    cyclic_vector: BCVector

    @property
    def dims(self) -> tuple[int, int]:
        return self.basis1.shape[1], self.basis2.shape[1]

    def restriction(self, t: BCMatrix):
        """Component operators restricted to the block, in its own bases."""
        t1, t2 = t.components()
        return (self.basis1.conj().T @ t1 @ self.basis1,
                self.basis2.conj().T @ t2 @ self.basis2)

    def restricted_vector(self):
        w1, w2 = self.cyclic_vector.components()
        return self.basis1.conj().T @ w1, self.basis2.conj().T @ w2

    def restricted_ranks(self, t: BCMatrix, tol: float = RANK_TOL) -> tuple[int, int]:
        r1, r2 = self.restriction(t)
        c1, c2 = self.restricted_vector()
        rank1 = component_krylov_rank(r1, c1, tol) if self.dims[0] else 0
        rank2 = component_krylov_rank(r2, c2, tol) if self.dims[1] else 0
        return rank1, rank2

    def is_cyclic(self, t: BCMatrix, tol: float = RANK_TOL) -> bool:
        """Whether the cyclic vector generates the restricted block in both components."""
        return self.restricted_ranks(t, tol) == self.dims

    def invariance_residual(self, t: BCMatrix) -> float:
        """``max_c ||T_c B_c - B_c (B_c^H T_c B_c)||_2``."""
        out = 0.0
        for tc, b in zip(t.components(), (self.basis1, self.basis2)):
            if b.shape[1]:
                tb = tc @ b
                out = max(out, float(np.linalg.norm(tb - b @ (b.conj().T @ tb), 2)))
        return out


@dataclass(frozen=True)
class CyclicDecomposition:
    """Orthogonal direct sum of cyclic, ``T``-invariant blocks."""

    n: int
    blocks: tuple[CyclicBlock, ...]

    @property
    def dimension_sums(self) -> tuple[int, int]:
        return (sum(b.dims[0] for b in self.blocks), sum(b.dims[1] for b in self.blocks))

    def stacked_bases(self) -> tuple[np.ndarray, np.ndarray]:
        return (np.column_stack([b.basis1 for b in self.blocks]),
                np.column_stack([b.basis2 for b in self.blocks]))

    def orthogonality_defect(self) -> float:
        """``max_c ||Q_c^H Q_c - I||_max`` over the stacked block bases."""
        out = 0.0
        for q in self.stacked_bases():
            out = max(out, float(np.max(np.abs(q.conj().T @ q - np.eye(q.shape[1])), initial=0.0)))
        return out

    def invariance_residual(self, t: BCMatrix) -> float:
        return max((b.invariance_residual(t) for b in self.blocks), default=0.0)


def _eigen_clusters(values: np.ndarray, gap: float) -> list[list[int]]:
    clusters: list[list[int]] = []
    for i, lam in enumerate(values):
        if clusters and lam - values[clusters[-1][-1]] <= gap:
            clusters[-1].append(i)
        else:
            clusters.append([i])
    return clusters


def _component_cyclic_blocks(a: np.ndarray, tol: float, gap: float):
    """Orthogonal cyclic blocks of one Hermitian component.

    The ``k``-th block is seeded with the sum of the ``k``-th eigenvector of
    every eigenvalue cluster of multiplicity > ``k``, which gives the fewest
    blocks possible.  If rounding leaves part of the space uncaptured, the
    remaining standard basis vectors are used as extra seeds.
    """
    n = a.shape[0]
    values, vecs = hermitian_eig(a, hermitian_tol=np.inf)
    clusters = _eigen_clusters(values, gap)
    seeds = []
    for k in range(max(len(c) for c in clusters)):
        seeds.append(sum(vecs[:, c[k]] for c in clusters if len(c) > k))
    seeds.extend(np.eye(n, dtype=np.complex128))

    captured = np.zeros((n, 0), dtype=np.complex128)
    blocks = []
    for seed in seeds:
        if captured.shape[1] == n:
            break
        seed = np.asarray(seed, dtype=np.complex128)
        basis = _component_krylov_basis(a, seed, tol, prior=captured)
        if basis.shape[1] == 0:
            continue
        blocks.append((basis, basis[:, 0].copy()))
        captured = np.column_stack([captured, basis])
    return blocks


def cyclic_direct_sum(t: BCMatrix, tol: float = RANK_TOL,
                      gap_tol: float = GAP_TOL) -> CyclicDecomposition:
    """Split ``BC^n`` into mutually orthogonal ``T``-invariant cyclic blocks.

    Each idempotent component is deflated on its own; block ``k`` of the
    result pairs the ``k``-th block of each component, so one side may be
    empty when the components need different numbers of blocks.
    """
    _require_self_adjoint(t)
    n = t.n
    gap = gap_tol * (1.0 + t.norm_x())
    t1, t2 = t.components()
    b1 = _component_cyclic_blocks(t1, tol, gap)
    b2 = _component_cyclic_blocks(t2, tol, gap)
    empty = np.zeros((n, 0), dtype=np.complex128)
    zero = np.zeros(n, dtype=np.complex128)
    blocks = []
    for k in range(max(len(b1), len(b2))):
        q1, s1 = b1[k] if k < len(b1) else (empty, zero)
        q2, s2 = b2[k] if k < len(b2) else (empty, zero)
        blocks.append(CyclicBlock(q1, q2, BCVector.from_components(s1, s2)))
    return CyclicDecomposition(n, tuple(blocks))
