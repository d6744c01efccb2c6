"""Spectral measures, the unitary onto L^2(mu), and sampled bicomplex L^2[a, b].

For a self-adjoint ``T`` with cyclic vector ``w`` every component operator
``T_c`` has a simple spectrum ``lambda_1 < ... < lambda_n`` with eigenvectors
``u_i``.  The spectral measure of ``w_c`` (normalized) is atomic:

    mu_c = sum_i |u_i^H w_c|^2 delta(lambda_i)

and ``U_c h = (u_i^H h / u_i^H w_c)_i`` maps ``H_c`` isometrically onto
``L^2(mu_c)``, sends ``w_c`` to the constant function 1, and conjugates
``T_c`` into multiplication by ``lambda``.

The second half of the module discretizes bicomplex-valued functions on
``[a, b]`` with the midpoint rule; a function ``f`` splits samplewise as
``f = u e1 + v e2``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Union

import numpy as np

from .errors import GridMismatch, NotCyclic, ZeroComponent
from .hilbert import BCVector
from .operators import (
    RANK_TOL,
    BCMatrix,
    _require_self_adjoint,
    hermitian_eig,
    krylov_ranks,
)
from .scalars import (
    Bicomplex,
    Hyperbolic,
    as_quadruples,
    bc_conj_star,
    bc_join,
    bc_mul,
    bc_split,
)

WEIGHT_TOL = 1e-12
DEFAULT_SAMPLES = 256


@dataclass(frozen=True)
class AtomicMeasurePair:
    """Atomic probability measures ``mu_1``, ``mu_2`` for the two components.

    ``radius1``/``radius2`` are ``||T_1||_2`` and ``||T_2||_2``; the atoms of
    ``mu_c`` lie in ``[-radius_c, radius_c]``.
    """

    atoms1: np.ndarray
    weights1: np.ndarray
    atoms2: np.ndarray
    weights2: np.ndarray
    radius1: float = math.inf
    radius2: float = math.inf

    def component(self, c: int) -> tuple[np.ndarray, np.ndarray]:
        if c == 1:
            return self.atoms1, self.weights1
        if c == 2:
            return self.atoms2, self.weights2
        raise ValueError("component must be 1 or 2")

    def moment(self, m: int) -> tuple[float, float]:
        return (float(np.sum(self.weights1 * self.atoms1 ** m)),
                float(np.sum(self.weights2 * self.atoms2 ** m)))

    def to_dict(self) -> dict:
        return {
            "component1": {"atoms": (self.atoms1 + 0.0).tolist(), "weights": (self.weights1 + 0.0).tolist()},
            "component2": {"atoms": (self.atoms2 + 0.0).tolist(), "weights": (self.weights2 + 0.0).tolist()},
        }


def _normalized_components(t: BCMatrix, w: BCVector, tol: float):
    if len(w) != t.n:
        from .errors import DimensionMismatch

        raise DimensionMismatch(f"vector length {len(w)} does not match n = {t.n}")
    w1, w2 = w.components()
    n1, n2 = float(np.linalg.norm(w1)), float(np.linalg.norm(w2))
    scale = max(n1, n2)
    for c, nc in ((1, n1), (2, n2)):
        if nc == 0.0 or nc <= tol * scale:
            raise ZeroComponent(
                f"component {c} of the vector vanishes and cannot be normalized",
                ranks=krylov_ranks(t, w, tol),
            )
    ranks = krylov_ranks(t, w, tol)
    if ranks != (t.n, t.n):
        raise NotCyclic(
            f"vector is not cyclic: component Krylov ranks {ranks}, need ({t.n}, {t.n})",
            ranks=ranks,
        )
    return w1 / n1, w2 / n2


@dataclass(frozen=True)
class L2Representation:
    """Per-component unitaries ``U_c : H_c -> L^2(mu_c)``.

    ``U1``/``U2`` are ``n x n`` matrices whose row ``i`` evaluates a vector
    at atom ``i``.  ``overlaps_c[i] = u_i^H w_c``.
    """

    U1: np.ndarray
    U2: np.ndarray
    measure: AtomicMeasurePair
    eigenvectors: tuple[np.ndarray, np.ndarray]
    overlaps: tuple[np.ndarray, np.ndarray]
    vector: tuple[np.ndarray, np.ndarray]

    def unitary(self, c: int) -> np.ndarray:
        return self.U1 if c == 1 else self.U2

    def apply(self, c: int, h) -> np.ndarray:
        """Image of a component vector as a function on the atoms."""
        return self.unitary(c) @ np.asarray(h, dtype=np.complex128)

    def l2_norm(self, c: int, values) -> float:
        _, weights = self.measure.component(c)
        values = np.asarray(values)
        return float(np.sqrt(np.sum(weights * np.abs(values) ** 2)))

    def joined(self) -> tuple[BCMatrix, BCMatrix]:
        """``(U, M)`` with ``U = e1 U1 + e2 U2`` and ``M = diag(e1 atoms1 + e2 atoms2)``."""
        u = BCMatrix.from_components(self.U1, self.U2)
        m = BCMatrix.diag([Hyperbolic.from_idempotent(a, b)
                           for a, b in zip(self.measure.atoms1, self.measure.atoms2)])
        return u, m

    # verification helpers ----------------------------------------------------
    def isometry_defect(self, c: int) -> float:
        """``||D^(1/2) U_c - unitary||``: deviation of ``sqrt(weights) * U_c`` from unitarity."""
        _, weights = self.measure.component(c)
        s = np.sqrt(weights)[:, None] * self.unitary(c)
        return float(np.max(np.abs(s.conj().T @ s - np.eye(s.shape[0]))))

    def intertwining_residual(self, c: int, t: BCMatrix) -> float:
        """``max |U_c T_c - diag(atoms_c) U_c|``."""
        tc = t.components()[c - 1]
        atoms, _ = self.measure.component(c)
        u = self.unitary(c)
        return float(np.max(np.abs(u @ tc - atoms[:, None] * u)))

    def constant_defect(self, c: int) -> float:
        """``max |U_c w_c - 1|``."""
        return float(np.max(np.abs(self.apply(c, self.vector[c - 1]) - 1.0)))

    def moment_residuals(self, t: BCMatrix, orders=range(4)) -> dict[int, float]:
        """``|sum_i weight_i atom_i^m - <T_c^m w_c, w_c>|`` maximized over components."""
        out = {}
        comps = t.components()
        for m in orders:
            worst = 0.0
            for c in (1, 2):
                atoms, weights = self.measure.component(c)
                wc = self.vector[c - 1]
                tm = np.linalg.matrix_power(comps[c - 1], m)
                exact = np.vdot(wc, tm @ wc)
                worst = max(worst, abs(np.sum(weights * atoms ** m) - exact))
            out[m] = float(worst)
        return out


def unitary_to_l2(t: BCMatrix, w: BCVector, tol: float = RANK_TOL,
                  weight_tol: float = WEIGHT_TOL) -> L2Representation:
    _require_self_adjoint(t)
    wn = _normalized_components(t, w, tol)
    atoms, weights, vecs, overlaps, radii = [], [], [], [], []
    for c, tc in enumerate(t.components()):
        values, v = hermitian_eig(tc, hermitian_tol=np.inf)
        ov = v.conj().T @ wn[c]
        wt = np.abs(ov) ** 2
        if np.any(wt < weight_tol):
            bad = int(np.argmin(wt))
            raise NotCyclic(
                f"atom {values[bad]:.6g} of component {c + 1} has weight {wt[bad]:.3e}",
                ranks=krylov_ranks(t, w, tol),
            )
        atoms.append(values)
        weights.append(wt)
        vecs.append(v)
        overlaps.append(ov)
        radii.append(float(np.linalg.norm(tc, 2)))
    measure = AtomicMeasurePair(atoms[0], weights[0], atoms[1], weights[1], radii[0], radii[1])
    u1 = (vecs[0].conj().T) / overlaps[0][:, None]
    u2 = (vecs[1].conj().T) / overlaps[1][:, None]
    return L2Representation(u1, u2, measure, (vecs[0], vecs[1]),
                            (overlaps[0], overlaps[1]), wn)


def cyclic_measure(t: BCMatrix, w: BCVector, tol: float = RANK_TOL,
                   weight_tol: float = WEIGHT_TOL) -> AtomicMeasurePair:
    """Spectral measures of the normalized components of a cyclic vector."""
    return unitary_to_l2(t, w, tol, weight_tol).measure


# --------------------------------------------------------------------------
# sampled functions on [a, b]
# --------------------------------------------------------------------------

@dataclass(frozen=True)
class BCFunctionSamples:
    """A bicomplex function sampled at the ``N`` midpoints of ``[a, b]``."""

    a: float
    b: float
    values: np.ndarray

    def __post_init__(self):
        vals = np.array(as_quadruples(self.values), dtype=np.float64, copy=True)
        if vals.ndim != 2 or vals.shape[0] < 1:
            raise ValueError(f"values must have shape (N, 4), got {vals.shape}")
        if not self.b > self.a:
            raise ValueError("need a < b")
        vals.setflags(write=False)
        object.__setattr__(self, "a", float(self.a))
        object.__setattr__(self, "b", float(self.b))
        object.__setattr__(self, "values", vals)

    @property
    def n(self) -> int:
        return self.values.shape[0]

    @property
    def step(self) -> float:
        return (self.b - self.a) / self.n

    @property
    def grid(self) -> np.ndarray:
        return midpoint_grid(self.a, self.b, self.n)

    @property
    def weights(self) -> np.ndarray:
        return np.full(self.n, self.step)

    def same_grid(self, other: "BCFunctionSamples") -> bool:
        return (self.a, self.b, self.n) == (other.a, other.b, other.n)

    def to_dict(self) -> dict:
        return {"a": self.a, "b": self.b, "n": self.n, "values": self.values.tolist()}


def midpoint_grid(a: float, b: float, n: int) -> np.ndarray:
    h = (b - a) / n
    return a + h * (np.arange(n) + 0.5)


Sampler = Union[Callable[[np.ndarray], object], Bicomplex, Hyperbolic, float, complex]


def sample_function(func: Sampler, a: float, b: float, n: int = DEFAULT_SAMPLES) -> BCFunctionSamples:
    """Sample ``func`` at the midpoint grid.

    ``func`` may be a constant scalar, or a callable taking the grid array
    and returning either an ``(N, 4)`` array or a sequence of scalars.
    """
    t = midpoint_grid(a, b, n)
    if not callable(func):
        q = (Bicomplex() + func).to_array()
        return BCFunctionSamples(a, b, np.tile(q, (n, 1)))
    out = func(t)
    if isinstance(out, np.ndarray) and out.shape == (n, 4):
        return BCFunctionSamples(a, b, out)
    return BCFunctionSamples(a, b, np.array([(Bicomplex() + v).to_list() for v in out]))


def decompose_function(f: BCFunctionSamples) -> tuple[np.ndarray, np.ndarray]:
    """``(u, v)`` with ``u = (x0+x3) + i(x1-x2)`` and ``v = (x0-x3) + i(x1+x2)``."""
    return bc_split(f.values)


def join_function(u, v, a: float, b: float) -> BCFunctionSamples:
    return BCFunctionSamples(a, b, bc_join(u, v))


def _check_grid(f: BCFunctionSamples, g: BCFunctionSamples):
    if not f.same_grid(g):
        raise GridMismatch(f"grids differ: ({f.a}, {f.b}, {f.n}) vs ({g.a}, {g.b}, {g.n})")


def l2_inner(f: BCFunctionSamples, g: BCFunctionSamples) -> Bicomplex:
    """``sum_q h * f(t_q) * conj_star(g(t_q))``."""
    _check_grid(f, g)
    prod = bc_mul(f.values, bc_conj_star(g.values))
    return Bicomplex(*(f.step * prod.sum(axis=0)))


def l2_norm(f: BCFunctionSamples, method: str = "components") -> float:
    """Real norm ``||f||_X`` computed one of three equivalent ways.

    ``"quadruple"`` integrates ``x0^2 + x1^2 + x2^2 + x3^2``;
    ``"components"`` uses ``sqrt((||u||^2 + ||v||^2) / 2)``;
    ``"inner"`` takes the modulus of the hyperbolic square root of ``<f, f>``.
    """
    if method == "quadruple":
        return float(np.sqrt(f.step * np.sum(f.values ** 2)))
    if method == "components":
        u, v = decompose_function(f)
        nu = f.step * np.sum(np.abs(u) ** 2)
        nv = f.step * np.sum(np.abs(v) ** 2)
        return float(np.sqrt(0.5 * (nu + nv)))
    if method == "inner":
        return l2_inner(f, f).to_hyperbolic(tol=1e-12).sqrt().modulus()
    raise ValueError(f"unknown method {method!r}")


class MultiplicationOperator:
    """``(M f)(t_q) = symbol(t_q) * f(t_q)`` on a fixed sample grid."""

    def __init__(self, symbol: BCFunctionSamples):
        self.symbol = symbol

    @classmethod
    def canonical(cls, a: float, b: float, n: int = DEFAULT_SAMPLES) -> "MultiplicationOperator":
        """Multiplication by the coordinate ``t``."""
        t = midpoint_grid(a, b, n)
        q = np.zeros((n, 4))
        q[:, 0] = t
        return cls(BCFunctionSamples(a, b, q))

    def apply(self, f: BCFunctionSamples) -> BCFunctionSamples:
        _check_grid(self.symbol, f)
        return BCFunctionSamples(f.a, f.b, bc_mul(self.symbol.values, f.values))

    __call__ = apply

    def adjoint(self) -> "MultiplicationOperator":
        return MultiplicationOperator(
            BCFunctionSamples(self.symbol.a, self.symbol.b, bc_conj_star(self.symbol.values))
        )

    def is_self_adjoint(self, tol: float = 0.0) -> bool:
        """True iff the symbol is hyperbolic-valued (its ``i`` and ``j`` parts vanish)."""
        v = self.symbol.values
        return bool(np.all(np.abs(v[:, 1:3]) <= tol))

    def adjoint_pairing_residual(self, f: BCFunctionSamples, g: BCFunctionSamples) -> float:
        """``|<M f, g> - <f, M g>|`` as a bicomplex modulus."""
        return (l2_inner(self.apply(f), g) - l2_inner(f, self.apply(g))).modulus()
