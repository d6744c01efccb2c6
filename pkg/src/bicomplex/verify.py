"""Randomized invariant families run by ``bicomplex verify``.

Each family draws ``trials`` random instances from a seeded generator and
reports the worst residual next to the tolerance it was judged against.
Failures are verdicts, never exceptions.
"""
from __future__ import annotations

from dataclasses import asdict, dataclass
from typing import Callable, Optional

import numpy as np

from . import testing
from .hilbert import BCVector, inner, norm_hyperbolic, norm_real
from .measure import unitary_to_l2
from .operators import (
    BCMatrix,
    adjoint,
    cyclic_direct_sum,
    hermitian_eig,
    is_self_adjoint,
    krylov_ranks,
    spectral_decompose,
)
from .scalars import E1, E2, Bicomplex, bc_join, bc_modulus, bc_mul, bc_split

FAULTS = ("adjoint-sign",)


@dataclass
class FamilyResult:
    family: str
    trials: int
    max_residual: float
    tolerance: float
    passed: bool

    def to_dict(self) -> dict:
        return asdict(self)


def _rel(a: np.ndarray, b: np.ndarray, scale) -> float:
    return float(np.max(np.abs(np.asarray(a) - np.asarray(b)) / np.maximum(scale, 1e-300)))


def idempotent_algebra(rng, trials, **_):
    a = testing.random_quadruples(rng, trials)
    b = testing.random_quadruples(rng, trials)
    a1, a2 = bc_split(a)
    b1, b2 = bc_split(b)
    p1, p2 = bc_split(bc_mul(a, b))
    s1, s2 = bc_split(a + b)
    ma, mb = bc_modulus(a), bc_modulus(b)
    scale = ma * mb
    worst = max(
        _rel(p1, a1 * b1, scale), _rel(p2, a2 * b2, scale),
        _rel(s1, a1 + b1, ma + mb), _rel(s2, a2 + b2, ma + mb),
        _rel(bc_join(a1, a2), a, ma[:, None]),
    )
    e = [E1 * E1 - E1, E2 * E2 - E2, E1 + E2 - 1, E1 * E2]
    worst = max(worst, max(x.modulus() for x in e))
    return worst, 1e-12


def modulus_consistency(rng, trials, **_):
    a = testing.random_quadruples(rng, trials)
    quad = np.sqrt(np.sum(a * a, axis=-1))
    return _rel(bc_modulus(a), quad, quad), 1e-12


def inner_product_axioms(rng, trials, **_):
    worst, ok = 0.0, True
    for _ in range(trials):
        n = int(rng.integers(1, 9))
        x, y, z = (testing.random_vector(rng, n) for _ in range(3))
        alpha = Bicomplex(*rng.standard_normal(4))
        scale = norm_real(x) * (norm_real(y) + norm_real(z)) * (1 + alpha.modulus())
        r = [
            inner(x, y + z) - inner(x, y) - inner(x, z),
            inner(x.scale(alpha), y) - alpha * inner(x, y),
            inner(x, y) - inner(y, x).conj_star(),
        ]
        worst = max(worst, max(v.modulus() for v in r) / scale)
        xx = inner(x, x)
        ok = ok and xx.is_hyperbolic(1e-12) and xx.to_hyperbolic(1e-12).is_nonneg()
    return worst, 1e-12, ok


def norm_relation(rng, trials, **_):
    worst = 0.0
    for _ in range(trials):
        x = testing.random_vector(rng, int(rng.integers(1, 17)))
        nx = norm_real(x)
        worst = max(worst, abs(norm_hyperbolic(x).modulus() - nx) / nx)
    return worst, 1e-12


def adjoint_pairing(rng, trials, fault: Optional[str] = None, **_):
    adj: Callable[[BCMatrix], BCMatrix] = adjoint
    if fault == "adjoint-sign":
        def adj(t):
            return -adjoint(t)
    worst = 0.0
    for _ in range(trials):
        n = int(rng.integers(1, 7))
        t = testing.random_matrix(rng, n)
        x, y = testing.random_vector(rng, n), testing.random_vector(rng, n)
        scale = t.norm_x() * norm_real(x) * norm_real(y)
        d = inner(x, t @ y) - inner(adj(t) @ x, y)
        worst = max(worst, d.modulus() / scale)
    return worst, 1e-11


def spectral_reconstruction(rng, trials, **_):
    worst = 0.0
    for _ in range(trials):
        t = testing.random_self_adjoint(rng, int(rng.integers(2, 7)))
        dec = spectral_decompose(t)
        worst = max(worst, dec.residual / (1 + t.norm_x()), dec.unitarity_defect)
    return worst, 1e-10


def eigensolver_oracle(rng, trials, **_):
    worst = 0.0
    for _ in range(trials):
        a, d = rng.standard_normal(2)
        b = complex(*rng.standard_normal(2))
        m = np.array([[a, b], [np.conj(b), d]])
        disc = np.sqrt((a - d) ** 2 + 4 * abs(b) ** 2)
        oracle = np.array([(a + d - disc) / 2, (a + d + disc) / 2])
        values, _ = hermitian_eig(m)
        worst = max(worst, float(np.max(np.abs(values - oracle))) / max(1.0, np.abs(m).max()))
    return worst, 1e-12


def _oracle_rank(a: np.ndarray, v: np.ndarray) -> int:
    # distinct eigenvalues (engineered gaps >= 1) whose eigenspace v touches
    values, vecs = np.linalg.eigh(a)
    coeff = vecs.conj().T @ v
    rank, i = 0, 0
    while i < len(values):
        j = i
        while j + 1 < len(values) and values[j + 1] - values[i] < 0.5:
            j += 1
        if np.linalg.norm(coeff[i:j + 1]) > 1e-6:
            rank += 1
        i = j + 1
    return rank


def cyclicity(rng, trials, **_):
    disagreements = 0
    for _ in range(trials):
        n = int(rng.integers(2, 7))
        spectra = []
        for _ in range(2):
            simple = rng.random() < 0.5
            spectra.append(rng.choice(np.arange(-4, 5), n, replace=False).astype(float)
                           if simple else testing.repeated_spectrum(rng, n))
        t = testing.self_adjoint_with_spectra(rng, *spectra)
        w1 = rng.standard_normal(n) + 1j * rng.standard_normal(n)
        w2 = rng.standard_normal(n) + 1j * rng.standard_normal(n)
        if rng.random() < 0.2:
            w2 = np.zeros(n, dtype=complex)
        w = BCVector.from_components(w1, w2)
        t1, t2 = t.components()
        expected = (_oracle_rank(t1, w1), _oracle_rank(t2, w2))
        if krylov_ranks(t, w) != expected:
            disagreements += 1
    return float(disagreements), 0.0


def direct_sum(rng, trials, **_):
    worst, ok = 0.0, True
    for _ in range(trials):
        n = int(rng.integers(2, 7))
        t = testing.self_adjoint_with_spectra(
            rng, testing.repeated_spectrum(rng, n), testing.repeated_spectrum(rng, n))
        dec = cyclic_direct_sum(t)
        worst = max(worst, dec.orthogonality_defect(), dec.invariance_residual(t))
        ok = ok and dec.dimension_sums == (n, n) and all(b.is_cyclic(t) for b in dec.blocks)
    return worst, 1e-10, ok


def spectral_measure(rng, trials, **_):
    worst, ok = 0.0, True
    for _ in range(trials):
        n = int(rng.integers(1, 7))
        spectra = [rng.choice(np.arange(-4, 5), n, replace=False).astype(float) for _ in range(2)]
        t = testing.self_adjoint_with_spectra(rng, *spectra)
        rep = unitary_to_l2(t, testing.random_vector(rng, n))
        sums = [abs(rep.measure.weights1.sum() - 1), abs(rep.measure.weights2.sum() - 1)]
        ok = ok and max(sums) <= 1e-12
        worst = max(worst, max(rep.moment_residuals(t).values()))
        for c in (1, 2):
            worst = max(worst, rep.intertwining_residual(c, t), rep.constant_defect(c))
    return worst, 1e-10, ok


FAMILIES: dict[str, Callable] = {
    "idempotent_algebra": idempotent_algebra,
    "modulus_consistency": modulus_consistency,
    "inner_product_axioms": inner_product_axioms,
    "norm_relation": norm_relation,
    "adjoint_pairing": adjoint_pairing,
    "spectral_reconstruction": spectral_reconstruction,
    "eigensolver_oracle": eigensolver_oracle,
    "cyclicity": cyclicity,
    "cyclic_direct_sum": direct_sum,
    "spectral_measure": spectral_measure,
}


def _input_families(t: BCMatrix, rng, trials, fault):
    out = []
    worst = 0.0
    for _ in range(trials):
        x, y = testing.random_vector(rng, t.n), testing.random_vector(rng, t.n)
        adj = adjoint(t) if fault != "adjoint-sign" else -adjoint(t)
        scale = max(t.norm_x(), 1e-300) * norm_real(x) * norm_real(y)
        worst = max(worst, (inner(x, t @ y) - inner(adj @ x, y)).modulus() / scale)
    out.append(FamilyResult("input_adjoint_pairing", trials, worst, 1e-11, worst <= 1e-11))
    if is_self_adjoint(t):
        dec = spectral_decompose(t)
        res = dec.residual / (1 + t.norm_x())
        out.append(FamilyResult("input_spectral_reconstruction", 1, res, 1e-10, res <= 1e-10))
    return out


def run_verify(seed: int = 0, trials: int = 50, matrix: Optional[BCMatrix] = None,
               fault: Optional[str] = None) -> list[FamilyResult]:
    """Run every family; ``trials == 0`` returns an empty list."""
    if fault is not None and fault not in FAULTS:
        raise ValueError(f"unknown fault {fault!r}")
    if trials <= 0:
        return []
    results = []
    for name, family in FAMILIES.items():
        # one child generator per family keeps families independent of each other
        rng = np.random.default_rng([seed, len(results)])
        worst, tol, *extra = family(rng, trials, fault=fault)
        worst = float(worst)
        ok = all(extra) and worst <= tol
        results.append(FamilyResult(name, trials, worst, tol, bool(ok)))
    if matrix is not None:
        rng = np.random.default_rng([seed, len(results)])
        results.extend(_input_families(matrix, rng, trials, fault))
    return results
