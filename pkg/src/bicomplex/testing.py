"""Random instance generators for property checks and the ``verify`` command."""
from __future__ import annotations

import numpy as np

from .hilbert import BCVector
from .operators import BCMatrix


def random_quadruples(rng: np.random.Generator, size=()) -> np.ndarray:
    """Standard normal quadruples with shape ``size + (4,)``."""
    size = (size,) if isinstance(size, (int, np.integer)) else tuple(size)
    return rng.standard_normal(size + (4,))


def random_vector(rng: np.random.Generator, n: int) -> BCVector:
    return BCVector(rng.standard_normal((n, 4)))


def random_matrix(rng: np.random.Generator, n: int) -> BCMatrix:
    return BCMatrix(rng.standard_normal((n, n, 4)))


def random_self_adjoint(rng: np.random.Generator, n: int) -> BCMatrix:
    a = random_matrix(rng, n)
    return BCMatrix(0.5 * (a + a.adjoint()).quadruples)


def random_unitary(rng: np.random.Generator, n: int) -> np.ndarray:
    z = rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
    q, r = np.linalg.qr(z)
    return q * (np.diag(r) / np.abs(np.diag(r)))[None, :]


def hermitian_with_spectrum(rng: np.random.Generator, values) -> tuple[np.ndarray, np.ndarray]:
    """``Q diag(values) Q^H`` for a random unitary ``Q``; returns the matrix and ``Q``."""
    values = np.asarray(values, dtype=float)
    q = random_unitary(rng, values.size)
    a = (q * values[None, :]) @ q.conj().T
    return 0.5 * (a + a.conj().T), q


def repeated_spectrum(rng: np.random.Generator, n: int) -> np.ndarray:
    """Integer eigenvalues in ``[-4, 4]`` with at least one repeat when ``n > 1``."""
    k = min(int(rng.integers(1, max(2, n))), 9)
    distinct = rng.choice(np.arange(-4, 5), size=k, replace=False).astype(float)
    values = np.concatenate([distinct, rng.choice(distinct, size=n - k)])
    return np.sort(values)


def self_adjoint_with_spectra(rng: np.random.Generator, values1, values2) -> BCMatrix:
    t1, _ = hermitian_with_spectrum(rng, values1)
    t2, _ = hermitian_with_spectrum(rng, values2)
    return BCMatrix.from_components(t1, t2)
