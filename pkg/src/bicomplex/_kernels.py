"""Hot numeric kernels: complex Jacobi sweeps, Gram-Schmidt and Krylov bases.

Every kernel exists twice.  The ``*_loops`` variants are written as explicit
loops and are compiled with ``numba.njit`` when numba is available; the
``*_numpy`` variants are vectorized over rows/columns and need nothing but
numpy.  The public names (``jacobi_sweeps``, ``orthonormalize_columns``,
``krylov_basis``) point at one family, chosen once at import time by
:mod:`bicomplex._config`.

All kernels work in place on, or return, ``complex128`` arrays.
"""
import math

import numpy as np

from . import _config

# off-diagonal entries below this are left alone; their phase is not computable
_TINY = 1e-290

# --------------------------------------------------------------------------
# loop implementations (numba targets)
# --------------------------------------------------------------------------


def _off_norm_loops(a):
    n = a.shape[0]
    total = 0.0
    for p in range(n):
        for q in range(n):
            if p != q:
                z = a[p, q]
                total += z.real * z.real + z.imag * z.imag
    return math.sqrt(total)


def _jacobi_sweeps_loops(a, v, tol_off, max_sweeps):
    """Cyclic Jacobi on Hermitian ``a``; accumulates rotations into ``v``.

    Returns ``(sweeps_done, off_norm)``; ``off_norm <= tol_off`` on success.
    """
    n = a.shape[0]
    off = _off_norm_loops(a)
    sweeps = 0
    while off > tol_off and sweeps < max_sweeps:
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = a[p, q]
                mag = abs(apq)
                if mag < _TINY:
                    continue
                ph = complex(apq.real / mag, apq.imag / mag)
                app = a[p, p].real
                aqq = a[q, q].real
                theta = (aqq - app) / (2.0 * mag)
                if abs(theta) > 1e150:
                    t = 0.5 / theta
                else:
                    t = 1.0 / (abs(theta) + math.sqrt(theta * theta + 1.0))
                    if theta < 0.0:
                        t = -t
                c = 1.0 / math.sqrt(t * t + 1.0)
                s = t * c
                sph = s * ph
                sphc = s * ph.conjugate()
                for k in range(n):
                    akp = a[k, p]
                    akq = a[k, q]
                    a[k, p] = c * akp - sphc * akq
                    a[k, q] = sph * akp + c * akq
                for k in range(n):
                    apk = a[p, k]
                    aqk = a[q, k]
                    a[p, k] = c * apk - sph * aqk
                    a[q, k] = sphc * apk + c * aqk
                a[p, p] = app - t * mag
                a[q, q] = aqq + t * mag
                a[p, q] = 0.0
                a[q, p] = 0.0
                for k in range(n):
                    vkp = v[k, p]
                    vkq = v[k, q]
                    v[k, p] = c * vkp - sphc * vkq
                    v[k, q] = sph * vkp + c * vkq
        sweeps += 1
        off = _off_norm_loops(a)
    return sweeps, off


def _project_out_loops(w, basis, count):
    # two classical Gram-Schmidt passes against basis[:, :count]
    n = w.shape[0]
    for _ in range(2):
        for j in range(count):
            coef = 0.0 + 0.0j
            for i in range(n):
                coef += basis[i, j].conjugate() * w[i]
            for i in range(n):
                w[i] -= coef * basis[i, j]


def _vec_norm_loops(w):
    total = 0.0
    for i in range(w.shape[0]):
        total += w[i].real * w[i].real + w[i].imag * w[i].imag
    return math.sqrt(total)


def _orthonormalize_columns_loops(cols, tol):
    """Gram-Schmidt with reorthogonalization; drops columns whose residual <= tol.

    Returns ``(q, keep)`` where ``q`` has ``keep.sum()`` orthonormal columns.
    """
    n, m = cols.shape
    q = np.zeros((n, m), dtype=np.complex128)
    keep = np.zeros(m, dtype=np.bool_)
    count = 0
    for j in range(m):
        w = cols[:, j].copy()
        _project_out_loops(w, q, count)
        nrm = _vec_norm_loops(w)
        if nrm > tol:
            for i in range(n):
                q[i, count] = w[i] / nrm
            keep[j] = True
            count += 1
    return q[:, :count].copy(), keep


def _krylov_basis_loops(a, start, prior, tol_start, tol_step, max_dim):
    """Orthonormal basis of span{start, a start, a^2 start, ...}.

    The span is kept orthogonal to the columns of ``prior``.  Expansion stops
    when the new direction's residual is <= ``tol_step`` or ``max_dim``
    vectors have been collected.  An empty basis means the start vector's
    residual against ``prior`` was <= ``tol_start``.
    """
    n = a.shape[0]
    m0 = prior.shape[1]
    basis = np.zeros((n, m0 + max_dim), dtype=np.complex128)
    for j in range(m0):
        for i in range(n):
            basis[i, j] = prior[i, j]
    w = start.copy()
    _project_out_loops(w, basis, m0)
    nrm = _vec_norm_loops(w)
    if nrm <= tol_start or max_dim == 0:
        return basis[:, m0:m0].copy()
    count = m0
    for i in range(n):
        basis[i, count] = w[i] / nrm
    count += 1
    while count - m0 < max_dim:
        w = np.zeros(n, dtype=np.complex128)
        for i in range(n):
            acc = 0.0 + 0.0j
            for k in range(n):
                acc += a[i, k] * basis[k, count - 1]
            w[i] = acc
        _project_out_loops(w, basis, count)
        nrm = _vec_norm_loops(w)
        if nrm <= tol_step:
            break
        for i in range(n):
            basis[i, count] = w[i] / nrm
        count += 1
    return basis[:, m0:count].copy()


# --------------------------------------------------------------------------
# vectorized numpy implementations
# --------------------------------------------------------------------------


def _off_norm_numpy(a):
    off = a.copy()
    np.fill_diagonal(off, 0.0)
    return float(np.linalg.norm(off))


def _jacobi_sweeps_numpy(a, v, tol_off, max_sweeps):
    n = a.shape[0]
    off = _off_norm_numpy(a)
    sweeps = 0
    while off > tol_off and sweeps < max_sweeps:
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = a[p, q]
                mag = abs(apq)
                if mag < _TINY:
                    continue
                ph = complex(apq.real / mag, apq.imag / mag)
                app = a[p, p].real
                aqq = a[q, q].real
                theta = (aqq - app) / (2.0 * mag)
                if abs(theta) > 1e150:
                    t = 0.5 / theta
                else:
                    t = math.copysign(1.0 / (abs(theta) + math.hypot(theta, 1.0)), theta)
                c = 1.0 / math.hypot(t, 1.0)
                s = t * c
                sph = s * ph
                sphc = s * ph.conjugate()
                colp = a[:, p].copy()
                colq = a[:, q]
                a[:, p] = c * colp - sphc * colq
                a[:, q] = sph * colp + c * colq
                rowp = a[p, :].copy()
                rowq = a[q, :]
                a[p, :] = c * rowp - sph * rowq
                a[q, :] = sphc * rowp + c * rowq
                a[p, p] = app - t * mag
                a[q, q] = aqq + t * mag
                a[p, q] = 0.0
                a[q, p] = 0.0
                vp = v[:, p].copy()
                vq = v[:, q]
                v[:, p] = c * vp - sphc * vq
                v[:, q] = sph * vp + c * vq
        sweeps += 1
        off = _off_norm_numpy(a)
    return sweeps, off


def _project_out_numpy(w, basis):
    if basis.shape[1] == 0:
        return w
    for _ in range(2):
        w = w - basis @ (basis.conj().T @ w)
    return w


def _orthonormalize_columns_numpy(cols, tol):
    n, m = cols.shape
    kept = []
    keep = np.zeros(m, dtype=bool)
    q = np.zeros((n, 0), dtype=np.complex128)
    for j in range(m):
        w = _project_out_numpy(cols[:, j].copy(), q)
        nrm = np.linalg.norm(w)
        if nrm > tol:
            kept.append(w / nrm)
            q = np.column_stack(kept)
            keep[j] = True
    return q, keep


def _krylov_basis_numpy(a, start, prior, tol_start, tol_step, max_dim):
    n = a.shape[0]
    w = _project_out_numpy(start.copy(), prior)
    nrm = np.linalg.norm(w)
    if nrm <= tol_start or max_dim == 0:
        return np.zeros((n, 0), dtype=np.complex128)
    vecs = [w / nrm]
    full = np.column_stack([prior, vecs[0]])
    while len(vecs) < max_dim:
        w = _project_out_numpy(a @ vecs[-1], full)
        nrm = np.linalg.norm(w)
        if nrm <= tol_step:
            break
        vecs.append(w / nrm)
        full = np.column_stack([full, vecs[-1]])
    return np.column_stack(vecs)


# --------------------------------------------------------------------------
# backend wiring
# --------------------------------------------------------------------------

jacobi_sweeps_numpy = _jacobi_sweeps_numpy
orthonormalize_columns_numpy = _orthonormalize_columns_numpy
krylov_basis_numpy = _krylov_basis_numpy

if _config.HAVE_NUMBA:
    import numba

    _jit = numba.njit(cache=True, nogil=True)
    _off_norm_loops = _jit(_off_norm_loops)
    _project_out_loops = _jit(_project_out_loops)
    _vec_norm_loops = _jit(_vec_norm_loops)
    jacobi_sweeps_numba = _jit(_jacobi_sweeps_loops)
    orthonormalize_columns_numba = _jit(_orthonormalize_columns_loops)
    krylov_basis_numba = _jit(_krylov_basis_loops)
else:  # pragma: no cover
    jacobi_sweeps_numba = orthonormalize_columns_numba = krylov_basis_numba = None

if _config.USE_NUMBA:
    jacobi_sweeps = jacobi_sweeps_numba
    orthonormalize_columns = orthonormalize_columns_numba
    krylov_basis = krylov_basis_numba
else:
    jacobi_sweeps = jacobi_sweeps_numpy
    orthonormalize_columns = orthonormalize_columns_numpy
    krylov_basis = krylov_basis_numpy

BACKENDS = {"numpy": (jacobi_sweeps_numpy, orthonormalize_columns_numpy, krylov_basis_numpy)}
if _config.HAVE_NUMBA:
    BACKENDS["numba"] = (jacobi_sweeps_numba, orthonormalize_columns_numba, krylov_basis_numba)
