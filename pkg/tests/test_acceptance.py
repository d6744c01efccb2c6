"""Acceptance gate: one test per criterion, each printing a PASS/FAIL line.

Run with ``pytest tests/test_acceptance.py -v``; the verdict table is
printed in the terminal summary.
"""
import json
import subprocess
import sys
from pathlib import Path

import numpy as np

from bicomplex import (
    E1,
    E2,
    ONE,
    BCVector,
    Bicomplex,
    MultiplicationOperator,
    adjoint,
    cyclic_direct_sum,
    hermitian_eig,
    inner,
    is_cyclic,
    krylov_matrix,
    krylov_ranks,
    l2_norm,
    norm_hyperbolic,
    norm_real,
    sample_function,
    spectral_decompose,
    unitary_to_l2,
)
from bicomplex.cli import main
from bicomplex.scalars import bc_join, bc_modulus, bc_mul, bc_split
from bicomplex.testing import (
    random_matrix,
    random_quadruples,
    random_self_adjoint,
    random_vector,
    repeated_spectrum,
    self_adjoint_with_spectra,
)

FIXTURES = Path(__file__).parent / "fixtures"


def seeded(k):
    return np.random.default_rng([2026, k])


def fmt(x):
    return f"{x:.2e}"


def test_01_idempotent_algebra(criterion):
    rng = seeded(1)
    a, b = random_quadruples(rng, 10_000), random_quadruples(rng, 10_000)
    (a1, a2), (b1, b2) = bc_split(a), bc_split(b)
    ma, mb = bc_modulus(a), bc_modulus(b)
    p1, p2 = bc_split(bc_mul(a, b))
    s1, s2 = bc_split(a + b)
    back = bc_join(a1, a2)
    worst = max(
        np.max(np.abs(p1 - a1 * b1) / (ma * mb)),
        np.max(np.abs(p2 - a2 * b2) / (ma * mb)),
        np.max(np.abs(s1 - (a1 + b1)) / (ma + mb)),
        np.max(np.abs(s2 - (a2 + b2)) / (ma + mb)),
        np.max(np.abs(back - a).max(axis=1) / ma),
    )
    ident = max((E1 * E1 - E1).modulus(), (E2 * E2 - E2).modulus(),
                (E1 + E2 - ONE).modulus(), (E1 * E2).modulus())
    criterion(1, "idempotent algebra", worst <= 1e-12 and ident <= 1e-12,
              f"max rel residual {fmt(worst)}, idempotent identities {fmt(ident)} (tol 1e-12)")


def test_02_modulus_consistency(criterion):
    a = random_quadruples(seeded(2), 10_000)
    quad = np.sqrt(np.sum(a * a, axis=1))
    worst = float(np.max(np.abs(bc_modulus(a) - quad) / quad))
    criterion(2, "modulus consistency", worst <= 1e-12, f"max rel diff {fmt(worst)} (tol 1e-12)")


def test_03_inner_product_axioms(criterion):
    rng = seeded(3)
    worst, nonneg = 0.0, True
    for _ in range(1000):
        n = int(rng.integers(1, 33))
        x, y, z = (random_vector(rng, n) for _ in range(3))
        alpha = Bicomplex(*rng.standard_normal(4))
        scale = norm_real(x) * (norm_real(y) + norm_real(z)) * (1 + alpha.modulus())
        for r in (inner(x, y + z) - inner(x, y) - inner(x, z),
                  inner(x.scale(alpha), y) - alpha * inner(x, y),
                  inner(x, y) - inner(y, x).conj_star()):
            worst = max(worst, r.modulus() / scale)
        xx = inner(x, x)
        nonneg = nonneg and xx.is_hyperbolic(1e-12) and xx.to_hyperbolic(1e-12).is_nonneg()
    criterion(3, "inner-product axioms", worst <= 1e-12 and nonneg,
              f"max rel residual {fmt(worst)} (tol 1e-12), <x,x> nonneg hyperbolic in all trials: {nonneg}")


def test_04_norm_relation(criterion):
    rng = seeded(4)
    worst = 0.0
    for _ in range(10_000):
        x = BCVector(rng.standard_normal((int(rng.integers(1, 65)), 4)))
        nx = norm_real(x)
        worst = max(worst, abs(norm_hyperbolic(x).modulus() - nx) / nx)
    criterion(4, "norm relation", worst <= 1e-12, f"max rel diff {fmt(worst)} (tol 1e-12)")


def test_05_adjoint_pairing(criterion):
    rng = seeded(5)
    worst = 0.0
    for _ in range(1000):
        n = int(rng.integers(1, 17))
        t, x, y = random_matrix(rng, n), random_vector(rng, n), random_vector(rng, n)
        scale = t.norm_x() * norm_real(x) * norm_real(y)
        worst = max(worst, (inner(x, t @ y) - inner(adjoint(t) @ x, y)).modulus() / scale)
    criterion(5, "adjoint pairing", worst <= 1e-11, f"max scaled residual {fmt(worst)} (tol 1e-11)")


def test_06_spectral_reconstruction(criterion):
    rng = seeded(6)
    worst_res = worst_unit = worst_out = 0.0
    hyperbolic = True
    for _ in range(200):
        t = random_self_adjoint(rng, int(rng.integers(2, 17)))
        dec = spectral_decompose(t)
        worst_res = max(worst_res, dec.residual / (1 + t.norm_x()))
        worst_unit = max(worst_unit, dec.unitarity_defect)
        hyperbolic = hyperbolic and all(m.embed().is_hyperbolic(0.0) for m in dec.M)
        for values, tc in zip(dec.component_spectra, t.components()):
            worst_out = max(worst_out, float(np.max(np.abs(values))) - np.linalg.norm(tc, 2))
    ok = worst_res <= 1e-10 and worst_unit <= 1e-10 and hyperbolic and worst_out <= 1e-10
    criterion(6, "spectral reconstruction", ok,
              f"residual/(1+|T|) {fmt(worst_res)}, unitarity {fmt(worst_unit)}, "
              f"interval excess {fmt(worst_out)} (tol 1e-10), hyperbolic: {hyperbolic}")


def test_07_eigensolver_oracle(criterion):
    rng = seeded(7)
    worst = 0.0
    for _ in range(1000):
        a, d = rng.standard_normal(2)
        b = complex(*rng.standard_normal(2))
        disc = np.sqrt((a - d) ** 2 + 4 * abs(b) ** 2)
        oracle = np.array([(a + d - disc) / 2, (a + d + disc) / 2])
        values, _ = hermitian_eig(np.array([[a, b], [np.conj(b), d]]))
        worst = max(worst, float(np.max(np.abs(values - oracle))) / max(1.0, abs(a), abs(d), abs(b)))
    criterion(7, "eigensolver oracle", worst <= 1e-12, f"max scaled abs diff {fmt(worst)} (tol 1e-12)")


def _brute_force_rank(a, v):
    # singular values of the explicit Krylov matrix, computed without the Arnoldi kernel
    k = np.column_stack([np.linalg.matrix_power(a, p) @ v for p in range(a.shape[0])])
    s = np.linalg.svd(k, compute_uv=False)
    return int(np.sum(s > 1e-9 * s[0])) if s[0] > 0 else 0


def test_08_cyclicity(criterion):
    rng = seeded(8)
    agree, engineered = 0, 0
    for trial in range(200):
        n = int(rng.integers(2, 7))
        kind = trial % 4
        spectra = [rng.choice(np.arange(-4, 5), n, replace=False).astype(float) for _ in range(2)]
        if kind == 1:
            spectra[int(rng.integers(0, 2))] = repeated_spectrum(rng, n)
        t = self_adjoint_with_spectra(rng, *spectra)
        w1 = rng.standard_normal(n) + 1j * rng.standard_normal(n)
        w2 = rng.standard_normal(n) + 1j * rng.standard_normal(n)
        if kind == 2:
            w2[:] = 0
        if kind == 3:
            # vector orthogonal to one eigenvector of component 1
            _, q = np.linalg.eigh(t.components()[0])
            w1 = w1 - q[:, 0] * np.vdot(q[:, 0], w1)
        engineered += kind != 0
        w = BCVector.from_components(w1, w2)
        t1, t2 = t.components()
        oracle = (_brute_force_rank(t1, w1), _brute_force_rank(t2, w2))
        got = krylov_ranks(t, w)
        ok = got == oracle and is_cyclic(t, w) == (oracle == (n, n))
        # the module's own Krylov matrix must span the same space
        k1, _ = krylov_matrix(t, w, n)
        ok = ok and np.linalg.matrix_rank(k1, tol=1e-9 * np.linalg.norm(k1, 2)) == oracle[0]
        agree += ok
    criterion(8, "cyclicity", agree == 200,
              f"agreement {agree}/200 with brute-force rank ({engineered} engineered instances)")


def test_09_cyclic_direct_sum(criterion):
    rng = seeded(9)
    worst_orth = worst_inv = 0.0
    sums_ok = cyclic_ok = True
    for _ in range(100):
        n = int(rng.integers(2, 13))
        t = self_adjoint_with_spectra(rng, repeated_spectrum(rng, n), repeated_spectrum(rng, n))
        dec = cyclic_direct_sum(t)
        worst_orth = max(worst_orth, dec.orthogonality_defect())
        worst_inv = max(worst_inv, dec.invariance_residual(t))
        sums_ok = sums_ok and dec.dimension_sums == (n, n)
        cyclic_ok = cyclic_ok and all(b.is_cyclic(t) for b in dec.blocks)
    ok = worst_orth <= 1e-10 and worst_inv <= 1e-10 and sums_ok and cyclic_ok
    criterion(9, "cyclic direct sum", ok,
              f"orthogonality {fmt(worst_orth)}, invariance {fmt(worst_inv)} (tol 1e-10), "
              f"dims sum to n: {sums_ok}, blocks cyclic: {cyclic_ok}")


def test_10_spectral_measure(criterion):
    rng = seeded(10)
    worst_sum = worst_mom = worst_int = worst_const = 0.0
    for _ in range(200):
        n = int(rng.integers(1, 13))
        spectra = [rng.choice(np.arange(-8, 9), n, replace=False).astype(float) for _ in range(2)]
        t = self_adjoint_with_spectra(rng, *spectra)
        rep = unitary_to_l2(t, random_vector(rng, n))
        mu = rep.measure
        worst_sum = max(worst_sum, abs(mu.weights1.sum() - 1), abs(mu.weights2.sum() - 1))
        worst_mom = max(worst_mom, max(rep.moment_residuals(t).values()))
        for c in (1, 2):
            worst_int = max(worst_int, rep.intertwining_residual(c, t))
            worst_const = max(worst_const, rep.constant_defect(c))
    ok = worst_sum <= 1e-12 and worst_mom <= 1e-10 and worst_int <= 1e-10 and worst_const <= 1e-10
    criterion(10, "spectral measure", ok,
              f"weight sum {fmt(worst_sum)} (tol 1e-12), moments {fmt(worst_mom)}, "
              f"intertwining {fmt(worst_int)}, U w = 1 {fmt(worst_const)} (tol 1e-10)")


def test_11_l2_discretization(criterion):
    rng = seeded(11)
    k = Bicomplex(0, 0, 0, 1)
    f = sample_function(k, 0.0, 1.0, 256)
    norms = [l2_norm(f, m) for m in ("quadruple", "components", "inner")]
    norm_err = max(abs(v - 1.0) for v in norms)
    m_t = MultiplicationOperator.canonical(-1.0, 1.0, 256)
    m_i = MultiplicationOperator(sample_function(Bicomplex(0, 1), -1.0, 1.0, 256))
    worst_t, best_i = 0.0, np.inf
    for _ in range(20):
        g = sample_function(lambda s: rng.standard_normal((s.size, 4)), -1.0, 1.0, 256)
        h = sample_function(lambda s: rng.standard_normal((s.size, 4)), -1.0, 1.0, 256)
        worst_t = max(worst_t, m_t.adjoint_pairing_residual(g, h))
        best_i = min(best_i, m_i.adjoint_pairing_residual(g, h))
    ok = (norm_err <= 1e-12 and worst_t <= 1e-12 and m_t.is_self_adjoint()
          and not m_i.is_self_adjoint() and best_i > 1e-6)
    criterion(11, "L2 discretization", ok,
              f"||k|| error {fmt(norm_err)} (tol 1e-12), t-pairing {fmt(worst_t)}, "
              f"i-pairing min {fmt(best_i)} (must fail)")


def test_12_cli_determinism_and_exit_codes(criterion, capsys):
    runs = [
        ["verify", "--seed", "11", "--trials", "5", "--input", str(FIXTURES / "simple_spectrum.json")],
        ["eig", "--input", str(FIXTURES / "simple_spectrum.json")],
        ["measure", "--input", str(FIXTURES / "simple_spectrum.json"), "--find-cyclic"],
    ]
    stable = True
    for argv in runs:
        outs = [subprocess.run([sys.executable, "-m", "bicomplex", *argv],
                               capture_output=True, check=False).stdout for _ in range(2)]
        stable = stable and outs[0] == outs[1] and len(outs[0]) > 0
    expected = {
        ("eig", "identity3.json"): 0,
        ("eig", "malformed_tuple.json"): 1,
        ("eig", "not_json.json"): 1,
        ("eig", "diag_i.json"): 2,
        ("measure", "identity_vector.json"): 4,
        ("measure", "diag12_vector.json"): 0,
    }
    codes = {}
    for (command, name), want in expected.items():
        codes[(command, name)] = main([command, "--input", str(FIXTURES / name)])
        json.loads(capsys.readouterr().out)
    codes[("eig --tol 0", "simple_spectrum.json")] = main(
        ["eig", "--input", str(FIXTURES / "simple_spectrum.json"), "--tol", "0"])
    expected[("eig --tol 0", "simple_spectrum.json")] = 3
    capsys.readouterr()
    codes_ok = codes == expected
    criterion(12, "CLI determinism and exit codes", stable and codes_ok,
              f"byte-identical: {stable}, exit codes match: {codes_ok} "
              f"({sorted(set(expected.values()))})")
