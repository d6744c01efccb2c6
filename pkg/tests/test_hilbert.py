import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st
from hypothesis.extra.numpy import arrays

from bicomplex import (
    E1,
    K,
    ONE,
    BCVector,
    Bicomplex,
    DimensionMismatch,
    inner,
    norm_hyperbolic,
    norm_real,
    orthonormalize_componentwise,
    vec_join,
    vec_split,
)
from bicomplex.hilbert import ComponentVector, orthonormalize_component
from bicomplex.testing import random_vector


def vec(*entries) -> BCVector:
    return BCVector([Bicomplex(*e).to_list() if isinstance(e, tuple) else e.to_list() for e in entries])


def classical_gram_schmidt(cols, tol=1e-10):
    # textbook oracle: single projection pass, no reorthogonalization
    out = []
    scale = max(np.linalg.norm(c) for c in cols.T)
    for c in cols.T:
        w = c.astype(complex)
        for q in out:
            w = w - np.vdot(q, w) * q
        if np.linalg.norm(w) > tol * scale:
            out.append(w / np.linalg.norm(w))
    return np.column_stack(out) if out else np.zeros((cols.shape[0], 0))


quads = arrays(np.float64, st.tuples(st.integers(1, 8), st.just(4)),
               elements=st.floats(-100, 100, allow_nan=False))


class TestSplitJoin:
    def test_examples(self):
        x1, x2 = vec_split(vec(ONE, K))
        assert np.array_equal(x1.entries, [1, 1])
        assert np.array_equal(x2.entries, [1, -1])
        y1, y2 = vec_split(vec((0, 1, 1, 0), (0, 0, 0, 0)))
        assert np.array_equal(y1.entries, [0, 0])
        assert np.array_equal(y2.entries, [2j, 0])
        assert (x1.component, x2.component) == (1, 2)

    def test_round_trip_random(self, rng):
        for _ in range(50):
            x = random_vector(rng, 7)
            back = vec_join(*vec_split(x)).quadruples
            assert np.allclose(back, x.quadruples, rtol=0, atol=1e-14)

    @given(arrays(np.int64, st.tuples(st.integers(1, 6), st.just(4)), elements=st.integers(-20, 20)))
    def test_round_trip_exact_on_integers(self, q):
        x = BCVector(q.astype(float))
        assert vec_join(*vec_split(x)) == x

    def test_length_mismatch(self):
        with pytest.raises(DimensionMismatch):
            vec_join(np.zeros(2), np.zeros(3))
        with pytest.raises(DimensionMismatch):
            inner(BCVector.zeros(2), BCVector.zeros(3))
        with pytest.raises(DimensionMismatch):
            BCVector.zeros(2) + BCVector.zeros(3)

    def test_vectors_are_immutable(self):
        x = BCVector.basis(3, 1)
        with pytest.raises(ValueError):
            x.quadruples[0, 0] = 5.0

    def test_component_vector_inner(self):
        u = ComponentVector(np.array([1j, 2]), 1)
        v = ComponentVector(np.array([1, 1j]), 1)
        assert u.inner(v) == pytest.approx(1j * 1 + 2 * (-1j))
        assert u.norm() == pytest.approx(math.sqrt(5))


class TestInner:
    def test_basis_vectors(self):
        for i in range(3):
            e = BCVector.basis(3, i)
            assert inner(e, e) == ONE
            assert inner(e, BCVector.basis(3, (i + 1) % 3)) == Bicomplex(0)

    def test_zero_divisor_norm_square(self):
        x = vec(E1)
        assert inner(x, x) == E1
        assert inner(x, x).to_hyperbolic().is_nonneg()
        assert norm_real(x) > 0

    def test_split_is_pair_of_component_inner_products(self, rng):
        for _ in range(100):
            n = int(rng.integers(1, 12))
            x, y = random_vector(rng, n), random_vector(rng, n)
            (x1, x2), (y1, y2) = x.components(), y.components()
            got = inner(x, y).split()
            # np.vdot conjugates its first argument; the module product is linear in x
            expected = (np.vdot(y1, x1), np.vdot(y2, x2))
            scale = norm_real(x) * norm_real(y)
            assert abs(got[0] - expected[0]) <= 1e-12 * 2 * scale
            assert abs(got[1] - expected[1]) <= 1e-12 * 2 * scale

    def test_conjugate_linear_in_second_slot(self, rng):
        for _ in range(50):
            x, y = random_vector(rng, 4), random_vector(rng, 4)
            alpha = Bicomplex(*rng.standard_normal(4))
            lhs = inner(x, y.scale(alpha))
            rhs = alpha.conj_star() * inner(x, y)
            assert (lhs - rhs).modulus() <= 1e-12 * (1 + alpha.modulus()) * norm_real(x) * norm_real(y)

    @given(arrays(np.float64, st.tuples(st.integers(1, 8), st.just(4)),
                  elements=st.one_of(st.just(0.0), st.floats(1e-150, 1e100), st.floats(-1e100, -1e-150))))
    def test_self_inner_is_nonneg_hyperbolic_and_zero_only_at_zero(self, q):
        # entries bounded away from underflow so that squares stay representable
        x = BCVector(q)
        xx = inner(x, x)
        scale = max(1.0, xx.modulus())
        h = xx.to_hyperbolic(tol=1e-12 * scale)
        assert h.is_nonneg(tol=1e-12 * scale)
        if np.any(q != 0):
            assert xx.modulus() > 0
        else:
            assert xx == Bicomplex(0)

    @given(quads, st.data())
    def test_axioms(self, q, data):
        n = q.shape[0]
        x = BCVector(q)
        y = BCVector(data.draw(arrays(np.float64, (n, 4), elements=st.floats(-100, 100))))
        z = BCVector(data.draw(arrays(np.float64, (n, 4), elements=st.floats(-100, 100))))
        alpha = Bicomplex(*data.draw(st.lists(st.floats(-10, 10), min_size=4, max_size=4)))
        scale = max(1e-300, (norm_real(x) + 1) * (norm_real(y) + norm_real(z) + 1) * (1 + alpha.modulus()))
        for r in (
            inner(x, y + z) - inner(x, y) - inner(x, z),
            inner(x.scale(alpha), y) - alpha * inner(x, y),
            inner(x, y) - inner(y, x).conj_star(),
        ):
            assert r.modulus() <= 1e-12 * scale


class TestNorms:
    def test_examples(self):
        assert norm_hyperbolic(BCVector.zeros(3)).idempotent() == (0, 0)
        assert norm_hyperbolic(vec(E1)).idempotent() == (1, 0)
        h = norm_hyperbolic(vec(ONE, K))
        assert h.idempotent() == pytest.approx((math.sqrt(2), math.sqrt(2)), abs=1e-15)
        assert h.h2 == pytest.approx(0, abs=1e-15)
        assert norm_real(vec(ONE)) == 1
        assert norm_real(vec(E1)) == pytest.approx(1 / math.sqrt(2), rel=1e-15)

    def test_zero_divisor_norm_has_a_zero_coordinate(self):
        h = norm_hyperbolic(vec(E1, E1 * 3))
        assert h.a2 == 0 and h.a1 > 0

    def test_norm_relation(self, rng):
        for _ in range(200):
            x = random_vector(rng, int(rng.integers(1, 65)))
            assert abs(norm_hyperbolic(x).modulus() - norm_real(x)) <= 1e-12 * norm_real(x)

    def test_real_norm_equals_quadruple_norm(self, rng):
        x = random_vector(rng, 10)
        assert norm_real(x) == pytest.approx(np.linalg.norm(x.quadruples), rel=1e-13)

    def test_tiny_vectors_keep_positive_norm(self):
        x = vec((0, 0, 0, 1e-300))
        assert norm_real(x) > 0


class TestOrthonormalize:
    def test_scaling(self, backend):
        u = BCVector.from_components(np.array([0.6, 0.8j]), np.array([1j, 0]))
        out = orthonormalize_componentwise([u.scale(Bicomplex(2))])
        assert (out.rank1, out.rank2) == (1, 1)
        q1, q2 = out[0].components()
        for got, want in ((q1, u.components()[0]), (q2, u.components()[1])):
            assert abs(abs(np.vdot(want, got)) - 1) <= 1e-14

    def test_dependent_input(self, backend, rng):
        u = random_vector(rng, 4)
        out = orthonormalize_componentwise([u, u])
        assert (out.rank1, out.rank2) == (1, 1)
        assert len(out) == 1

    def test_matches_classical_gram_schmidt(self, backend):
        vs = [vec(ONE, Bicomplex(0)), vec(ONE, ONE)]
        out = orthonormalize_componentwise(vs)
        for c, basis in ((0, out.basis1), (1, out.basis2)):
            cols = np.column_stack([v.components()[c] for v in vs])
            assert np.allclose(basis, classical_gram_schmidt(cols), atol=1e-15)

    def test_component_ranks_may_differ(self, backend):
        # component 2 of both vectors is the same direction
        a = BCVector.from_components(np.array([1, 0, 0]), np.array([1, 1, 0]))
        b = BCVector.from_components(np.array([0, 1, 0]), np.array([2, 2, 0]))
        out = orthonormalize_componentwise([a, b])
        assert (out.rank1, out.rank2) == (2, 1)
        assert len(out) == 2
        assert np.array_equal(out[1].components()[1], np.zeros(3))

    def test_orthonormality_pattern(self, backend, rng):
        for _ in range(20):
            n = int(rng.integers(2, 9))
            m = int(rng.integers(1, n + 3))
            vs = [random_vector(rng, n) for _ in range(m)]
            out = orthonormalize_componentwise(vs)
            assert out.rank1 == out.rank2 == min(n, m)
            for a, va in enumerate(out):
                for b, vb in enumerate(out):
                    g1, g2 = inner(va, vb).split()
                    delta = 1.0 if a == b else 0.0
                    assert abs(g1 - delta) <= 1e-12 and abs(g2 - delta) <= 1e-12

    def test_agrees_with_numpy_qr_span(self, backend, rng):
        cols = rng.standard_normal((6, 4)) + 1j * rng.standard_normal((6, 4))
        q = orthonormalize_component(cols)
        qr, _ = np.linalg.qr(cols)
        # same span: projector difference vanishes
        assert np.abs(q @ q.conj().T - qr @ qr.conj().T).max() <= 1e-12

    def test_all_zero_input(self, backend):
        out = orthonormalize_componentwise([BCVector.zeros(3)])
        assert (out.rank1, out.rank2, len(out)) == (0, 0, 0)

    def test_empty_input_rejected(self):
        with pytest.raises(ValueError):
            orthonormalize_componentwise([])
