import mpmath
import numpy as np
import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st
from hypothesis.extra.numpy import arrays

from hprodspec import graphs as g
from hprodspec.errors import NonFinite, NonSymmetric, NotCommuting, SeedNotEigenvector, SizeMismatch
from hprodspec.linalg import common_eigenbasis, commutator_norm, eigh, fix_signs


def random_symmetric(rng, n, scale=1.0):
    X = rng.normal(scale=scale, size=(n, n))
    return (X + X.T) / 2


def charpoly_roots(A):
    """Eigenvalues as roots of det(A - xI), computed in exact rational arithmetic."""
    M = sympy.Matrix([[sympy.Rational(float(x)) for x in row] for row in A])
    x = sympy.Symbol("x")
    coeffs = [sympy.Rational(c) for c in M.charpoly(x).all_coeffs()]
    mpmath.mp.dps = 50
    roots = mpmath.polyroots([mpmath.mpf(c.p) / c.q for c in coeffs], maxsteps=200, extraprec=200)
    return np.sort([float(mpmath.re(r)) for r in roots])[::-1]


symmetric_matrices = st.integers(1, 7).flatmap(
    lambda n: arrays(np.float64, (n, n), elements=st.floats(-10, 10, allow_subnormal=False))
).map(lambda X: (X + X.T) / 2)


class TestEigh:
    def test_identity(self):
        d = eigh(np.eye(2))
        np.testing.assert_array_equal(d.values, [1.0, 1.0])

    def test_complete_graph_k4(self):
        d = eigh(g.complete(4).adjacency())
        np.testing.assert_allclose(d.values, [3, -1, -1, -1], atol=1e-12)

    @pytest.mark.parametrize("seed", range(10))
    def test_matches_characteristic_polynomial(self, seed):
        A = random_symmetric(np.random.default_rng(seed), 5)
        np.testing.assert_allclose(eigh(A).values, charpoly_roots(A), atol=1e-10)

    def test_values_descending_and_invariants(self, rng):
        A = random_symmetric(rng, 9)
        d = eigh(A)
        assert np.all(np.diff(d.values) <= 0)
        np.testing.assert_allclose(d.vectors.T @ d.vectors, np.eye(9), atol=1e-10)
        assert np.max(d.residuals(A)) <= 1e-10 * max(1, np.linalg.norm(A))

    def test_sign_convention(self, rng):
        V = eigh(random_symmetric(rng, 6)).vectors
        lead = np.argmax(np.abs(V), axis=0)
        assert np.all(V[lead, np.arange(6)] > 0)

    def test_sign_tie_lowest_index_wins(self):
        V = fix_signs(np.array([[-0.5], [0.5], [0.5], [-0.5]]))
        assert V[0, 0] == 0.5

    def test_rejects_nonsymmetric(self):
        with pytest.raises(NonSymmetric):
            eigh([[1.0, 2.0], [0.0, 1.0]])

    def test_rejects_nonfinite(self):
        with pytest.raises(NonFinite):
            eigh([[np.nan, 0.0], [0.0, 1.0]])

    @settings(max_examples=60, deadline=None)
    @given(symmetric_matrices)
    def test_round_trip(self, A):
        d = eigh(A)
        R = d.vectors @ np.diag(d.values) @ d.vectors.T
        assert np.linalg.norm(A - R) <= 1e-9 * max(1, np.linalg.norm(A))


def brute_commutator(A, B):
    n = len(A)
    total = 0.0
    for i in range(n):
        for j in range(n):
            s = sum(A[i][k] * B[k][j] - B[i][k] * A[k][j] for k in range(n))
            total += s * s
    return total**0.5


class TestCommutatorNorm:
    def test_self(self, rng):
        A = random_symmetric(rng, 5)
        assert commutator_norm(A, A) == 0.0

    def test_example_factors_commute(self):
        A = g.from_edge_pairs(4, [(0, 2), (1, 3)]).adjacency()
        B = g.cycle(4).adjacency()
        assert brute_commutator(A, B) == 0.0
        assert commutator_norm(A, B) == 0.0

    def test_path_vs_edge(self):
        A = g.path(3).adjacency()
        B = g.from_edge_pairs(3, [(0, 2)]).adjacency()
        expected = brute_commutator(A, B)
        assert expected > 0
        assert commutator_norm(A, B) == pytest.approx(expected, rel=1e-14)

    def test_size_mismatch(self):
        with pytest.raises(SizeMismatch):
            commutator_norm(np.eye(2), np.eye(3))

    @settings(max_examples=40, deadline=None)
    @given(st.data())
    def test_symmetric_in_arguments(self, data):
        n = data.draw(st.integers(1, 6))
        elems = st.floats(-5, 5, allow_subnormal=False)
        A = data.draw(arrays(np.float64, (n, n), elements=elems))
        B = data.draw(arrays(np.float64, (n, n), elements=elems))
        assert commutator_norm(A, B) == commutator_norm(B, A)


def assert_common_basis(basis, family, tol=1e-8):
    U = basis.U
    n = U.shape[0]
    np.testing.assert_allclose(U.T @ U, np.eye(n), atol=1e-10)
    for j, A in enumerate(family):
        scale = max(1, np.linalg.norm(A))
        R = A @ U - U * basis.table[:, j]
        assert np.max(np.linalg.norm(R, axis=0)) <= tol * scale
        off = U.T @ A @ U
        off -= np.diag(np.diag(off))
        assert np.max(np.abs(off)) <= tol * scale


class TestCommonEigenbasis:
    def test_diagonal_family(self):
        D1 = np.diag([3.0, 1.0, 2.0])
        D2 = np.diag([5.0, 5.0, -1.0])
        basis = common_eigenbasis([D1, D2])
        assert_common_basis(basis, [D1, D2])
        # columns are standard basis vectors up to permutation
        np.testing.assert_allclose(np.abs(basis.U).sum(axis=0), 1.0)
        np.testing.assert_allclose(basis.table[:, 0], [3, 2, 1])
        np.testing.assert_allclose(basis.table[:, 1], [5, -1, 5])

    def test_example_family_with_seed(self, example_factors):
        family = [F.adjacency() for F in example_factors]
        seed = np.ones(4) / 2
        basis = common_eigenbasis(family, seed_vector=seed)
        assert_common_basis(basis, family)
        np.testing.assert_allclose(np.abs(basis.U[:, 0]), seed, atol=1e-14)
        expected = [[3, -1, -1, -1], [1, 1, -1, -1], [2, -2, 0, 0], [3, -1, -1, -1]]
        for j, spec in enumerate(expected):
            np.testing.assert_allclose(np.sort(basis.table[:, j]), np.sort(spec), atol=1e-12)
        # the seeded column carries the regular degrees
        np.testing.assert_allclose(basis.table[0], [3, 1, 2, 3], atol=1e-12)

    @pytest.mark.parametrize("seed", range(5))
    def test_random_circulant_family(self, seed):
        rng = np.random.default_rng(seed)
        family = [F.adjacency() for F in g.random_circulant_family(8, 3, rng)]
        basis = common_eigenbasis(family)
        assert_common_basis(basis, family)
        for j, A in enumerate(family):
            for i in range(8):
                u = basis.U[:, i]
                assert basis.table[i, j] == pytest.approx(u @ A @ u, abs=1e-12)

    def test_deterministic(self, rng):
        family = [F.adjacency() for F in g.random_cayley_family(4, 4, rng)]
        a = common_eigenbasis(family, seed_vector=np.ones(16))
        b = common_eigenbasis(family, seed_vector=np.ones(16))
        assert np.array_equal(a.U, b.U) and np.array_equal(a.table, b.table)

    def test_not_commuting_reports_pair(self):
        A = g.path(3).adjacency()
        B = g.from_edge_pairs(3, [(0, 2)]).adjacency()
        with pytest.raises(NotCommuting) as info:
            common_eigenbasis([np.eye(3), A, B])
        assert info.value.pair == (1, 2)
        assert info.value.norm == pytest.approx(commutator_norm(A, B))

    def test_seed_not_eigenvector(self):
        with pytest.raises(SeedNotEigenvector):
            common_eigenbasis([g.path(3).adjacency()], seed_vector=np.ones(3))

    def test_size_mismatch(self):
        with pytest.raises(SizeMismatch):
            common_eigenbasis([np.eye(2), np.eye(3)])

    def test_larger_cayley_family(self, rng):
        family = [F.adjacency() for F in g.random_cayley_family(5, 6, rng)]
        assert_common_basis(common_eigenbasis(family), family)
