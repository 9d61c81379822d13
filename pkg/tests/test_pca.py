import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from nqlindex.dataset import StandardizedMatrix
from nqlindex.pca import covariance, eigendecompose, explained_variance_ratio, pc1_scores


def direct_covariance(values):
    """Oracle: naive O(N d^2) double-loop summation."""
    n, d = values.shape
    cov = np.zeros((d, d))
    for i in range(d):
        for j in range(d):
            cov[i, j] = sum(values[r, i] * values[r, j] for r in range(n)) / n
    return cov


def plain_matrix(values, names=None):
    values = np.asarray(values, dtype=float)
    names = names or tuple(f"P{i}" for i in range(values.shape[0]))
    return StandardizedMatrix(values, values.mean(axis=0), np.ones(values.shape[1]), names)


class TestCovariance:
    def test_single_active_coordinate(self):
        m = plain_matrix([[1.0, 0, 0, 0], [-1.0, 0, 0, 0]])
        cov = covariance(m)
        expected = np.zeros((4, 4))
        expected[0, 0] = 1.0
        assert np.allclose(cov, expected)

    def test_shipped_diagonal_is_unit(self, matrix):
        cov = covariance(matrix)
        assert np.abs(np.diag(cov) - 1.0).max() < 1e-9
        assert np.abs(cov - cov.T).max() < 1e-12

    def test_matches_double_loop_oracle(self):
        rng = np.random.default_rng(3)
        values = rng.normal(size=(3, 4))
        values -= values.mean(axis=0)
        m = plain_matrix(values)
        assert np.allclose(covariance(m), direct_covariance(values), atol=1e-12)


class TestEigendecompose:
    def test_identity(self):
        basis = eigendecompose(np.eye(4))
        assert np.allclose(basis.eigenvalues, 1.0)
        assert basis.total_variance == pytest.approx(4.0)

    def test_block_two_by_two(self):
        # closed form for [[2,1],[1,2]]: eigenvalues 3 and 1
        cov = np.eye(4)
        cov[0, 0] = cov[1, 1] = 2.0
        cov[0, 1] = cov[1, 0] = 1.0
        basis = eigendecompose(cov)
        assert basis.eigenvalues[0] == pytest.approx(3.0, abs=1e-10)
        assert basis.eigenvalues[-1] == pytest.approx(1.0, abs=1e-10)

    def test_shipped_pc1_ratio(self, basis):
        ratio = basis.eigenvalues[0] / basis.total_variance
        assert 0.74 <= ratio <= 0.78

    def test_orthonormal_and_residuals(self, matrix, basis):
        gram = basis.components @ basis.components.T
        assert np.abs(gram - np.eye(4)).max() < 1e-9
        cov = covariance(matrix)
        for lam, vec in zip(basis.eigenvalues, basis.components):
            assert np.abs(cov @ vec - lam * vec).max() < 1e-8

    def test_descending_order_and_sign_convention(self, basis):
        assert (np.diff(basis.eigenvalues) <= 1e-15).all()
        for vec in basis.components:
            assert vec[np.argmax(np.abs(vec))] > 0

    def test_asymmetric_rejected(self):
        bad = np.eye(4)
        bad[0, 1] = 0.5
        with pytest.raises(ValueError):
            eigendecompose(bad)

    @given(st.integers(min_value=0, max_value=2**32 - 1))
    @settings(max_examples=40, deadline=None)
    def test_matches_lapack_oracle(self, seed):
        rng = np.random.default_rng(seed)
        a = rng.normal(size=(4, 4))
        cov = a @ a.T  # symmetric PSD
        basis = eigendecompose(cov)
        expected = np.sort(np.linalg.eigvalsh(cov))[::-1]
        assert np.allclose(basis.eigenvalues, expected, atol=1e-9 * max(1.0, expected[0]))
        for lam, vec in zip(basis.eigenvalues, basis.components):
            assert np.abs(cov @ vec - lam * vec).max() < 1e-8 * max(1.0, expected[0])

    def test_deterministic(self, matrix):
        a = eigendecompose(covariance(matrix))
        b = eigendecompose(covariance(matrix))
        assert (a.components == b.components).all()
        assert (a.eigenvalues == b.eigenvalues).all()


class TestExplainedVarianceRatio:
    def test_full_basis_is_one(self, basis):
        assert explained_variance_ratio(basis, 4) == pytest.approx(1.0, abs=1e-9)

    def test_identity_quarter(self):
        basis = eigendecompose(np.eye(4))
        assert explained_variance_ratio(basis, 1) == pytest.approx(0.25)

    def test_monotone_in_k(self, basis):
        ratios = [explained_variance_ratio(basis, k) for k in (1, 2, 3, 4)]
        assert all(b >= a for a, b in zip(ratios, ratios[1:]))

    def test_out_of_range(self, basis):
        with pytest.raises(ValueError):
            explained_variance_ratio(basis, 0)
        with pytest.raises(ValueError):
            explained_variance_ratio(basis, 5)


class TestPc1Scores:
    def test_unit_projection(self, basis):
        m = plain_matrix(np.vstack([basis.components[0], basis.components[0]]))
        assert np.allclose(pc1_scores(m, basis), 1.0)

    def test_orthogonal_projection(self, basis):
        m = plain_matrix(np.vstack([basis.components[1], basis.components[2]]))
        assert np.allclose(pc1_scores(m, basis), 0.0, atol=1e-12)

    def test_rank_one_residual_equivalence(self, matrix, basis):
        scores = pc1_scores(matrix, basis)
        recon = scores[:, None] * basis.components[0][None, :]
        mse = ((matrix.values - recon) ** 2).sum(axis=1).mean()
        assert mse == pytest.approx(basis.eigenvalues[1:].sum(), abs=1e-8)

    def test_projection_pythagoras(self, matrix, basis):
        sq = (matrix.values ** 2).sum(axis=1)
        parts = sum((matrix.values @ basis.components[k]) ** 2 for k in range(4))
        assert np.abs(sq - parts).max() < 1e-9

    def test_reconstruction_identity(self, matrix, basis):
        per_component = [np.mean((matrix.values @ basis.components[k]) ** 2) for k in range(4)]
        assert sum(per_component) == pytest.approx(basis.total_variance, abs=1e-9)
