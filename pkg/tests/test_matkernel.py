import numpy as np
import pytest

from antilin.errors import DimensionMismatch, NotHermitian, NotPsd, NotSymmetric
from antilin.generators import crandn, haar_unitary
from antilin.matkernel import (
    min_singular_real,
    numerical_rank,
    pinv,
    psd_sqrt,
    spectral_norm,
    takagi,
)


def takagi_valid(fac, b, rtol=1e-9):
    n = b.shape[0]
    scale = 1.0 + spectral_norm(b)
    assert spectral_norm(fac.u.conj().T @ fac.u - np.eye(n)) <= rtol
    assert spectral_norm(fac.reconstruct() - b) <= rtol * scale
    assert np.all(fac.sigma >= 0)
    assert np.all(np.diff(fac.sigma) <= 1e-12)


class TestTakagi:
    def test_swap_matrix(self):
        b = np.array([[0, 1], [1, 0]], dtype=complex)
        fac = takagi(b)
        np.testing.assert_allclose(fac.sigma, [1.0, 1.0], atol=1e-12)
        takagi_valid(fac, b)

    def test_candidate_factor_of_swap_is_valid(self):
        # direct multiplication oracle for a known valid factor
        b = np.array([[0, 1], [1, 0]], dtype=complex)
        u = np.array([[1, 1j], [1, -1j]]) / np.sqrt(2)
        assert spectral_norm(u.conj().T @ u - np.eye(2)) <= 1e-15
        assert spectral_norm(u @ np.diag([1.0, 1.0]) @ u.T - b) <= 1e-15

    def test_zero(self):
        fac = takagi(np.zeros((2, 2)))
        np.testing.assert_allclose(fac.sigma, [0.0, 0.0])
        np.testing.assert_allclose(fac.u, np.eye(2))

    def test_diag_2_i(self):
        b = np.diag([2.0, 1j])
        oracle = np.linalg.svd(b, compute_uv=False)  # independent SVD oracle
        fac = takagi(b)
        np.testing.assert_allclose(fac.sigma, oracle, atol=1e-12)
        np.testing.assert_allclose(fac.sigma, [2.0, 1.0], atol=1e-12)
        takagi_valid(fac, b)

    def test_not_symmetric(self):
        with pytest.raises(NotSymmetric):
            takagi(np.array([[0, 1], [0, 0]], dtype=complex))

    def test_non_square(self):
        with pytest.raises(DimensionMismatch):
            takagi(np.zeros((2, 3)))

    def test_random_batch(self, rng):
        # includes the reconstruction and sigma-vs-SVD invariants
        for k in range(200):
            n = int(rng.integers(1, 13))
            g = crandn(rng, n, n)
            b = 0.5 * (g + g.T)
            fac = takagi(b)
            takagi_valid(fac, b)
            np.testing.assert_allclose(
                fac.sigma,
                np.linalg.svd(b, compute_uv=False),
                atol=1e-9 * (1 + spectral_norm(b)),
            )

    def test_degenerate_clusters(self, rng):
        # engineered repeated singular values force the block rotation path
        for n, sigma in [(4, [2.0, 2.0, 2.0, 0.5]), (5, [1.0, 1.0, 0.3, 0.3, 0.0])]:
            u = haar_unitary(rng, n)
            b = (u * np.array(sigma)) @ u.T
            b = 0.5 * (b + b.T)
            fac = takagi(b)
            takagi_valid(fac, b)
            np.testing.assert_allclose(fac.sigma, sorted(sigma, reverse=True), atol=1e-9)


class TestPsdSqrt:
    def test_diagonal(self):
        np.testing.assert_allclose(psd_sqrt(np.diag([4.0, 1.0])), np.diag([2.0, 1.0]), atol=1e-12)

    def test_zero(self):
        np.testing.assert_allclose(psd_sqrt(np.zeros((3, 3))), np.zeros((3, 3)))

    def test_two_by_two(self):
        h = np.array([[2.0, 1.0], [1.0, 2.0]])
        r = psd_sqrt(h)
        np.testing.assert_allclose(r @ r, h, atol=1e-12)
        # eigendecomposition oracle: eigenvalues of the root are (1, sqrt(3))
        np.testing.assert_allclose(np.linalg.eigvalsh(r), [1.0, np.sqrt(3.0)], atol=1e-12)

    def test_not_psd(self):
        with pytest.raises(NotPsd):
            psd_sqrt(np.diag([1.0, -1.0]))

    def test_not_hermitian(self):
        with pytest.raises(NotHermitian):
            psd_sqrt(np.array([[0, 1], [0, 0]], dtype=complex))

    def test_clamps_tiny_negative(self):
        r = psd_sqrt(np.diag([1.0, -1e-14]))
        assert np.linalg.eigvalsh(r)[0] >= 0.0

    def test_sqrt_of_square_roundtrip(self, rng):
        for _ in range(50):
            n = int(rng.integers(1, 9))
            g = crandn(rng, n, n)
            h = g @ g.conj().T
            r = psd_sqrt(h)
            assert spectral_norm(r @ r - h) <= 1e-8 * (1 + spectral_norm(h))
            # and the other direction: the root of h @ h recovers h
            back = psd_sqrt(h @ h)
            assert spectral_norm(back - h) <= 1e-8 * (1 + spectral_norm(h))


class TestPinv:
    def test_examples(self):
        np.testing.assert_allclose(
            pinv(np.array([[0, 1], [0, 0]], dtype=complex)),
            np.array([[0, 0], [1, 0]]),
            atol=1e-14,
        )
        np.testing.assert_allclose(pinv(np.eye(3)), np.eye(3), atol=1e-14)
        # entrywise reciprocal oracle for a diagonal matrix
        np.testing.assert_allclose(
            pinv(np.diag([2.0, 1j])), np.diag([0.5, -1j]), atol=1e-14
        )

    @pytest.mark.parametrize("shape,rank", [((4, 4), 4), ((5, 3), 2), ((3, 6), 3), ((6, 6), 3)])
    def test_penrose_equations(self, rng, shape, rank):
        from conftest import random_rank_deficient

        m, n = shape
        a = random_rank_deficient(rng, m, n, rank).canon
        p = pinv(a)
        tol = 1e-9 * (1 + spectral_norm(a))
        assert spectral_norm(a @ p @ a - a) <= tol
        assert spectral_norm(p @ a @ p - p) <= tol
        assert spectral_norm((a @ p).conj().T - a @ p) <= tol
        assert spectral_norm((p @ a).conj().T - p @ a) <= tol


class TestMinSingularReal:
    def test_examples(self):
        assert min_singular_real(np.eye(2)) == pytest.approx(1.0)
        assert min_singular_real(np.diag([1.0, 0.0])) == pytest.approx(0.0, abs=1e-15)
        # SVD oracle for the realified scalar (P, Q) = (-4/3, 1/3)
        m = np.diag([-1.0, -5.0 / 3.0])
        assert min_singular_real(m) == pytest.approx(
            np.linalg.svd(m, compute_uv=False)[-1]
        )
        assert min_singular_real(m) == pytest.approx(1.0)

    def test_requires_square(self):
        with pytest.raises(DimensionMismatch):
            min_singular_real(np.zeros((2, 3)))


def test_numerical_rank(rng):
    from conftest import random_rank_deficient

    a = random_rank_deficient(rng, 6, 5, 3).canon
    assert numerical_rank(a) == 3
    assert numerical_rank(np.zeros((4, 4))) == 0
