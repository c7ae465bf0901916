import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from hypothesis.extra.numpy import arrays

from pnormdist.andmatrix import (
    check_and,
    det_sign_certificate,
    psd_factor,
    restrict_to_zero_sum,
    schoenberg_embed,
)
from pnormdist.errors import NotAndError, NotPsdError
from pnormdist.geometry import build_distance_matrix, pow_abs

UNIT_SQUARE = [[0.0, 0.0], [1.0, 0.0], [1.0, 1.0], [0.0, 1.0]]
UNIT_SQUARE_1NORM = np.array([[0.0, 1, 2, 1], [1, 0, 1, 2], [2, 1, 0, 1], [1, 2, 1, 0]])
TWO_POINT = np.array([[0.0, 1.0], [1.0, 0.0]])

# hand application of the entry formula B'_ij = A_i4 + A_4j - A_ij - A_44
# to the unit-square 1-norm matrix; eigenvalues {0, 2, 6} from the cubic
# (2-x) * x * (x-6) = 0
UNIT_SQUARE_RESTRICTED = np.array([[2.0, 2, 0], [2, 4, 2], [0, 2, 2]])
UNIT_SQUARE_RESTRICTED_EIGS = np.array([0.0, 2.0, 6.0])

# eigenvalues of the circulant matrix with first row (0, 1, 2, 1):
# lambda_k = w^k + 2 w^2k + w^3k over the 4th roots of unity
UNIT_SQUARE_EIGS = np.array([-2.0, -2.0, 0.0, 4.0])


def lemma_basis(n: int) -> np.ndarray:
    """Columns f^i = e^n - e^i (i < n), f^n = e^n."""
    F = -np.eye(n)
    F[-1, :] = 1.0
    F[-1, -1] = 1.0
    return F


class TestRestrictToZeroSum:
    def test_two_point(self):
        assert np.array_equal(restrict_to_zero_sum(TWO_POINT), np.array([[2.0]]))

    def test_unit_square_hand_values(self):
        B = restrict_to_zero_sum(UNIT_SQUARE_1NORM)
        assert np.array_equal(B, UNIT_SQUARE_RESTRICTED)
        assert np.allclose(np.linalg.eigvalsh(B), UNIT_SQUARE_RESTRICTED_EIGS, atol=1e-12)

    def test_zero_matrix(self):
        assert np.array_equal(restrict_to_zero_sum(np.zeros((5, 5))), np.zeros((4, 4)))

    def test_rejects_asymmetric(self):
        with pytest.raises(ValueError, match="symmetric"):
            restrict_to_zero_sum(np.array([[0.0, 1.0], [2.0, 0.0]]))

    @settings(max_examples=60, deadline=None)
    @given(
        a=arrays(
            np.float64,
            st.integers(2, 7).map(lambda n: (n, n)),
            elements=st.floats(-10, 10),
        )
    )
    def test_matches_explicit_basis_product(self, a):
        # independent path: form -F^T A F explicitly and take its leading block
        A = (a + a.T) / 2.0
        n = A.shape[0]
        F = lemma_basis(n)
        full = -F.T @ A @ F
        assert np.allclose(restrict_to_zero_sum(A), full[: n - 1, : n - 1], atol=1e-10)


class TestCheckAnd:
    def test_two_point_strictly_and(self):
        rep = check_and(TWO_POINT)
        assert rep.verdict == "strictly-AND"
        assert rep.det_sign == -1  # (-1)^(2-1)
        assert rep.det_log_magnitude == pytest.approx(0.0, abs=1e-14)

    def test_unit_square_and_but_singular(self):
        rep = check_and(UNIT_SQUARE_1NORM)
        assert rep.verdict == "AND"
        assert rep.det_sign == 0
        assert rep.det_log_magnitude is None
        # restricted spectrum is the negatives of {0, 2, 6}
        assert np.allclose(
            rep.restricted_eigenvalues, -UNIT_SQUARE_RESTRICTED_EIGS[::-1], atol=1e-12
        )
        assert np.allclose(np.linalg.eigvalsh(UNIT_SQUARE_1NORM), UNIT_SQUARE_EIGS, atol=1e-12)

    def test_euclidean_random_points_strictly_and(self):
        rng = np.random.default_rng(11)
        x = rng.standard_normal((5, 3))
        rep = check_and(build_distance_matrix(x, 2.0).entries)
        assert rep.verdict == "strictly-AND"
        assert rep.det_sign == 1  # (-1)^4

    def test_not_and(self):
        rep = check_and(np.eye(3))
        assert rep.verdict == "not-AND"

    def test_rejects_1x1(self):
        with pytest.raises(ValueError, match="n >= 2"):
            check_and(np.array([[0.0]]))

    def test_permutation_invariance(self):
        # the raw restricted eigenvalues depend on the (index-pinned) test
        # basis, but the verdict, inertia, trace and determinant do not
        rng = np.random.default_rng(12)
        x = rng.standard_normal((7, 2))
        A = build_distance_matrix(x, 1.5).entries
        perm = rng.permutation(7)
        rep = check_and(A)
        rep_p = check_and(A[np.ix_(perm, perm)])
        assert rep.verdict == rep_p.verdict
        assert rep.det_sign == rep_p.det_sign
        assert rep.trace == rep_p.trace
        assert rep.det_log_magnitude == pytest.approx(rep_p.det_log_magnitude, rel=1e-10)
        assert np.array_equal(
            np.sign(rep.restricted_eigenvalues), np.sign(rep_p.restricted_eigenvalues)
        )

    @settings(max_examples=60, deadline=None)
    @given(
        y=arrays(
            np.float64,
            st.tuples(st.integers(2, 7), st.integers(1, 4)),
            elements=st.floats(-5, 5),
        )
    )
    def test_squared_euclidean_matrices_are_and(self, y):
        # forward direction: |y_i - y_j|^2 always induces a non-positive
        # form on the zero-sum hyperplane
        G = y @ y.T
        sq = np.diag(G)[:, None] + np.diag(G)[None, :] - 2 * G
        sq = (sq + sq.T) / 2.0
        rep = check_and(sq, tol=1e-8)
        assert rep.verdict in ("AND", "strictly-AND")


class TestPsdFactor:
    def test_identity(self):
        P = psd_factor(np.eye(4))
        assert np.allclose(P.T @ P, np.eye(4), atol=1e-14)

    def test_scalar(self):
        P = psd_factor(np.array([[2.0]]))
        assert abs(P[0, 0]) == pytest.approx(np.sqrt(2.0), rel=1e-15)

    def test_rank_deficient_restriction(self):
        B = restrict_to_zero_sum(UNIT_SQUARE_1NORM)
        P = psd_factor(B)
        assert np.abs(P.T @ P - B).max() < 1e-12

    def test_rejects_indefinite(self):
        with pytest.raises(NotPsdError):
            psd_factor(np.diag([1.0, -1.0]))


class TestSchoenbergEmbed:
    def test_two_point(self):
        emb = schoenberg_embed(TWO_POINT)
        assert emb.vectors.shape == (2, 1)
        assert np.all(emb.vectors[-1] == 0.0)
        assert emb.squared_distances()[0, 1] == pytest.approx(1.0, abs=1e-14)

    def test_unit_square_reproduces_1norm_distances(self):
        emb = schoenberg_embed(UNIT_SQUARE_1NORM)
        assert emb.residual < 1e-12
        sq = emb.squared_distances()
        assert np.abs(sq - UNIT_SQUARE_1NORM).max() < 1e-12
        # distinct points give distinct embedded vectors
        for i in range(4):
            for j in range(i + 1, 4):
                assert not np.allclose(emb.vectors[i], emb.vectors[j])

    def test_pth_power_matrix_round_trip(self):
        rng = np.random.default_rng(13)
        x = rng.standard_normal((6, 3))
        p = 1.5
        A = np.zeros((6, 6))
        for i in range(6):
            for j in range(6):
                A[i, j] = pow_abs(x[i] - x[j], p).sum()
        A = (A + A.T) / 2.0
        emb = schoenberg_embed(A)
        assert emb.residual < 1e-9

    def test_rank_truncation(self):
        emb = schoenberg_embed(UNIT_SQUARE_1NORM, rank=2)
        assert emb.vectors.shape == (4, 2)
        # the restriction has rank 2, so two coordinates suffice
        assert np.abs(emb.squared_distances() - UNIT_SQUARE_1NORM).max() < 1e-12

    def test_rejects_not_and(self):
        A = np.array([[0.0, -1.0], [-1.0, 0.0]])
        with pytest.raises(NotAndError):
            schoenberg_embed(A)

    def test_rejects_nonzero_diagonal(self):
        with pytest.raises(ValueError, match="diagonal"):
            schoenberg_embed(np.array([[1.0, 0.0], [0.0, 1.0]]))

    def test_round_trip_random_euclidean(self):
        rng = np.random.default_rng(14)
        for n in (3, 5, 9):
            y = rng.standard_normal((n, 4))
            G = y @ y.T
            A = np.diag(G)[:, None] + np.diag(G)[None, :] - 2 * G
            A = (A + A.T) / 2.0
            np.fill_diagonal(A, 0.0)
            emb = schoenberg_embed(A)
            assert np.abs(emb.squared_distances() - A).max() < 1e-9


class TestDetSignCertificate:
    def test_two_point(self):
        cert = det_sign_certificate(TWO_POINT)
        assert cert.sign == -1 and cert.verified

    def test_equilateral_triple(self):
        # det [[0,1,1],[1,0,1],[1,1,0]] = 2 by cofactor expansion
        A = np.ones((3, 3)) - np.eye(3)
        cert = det_sign_certificate(A)
        assert cert.sign == 1 and cert.verified
        assert np.exp(cert.report.det_log_magnitude) == pytest.approx(2.0, rel=1e-12)

    def test_multiquadric_matrix(self):
        rng = np.random.default_rng(15)
        x = rng.standard_normal((6, 2))
        r = build_distance_matrix(x, 1.0).entries
        A = np.sqrt(1.0 + r)
        cert = det_sign_certificate(A)
        assert cert.sign == (-1) ** 5 and cert.verified
        assert cert.report.trace == pytest.approx(6.0)

    def test_rejects_non_strict(self):
        with pytest.raises(ValueError, match="strictly AND"):
            det_sign_certificate(UNIT_SQUARE_1NORM)
