import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from pnormdist.errors import InputError
from pnormdist.geometry import (
    PExponent,
    PointSet,
    build_distance_matrix,
    pnorm,
    read_matrix_csv,
    read_points_csv,
    write_matrix_csv,
    write_points_csv,
)

UNIT_SQUARE = [[0.0, 0.0], [1.0, 0.0], [1.0, 1.0], [0.0, 1.0]]
UNIT_SQUARE_1NORM = np.array(
    [[0.0, 1, 2, 1], [1, 0, 1, 2], [2, 1, 0, 1], [1, 2, 1, 0]]
)


class TestPExponent:
    def test_classification_flags(self):
        assert PExponent(0.5).is_quasi_norm and not PExponent(0.5).is_norm
        assert PExponent(1.0).is_norm and not PExponent(1.0).is_quasi_norm
        assert PExponent(2.0).is_euclidean and PExponent(2.0).is_norm
        assert not PExponent(1.5).is_euclidean

    @pytest.mark.parametrize("bad", [0.0, -1.0, float("inf"), float("nan")])
    def test_rejects_nonpositive(self, bad):
        with pytest.raises(ValueError):
            PExponent(bad)


class TestPointSet:
    def test_shape_and_distinct(self):
        pts = PointSet(np.array(UNIT_SQUARE))
        assert pts.n == 4 and pts.d == 2
        assert pts.is_distinct()
        assert not PointSet(np.array([[1.0, 2.0], [1.0, 2.0]])).is_distinct()

    def test_rejects_dimension_mismatch_and_nonfinite(self):
        with pytest.raises(ValueError):
            PointSet(np.array([1.0, 2.0]))  # not 2-d
        with pytest.raises(ValueError):
            PointSet(np.array([[1.0], [float("nan")]]))

    def test_immutable(self):
        pts = PointSet(np.array(UNIT_SQUARE))
        with pytest.raises(ValueError):
            pts.points[0, 0] = 5.0


class TestPnorm:
    def test_zero_vector_is_zero(self):
        for p in (0.5, 1.0, 1.5, 2.0, 7.0):
            assert pnorm(np.zeros(3), p) == 0.0

    def test_cross_cube_difference_vector(self):
        # difference of a unit-sphere cube vertex pair across orthogonal
        # blocks: (a, a, -b, -b, -b) with a = 2^(-1/p), b = 3^(-1/p) has
        # p-norm exactly 2^(1/p) for every p
        for p in (0.7, 1.0, 1.5, 2.0, 3.0, 7.5):
            a, b = 2.0 ** (-1.0 / p), 3.0 ** (-1.0 / p)
            v = np.array([a, a, -b, -b, -b])
            assert pnorm(v, p) == pytest.approx(2.0 ** (1.0 / p), rel=1e-14)

    def test_direct_evaluation(self):
        # (2 * 1^1.5)^(1/1.5) = 2^(2/3)
        assert pnorm([1.0, 1.0], 1.5) == pytest.approx(2.0 ** (1.0 / 1.5), rel=1e-15)

    def test_rejects_nonfinite(self):
        with pytest.raises(ValueError):
            pnorm([1.0, float("inf")], 2.0)

    @settings(max_examples=100, deadline=None)
    @given(
        v=st.lists(
            st.floats(min_value=-1e3, max_value=1e3).filter(lambda x: x == 0 or abs(x) > 1e-3),
            min_size=1,
            max_size=6,
        ),
        c=st.floats(min_value=1e-3, max_value=1e3),
        p=st.floats(min_value=1.0, max_value=4.0),
    )
    def test_absolute_homogeneity(self, v, c, p):
        v = np.array(v)
        assert pnorm(c * v, p) == pytest.approx(c * pnorm(v, p), rel=1e-12, abs=1e-12)

    @settings(max_examples=100, deadline=None)
    @given(
        vw=st.lists(
            st.tuples(st.floats(-100, 100), st.floats(-100, 100)),
            min_size=2,
            max_size=5,
        ),
        p=st.floats(min_value=1.0, max_value=5.0),
    )
    def test_triangle_inequality_for_norms(self, vw, p):
        v = np.array([a for a, _ in vw])
        w = np.array([b for _, b in vw])
        assert pnorm(v + w, p) <= pnorm(v, p) + pnorm(w, p) + 1e-9

    def test_triangle_inequality_fails_for_quasi_norm(self):
        v, w = np.array([1.0, 0.0]), np.array([0.0, 1.0])
        # ||v+w||_0.5 = (1+1)^2 = 4 > 2 = ||v|| + ||w||
        assert pnorm(v + w, 0.5) > pnorm(v, 0.5) + pnorm(w, 0.5)


class TestBuildDistanceMatrix:
    def test_unit_square_1norm_exact(self):
        dm = build_distance_matrix(UNIT_SQUARE, 1.0)
        assert np.array_equal(dm.entries, UNIT_SQUARE_1NORM)

    def test_single_point(self):
        dm = build_distance_matrix([[3.0, 4.0]], 1.7)
        assert np.array_equal(dm.entries, np.zeros((1, 1)))

    def test_two_points_unit_separation(self):
        dm = build_distance_matrix([[0.0], [1.0]], 1.5)
        assert np.array_equal(dm.entries, np.array([[0.0, 1.0], [1.0, 0.0]]))

    def test_bitwise_symmetry(self):
        rng = np.random.default_rng(3)
        x = rng.standard_normal((17, 4))
        for p in (0.6, 1.3, 2.0, 3.5):
            A = build_distance_matrix(x, p).entries
            assert np.array_equal(A, A.T)
            assert np.all(np.diag(A) == 0.0)

    def test_permutation_permutes_rows_and_columns(self):
        rng = np.random.default_rng(4)
        x = PointSet(rng.standard_normal((9, 3)))
        perm = rng.permutation(9)
        A = build_distance_matrix(x, 1.5).entries
        B = build_distance_matrix(x.permute(perm), 1.5).entries
        assert np.array_equal(B, A[np.ix_(perm, perm)])

    def test_translation_leaves_matrix_unchanged(self):
        rng = np.random.default_rng(5)
        x = PointSet(rng.standard_normal((8, 3)))
        shifted = x.translate(np.array([10.0, -3.0, 0.25]))
        A = build_distance_matrix(x, 1.4).entries
        B = build_distance_matrix(shifted, 1.4).entries
        assert np.allclose(A, B, rtol=0, atol=1e-12)


class TestCsv:
    def test_points_round_trip(self, tmp_path):
        path = tmp_path / "pts.csv"
        rng = np.random.default_rng(6)
        pts = PointSet(rng.standard_normal((5, 3)))
        write_points_csv(path, pts)
        back = read_points_csv(path)
        assert np.array_equal(back.points, pts.points)

    def test_matrix_round_trip(self, tmp_path):
        path = tmp_path / "mat.csv"
        A = build_distance_matrix(UNIT_SQUARE, 1.0)
        write_matrix_csv(path, A)
        assert np.array_equal(read_matrix_csv(path), A.entries)

    def test_malformed_cell_reports_line(self, tmp_path):
        path = tmp_path / "bad.csv"
        path.write_text("1.0,2.0\n1.0,oops\n")
        with pytest.raises(InputError, match=r"bad\.csv:2"):
            read_points_csv(path)

    def test_ragged_row_reports_line(self, tmp_path):
        path = tmp_path / "ragged.csv"
        path.write_text("1.0,2.0\n1.0\n")
        with pytest.raises(InputError, match=r"ragged\.csv:2"):
            read_points_csv(path)

    def test_empty_file_rejected(self, tmp_path):
        path = tmp_path / "empty.csv"
        path.write_text("")
        with pytest.raises(InputError, match="no data rows"):
            read_points_csv(path)

    def test_nonsquare_matrix_rejected(self, tmp_path):
        path = tmp_path / "rect.csv"
        path.write_text("1.0,2.0\n")
        with pytest.raises(InputError, match="square"):
            read_matrix_csv(path)
