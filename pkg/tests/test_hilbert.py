import numpy as np
import pytest
from hypothesis import given, strategies as st

from viscosplit.hilbert import (AffineSet, Ball, Box, DimensionMismatch,
                                HalfSpace, WholeSpace, as_vector,
                                hilbert_identity_check, inner, norm, project)


def vec(*xs):
    return np.array(xs, dtype=float)


finite_coords = st.floats(min_value=-10, max_value=10, allow_nan=False,
                          width=64)
vectors_3d = st.lists(finite_coords, min_size=3, max_size=3).map(np.array)


class TestVectors:
    def test_scalar_becomes_vector(self):
        v = as_vector(2.0)
        assert v.shape == (1,)
        assert v[0] == 2.0

    def test_rejects_non_finite(self):
        with pytest.raises(ValueError):
            as_vector([1.0, np.inf])
        with pytest.raises(ValueError):
            as_vector([np.nan])

    def test_dim_mismatch(self):
        with pytest.raises(DimensionMismatch):
            as_vector([1.0, 2.0], dim=3)
        with pytest.raises(DimensionMismatch):
            inner(vec(1, 2), vec(1, 2, 3))

    def test_inner_and_norm(self):
        assert inner(vec(1, 2), vec(3, -1)) == 1.0
        assert norm(vec(3, 4)) == 5.0


class TestProjections:
    def test_whole_space_is_identity(self):
        x = vec(3, -7)
        assert np.array_equal(project(WholeSpace(), x), x)

    def test_box_clips(self):
        K = Box(vec(-1, -1), vec(1, 1))
        assert np.array_equal(K.project(vec(2, 0.5)), vec(1, 0.5))
        assert K.contains(vec(0.3, -1))
        assert not K.contains(vec(1.5, 0))

    def test_box_empty_raises(self):
        with pytest.raises(ValueError):
            Box(vec(1.0), vec(0.0))

    def test_ball_interior_and_exterior(self):
        K = Ball(vec(0, 0), 1.0)
        assert np.array_equal(K.project(vec(0.2, 0.1)), vec(0.2, 0.1))
        p = K.project(vec(3, 4))
        assert np.allclose(p, vec(0.6, 0.8))

    def test_ball_through_origin(self):
        # 0 sits on the boundary, so it projects to itself exactly.
        K = Ball(vec(1, 1), np.sqrt(2.0))
        assert np.array_equal(K.project(vec(0, 0)), vec(0, 0))

    def test_ball_bad_radius(self):
        with pytest.raises(ValueError):
            Ball(vec(0.0), 0.0)

    def test_halfspace(self):
        K = HalfSpace(vec(1, 0), 0.0)
        assert np.array_equal(K.project(vec(2, 3)), vec(0, 3))
        assert np.array_equal(K.project(vec(-1, 5)), vec(-1, 5))
        with pytest.raises(ValueError):
            HalfSpace(vec(0, 0), 1.0)

    def test_affine_line(self):
        # The line through (1, 0) along (0, 1).
        K = AffineSet(vec(1, 0), np.array([[0.0, 1.0]]))
        assert np.allclose(K.project(vec(5, 3)), vec(1, 3))

    def test_affine_requires_orthonormal_rows(self):
        with pytest.raises(ValueError):
            AffineSet(vec(0, 0), np.array([[1.0, 1.0]]))

    @given(vectors_3d)
    def test_box_projection_idempotent(self, x):
        K = Box(-np.ones(3), np.ones(3))
        p = K.project(x)
        assert np.array_equal(K.project(p), p)
        assert K.contains(p)

    @given(vectors_3d, vectors_3d)
    def test_ball_projection_firmly_nonexpansive(self, x, y):
        K = Ball(vec(0.5, -0.5, 0.0), 2.0)
        px, py = K.project(x), K.project(y)
        lhs = norm(px - py) ** 2
        rhs = inner(px - py, x - y)
        assert lhs <= rhs + 1e-9

    @given(vectors_3d)
    def test_projection_variational_characterization(self, x):
        K = Box(-np.ones(3), np.ones(3))
        p = K.project(x)
        for corner in (np.ones(3), -np.ones(3), vec(1, -1, 1)):
            assert inner(x - p, corner - p) <= 1e-9


class TestIdentityAudit:
    def test_convex_combination_identity_exact(self):
        audit = hilbert_identity_check(vec(1, 2), vec(-3, 0.5), 0.3)
        assert audit.id2_equal
        assert abs(audit.id2_lhs - audit.id2_rhs) <= 1e-10

    def test_printed_reading_fails_on_sign_witness(self):
        # x = 1, y = -1: the difference form gives 4 <= 1 + 2*0 = 1, false,
        # while the sum form gives 0 <= 1, true.  Both readings are reported.
        audit = hilbert_identity_check(vec(1.0), vec(-1.0), 0.5)
        assert not audit.id1_printed_holds
        assert audit.id1_corrected_holds
        assert audit.id1_printed_lhs == 4.0
        assert audit.id1_printed_rhs == 1.0

    def test_lam_outside_unit_interval_rejected(self):
        with pytest.raises(ValueError):
            hilbert_identity_check(vec(1.0), vec(2.0), 1.0)

    @given(vectors_3d, vectors_3d,
           st.floats(min_value=0.01, max_value=0.99))
    def test_corrected_reading_always_holds(self, x, y, lam):
        audit = hilbert_identity_check(x, y, lam)
        assert audit.id1_corrected_holds
        assert audit.id2_equal
