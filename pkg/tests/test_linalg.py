"""Tests for vector algebra in E^4."""

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from frenet4.utils.jets import jet_var
from frenet4.utils.linalg import Frame4, Vec4, cross3, det4, dot, norm

e1, e2, e3, e4 = (Vec4.basis(i) for i in range(1, 5))

component = st.floats(min_value=-3.0, max_value=3.0, allow_nan=False)
vectors = st.lists(component, min_size=4, max_size=4).map(Vec4.from_iterable)


class TestTernaryProduct:
    """Tests for the ternary vector product."""

    @pytest.mark.parametrize(
        "a, b, c, expected",
        [
            (e2, e3, e4, e1),
            (e3, e4, e1, -e2),
            (e4, e1, e2, e3),
            (e1, e2, e3, -e4),
            (e3, e2, e4, -e1),
            (e4, e3, e1, e2),
            (e1, e4, e2, -e3),
            (e2, e1, e3, e4),
        ],
    )
    def test_basis_identities(self, a, b, c, expected):
        """Test the product on ordered triples of basis vectors."""
        assert cross3(a, b, c).to_tuple() == expected.to_tuple()

    @given(vectors, vectors, vectors)
    def test_orthogonal_to_factors(self, a, b, c):
        """Test that a∧b∧c is orthogonal to a, b and c."""
        w = cross3(a, b, c)
        scale = max(1.0, norm(a) * norm(b) * norm(c))

        for v in (a, b, c):
            assert abs(dot(w, v)) <= 1e-12 * scale * max(1.0, norm(v))

    @given(vectors, vectors, vectors, vectors)
    def test_pairing_is_determinant(self, a, b, c, d):
        """Test <a∧b∧c, d> = det[d; a; b; c]."""
        matrix = np.array([d.to_tuple(), a.to_tuple(), b.to_tuple(), c.to_tuple()])

        assert dot(cross3(a, b, c), d) == pytest.approx(np.linalg.det(matrix), abs=1e-9)

    @given(vectors, vectors, vectors)
    def test_alternating(self, a, b, c):
        """Test that swapping two factors flips the sign."""
        np.testing.assert_allclose(
            cross3(b, a, c).to_array(), -cross3(a, b, c).to_array(), atol=1e-12
        )

    def test_jet_components(self):
        """Test that the product differentiates like a trilinear map."""
        t = jet_var(0.4, 2)
        a = Vec4(t, 1.0 + 0.0 * t, 0.0 * t, 0.0 * t)
        b = Vec4(0.0 * t, t * t, 1.0 + 0.0 * t, 0.0 * t)
        c = Vec4(0.0 * t, 0.0 * t, 0.0 * t, t.sin())

        # Call the method
        w = cross3(a, b, c)
        w_prime = w.differentiate().value().to_array()

        # Check the result against central differences of the float product
        def at(x):
            return cross3(
                Vec4(x, 1.0, 0.0, 0.0), Vec4(0.0, x * x, 1.0, 0.0), Vec4(0.0, 0.0, 0.0, np.sin(x))
            ).to_array()

        h = 1e-5
        np.testing.assert_allclose(w_prime, (at(0.4 + h) - at(0.4 - h)) / (2 * h), atol=1e-8)


class TestDeterminant:
    """Tests for det4."""

    def test_identity(self):
        """Test the standard frame."""
        assert det4(Frame4(e1, e2, e3, e4)) == 1.0

    def test_odd_permutation(self):
        """Test that swapping two rows gives -1."""
        assert det4(Frame4(e2, e1, e3, e4)) == -1.0

    @given(vectors, vectors, vectors, vectors)
    def test_matches_numpy(self, a, b, c, d):
        """Test against numpy's determinant."""
        frame = Frame4(a, b, c, d)

        assert det4(frame) == pytest.approx(np.linalg.det(frame.to_matrix()), abs=1e-9)


class TestVec4:
    """Tests for Vec4 helpers."""

    def test_arithmetic(self):
        """Test the vector space operations."""
        v = Vec4(1.0, 2.0, 3.0, 4.0)

        assert (v + v).to_tuple() == (2.0, 4.0, 6.0, 8.0)
        assert (v - v).to_tuple() == Vec4.zero().to_tuple()
        assert (2.0 * v).to_tuple() == (v * 2.0).to_tuple()
        assert (v / 2.0).to_tuple() == (0.5, 1.0, 1.5, 2.0)
        assert norm(v) == pytest.approx(np.sqrt(30.0))

    def test_truncate_and_value(self):
        """Test truncation of jet components."""
        t = jet_var(1.0, 3)
        v = Vec4(t, t * t, 1.0, t.exp())

        assert v.truncate(1).x1.order == 1
        assert v.truncate(1).x3 == 1.0
        assert v.value().to_tuple() == pytest.approx((1.0, 1.0, 1.0, np.e))
