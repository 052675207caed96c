"""Tests for quadrature, finite differences and fitting."""

import math

import numpy as np
import pytest

from frenet4.utils.numerics import (
    Arclength,
    affine_fit,
    central_difference,
    gram_schmidt_frenet,
    max_relative_deviation,
    richardson_derivative,
)
from tests.conftest import w_curve_invariants


class TestArclength:
    """Tests for the arclength function."""

    def test_constant_speed(self):
        """Test s(t) = v t for a constant speed."""
        s = Arclength(lambda t: math.sqrt(5.0), 0.0, 2 * math.pi)

        assert s.total == pytest.approx(2 * math.pi * math.sqrt(5.0), rel=1e-12)
        assert s(1.234) == pytest.approx(1.234 * math.sqrt(5.0), rel=1e-12)
        assert s(0.0) == 0.0

    def test_variable_speed(self):
        """Test the parabola speed sqrt(1 + 4t^2) against its antiderivative."""

        def exact(t):
            return (2 * t * math.sqrt(1 + 4 * t * t) + math.asinh(2 * t)) / 4

        s = Arclength(lambda t: math.sqrt(1 + 4 * t * t), 0.0, 2.0)

        for t in (0.1, 0.77, 1.5, 2.0):
            assert s(t) == pytest.approx(exact(t), abs=1e-9)

    def test_inverse(self):
        """Test that inverse undoes the forward map, also past the interval end."""
        s = Arclength(lambda t: 1.0 + t, 0.0, 1.0)

        # Call the method
        for value in (0.3, 1.5, 4.0):
            t = s.inverse(value)

            # Check the result
            assert s(t) == pytest.approx(value, abs=1e-10)


class TestFiniteDifferences:
    """Tests for central differences and Richardson extrapolation."""

    @pytest.mark.parametrize("n", [1, 2, 3, 4])
    def test_central_difference_order(self, n):
        """Test that the error of the n-th derivative of sin falls like h^2."""
        exact = [math.cos, lambda x: -math.sin(x), lambda x: -math.cos(x), math.sin][n - 1](0.4)

        errors = [abs(central_difference(np.sin, 0.4, n, h) - exact) for h in (0.1, 0.05)]

        assert errors[0] / errors[1] == pytest.approx(4.0, rel=0.05)

    @pytest.mark.parametrize("n, rel", [(1, 1e-10), (2, 1e-9), (3, 1e-8), (4, 1e-6)])
    def test_richardson(self, n, rel):
        """Test extrapolated derivatives of exp; rounding grows like h^-n."""
        value = richardson_derivative(np.exp, 0.3, n)

        assert value == pytest.approx(math.exp(0.3), rel=rel)

    def test_vector_valued(self):
        """Test differentiation of a vector function."""

        def f(t):
            return np.array([np.cos(t), np.sin(t), t**3, 1.0])

        value = richardson_derivative(f, 0.5, 2)

        np.testing.assert_allclose(value, [-np.cos(0.5), -np.sin(0.5), 3.0, 0.0], atol=1e-9)


class TestGramSchmidtFrenet:
    """Tests for the Gram-Schmidt Frenet oracle."""

    def test_w_curve(self):
        """Test the oracle on exact derivatives of (cos t, sin t, cos 2t, sin 2t)."""
        t = 0.7
        derivatives = [
            np.array([-np.sin(t), np.cos(t), -2 * np.sin(2 * t), 2 * np.cos(2 * t)]),
            np.array([-np.cos(t), -np.sin(t), -4 * np.cos(2 * t), -4 * np.sin(2 * t)]),
            np.array([np.sin(t), -np.cos(t), 8 * np.sin(2 * t), -8 * np.cos(2 * t)]),
            np.array([np.cos(t), np.sin(t), 16 * np.cos(2 * t), 16 * np.sin(2 * t)]),
        ]
        expected = w_curve_invariants(1.0, 1.0, 1.0, 2.0)

        # Call the method
        oracle = gram_schmidt_frenet(derivatives)

        # Check the result
        assert oracle.speed == pytest.approx(expected["speed"], rel=1e-13)
        assert oracle.kappa == pytest.approx(expected["kappa"], rel=1e-12)
        assert oracle.tau == pytest.approx(expected["tau"], rel=1e-12)
        assert abs(oracle.sigma) == pytest.approx(expected["sigma"], rel=1e-12)
        np.testing.assert_allclose(oracle.frame @ oracle.frame.T, np.eye(4), atol=1e-13)
        assert np.linalg.det(oracle.frame) == pytest.approx(1.0)


class TestFitting:
    """Tests for the affine fit and constancy helpers."""

    def test_exact_line(self):
        """Test a noiseless line."""
        fit = affine_fit([0.0, 1.0, 2.0, 3.0], [1.0, 3.0, 5.0, 7.0])

        assert fit.slope == pytest.approx(2.0)
        assert fit.intercept == pytest.approx(1.0)
        assert fit.r_squared == pytest.approx(1.0)

    def test_constant_data(self):
        """Test that constant data counts as a perfect fit."""
        fit = affine_fit([0.0, 1.0, 2.0], [4.0, 4.0, 4.0])

        assert fit.slope == pytest.approx(0.0, abs=1e-12)
        assert fit.r_squared == 1.0

    def test_poor_fit(self):
        """Test that a parabola sampled symmetrically has R^2 = 0."""
        x = np.linspace(-1.0, 1.0, 21)

        assert affine_fit(x, x**2).r_squared == pytest.approx(0.0, abs=1e-12)

    def test_max_relative_deviation(self):
        """Test the constancy measure."""
        assert max_relative_deviation([2.0, 2.0, 2.0]) == (2.0, 0.0)
        mean, deviation = max_relative_deviation([1.0, 2.0, 3.0])
        assert mean == 2.0
        assert deviation == pytest.approx(0.5)

    def test_max_relative_deviation_zero_mean(self):
        """Test that a series odd about its middle has a finite deviation."""
        assert max_relative_deviation([-1.0, 1.0]) == (0.0, 1.0)
        assert max_relative_deviation([-2.0, 0.0, 2.0]) == (0.0, 1.0)
        assert max_relative_deviation([0.0, 0.0]) == (0.0, 0.0)
