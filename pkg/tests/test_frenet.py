"""Tests for the frenet service."""

import dataclasses
import math

import numpy as np
import pytest
from hypothesis import HealthCheck, assume, given, settings
from hypothesis import strategies as st

from frenet4.exceptions import DegenerateCurvature, NotRegular
from frenet4.models.reports import GridSpec
from frenet4.services.frenet import check_continuity, frenet_service, jet_ratio, to_arclength
from frenet4.utils.jets import Jet, jet_var
from frenet4.utils.linalg import Frame4
from frenet4.utils.numerics import finite_difference_frenet
from tests.conftest import make_curve, make_w_curve, w_curve_invariants

ORACLE_CURVES = [
    ("w 1 1 1 2", lambda: make_w_curve(1.0, 1.0, 1.0, 2.0)),
    ("w 2 1 1 2", lambda: make_w_curve(2.0, 1.0, 1.0, 2.0)),
    ("w 1 2 1 2", lambda: make_w_curve(1.0, 2.0, 1.0, 2.0)),
    ("w 1 1 0.5 1.5", lambda: make_w_curve(1.0, 1.0, 0.5, 1.5)),
    ("w 0.5 1.5 1 1.5", lambda: make_w_curve(0.5, 1.5, 1.0, 1.5)),
    ("moment curve", lambda: make_curve(["t", "t^2/2", "t^3/6", "t^4/24"], t_min=0.0, t_max=2.0)),
    (
        "perturbed w",
        lambda: make_curve(["cos(t) + 0.1*t^2", "sin(t)", "cos(2*t)", "sin(2*t)"], t_max=2.0),
    ),
    ("w 3 1 1 2", lambda: make_w_curve(3.0, 1.0, 1.0, 2.0)),
    (
        "mixed",
        lambda: make_curve(["cos(t)", "sin(t)", "t^2", "t^3"], t_min=0.2, t_max=1.5),
    ),
    ("quartic", lambda: make_curve(["t", "t^2", "t^3", "t^4"], t_min=0.2, t_max=1.5)),
]


def frenet_residual(curve, t: float, h: float) -> float:
    """Largest defect of the Frenet equations, with frame derivatives by central differences."""
    app = frenet_service.frenet_apparatus(curve, t)
    before = frenet_service.frenet_apparatus(curve, t - h)
    after = frenet_service.frenet_apparatus(curve, t + h)
    T, N, B, E = app.frame.to_matrix()
    dT, dN, dB, dE = (after.frame.to_matrix() - before.frame.to_matrix()) / (2 * h * app.speed)
    k, tau, sigma = app.kappa, app.tau, app.sigma
    defects = [
        dT - k * N,
        dN - (-k * T + tau * B),
        dB - (-tau * N + sigma * E),
        dE - (-sigma * B),
    ]
    return max(float(np.linalg.norm(d)) for d in defects)


class TestFrenetApparatus:
    """Tests for frenet_apparatus."""

    @pytest.mark.parametrize(
        "a, b, p, q", [(1.0, 1.0, 1.0, 2.0), (2.0, 1.0, 1.0, 3.0), (1.0, 3.0, 0.5, 1.0)]
    )
    def test_w_curve_closed_form(self, a, b, p, q):
        """Test the curvatures of (a cos pt, a sin pt, b cos qt, b sin qt)."""
        curve = make_w_curve(a, b, p, q)
        expected = w_curve_invariants(a, b, p, q)

        for t in (0.0, 0.9, 2.5):
            # Call the method
            app = frenet_service.frenet_apparatus(curve, t)

            # Check the result
            assert app.speed == pytest.approx(expected["speed"], rel=1e-12)
            assert app.kappa == pytest.approx(expected["kappa"], rel=1e-12)
            assert app.tau == pytest.approx(expected["tau"], rel=1e-12)
            assert app.sigma == pytest.approx(expected["sigma"], rel=1e-12)

    def test_frame_is_positive_orthonormal(self, w_curve):
        """Test orthonormality and orientation of the frame."""
        app = frenet_service.frenet_apparatus(w_curve, 1.3)
        frame = app.frame.to_matrix()

        np.testing.assert_allclose(frame @ frame.T, np.eye(4), atol=1e-12)
        assert np.linalg.det(frame) == pytest.approx(1.0, abs=1e-12)
        assert app.mu in (1, -1)

    @pytest.mark.parametrize("name, factory", ORACLE_CURVES, ids=[c[0] for c in ORACLE_CURVES])
    def test_matches_finite_difference_oracle(self, name, factory):
        """Test the ternary-product formulas against Gram-Schmidt on numerical derivatives."""
        curve = factory()

        for t in np.linspace(curve.t_min + 0.3, curve.t_max - 0.3, 3):
            # Call the method
            app = frenet_service.frenet_apparatus(curve, float(t))
            oracle = finite_difference_frenet(curve.point, float(t))

            # Check the result
            assert app.kappa == pytest.approx(oracle.kappa, rel=1e-6)
            assert app.tau == pytest.approx(oracle.tau, rel=1e-6)
            assert app.sigma == pytest.approx(oracle.sigma, rel=1e-6)
            np.testing.assert_allclose(app.frame.to_matrix(), oracle.frame, atol=1e-6)

    def test_frenet_equations_second_order(self):
        """Test that the Frenet equation defect shrinks like h^2 under grid halving."""
        curve = make_curve(["cos(t) + 0.1*t^2", "sin(t)", "cos(2*t)", "sin(2*t)"], t_max=2.0)

        coarse = frenet_residual(curve, 0.8, 0.02)
        fine = frenet_residual(curve, 0.8, 0.01)

        assert fine < 1e-3
        assert coarse / fine >= 3.5

    def test_reparametrization_invariance(self):
        """Test that t -> 2t leaves frame and curvatures unchanged."""
        original = make_w_curve(1.0, 1.0, 1.0, 2.0)
        fast = make_w_curve(1.0, 1.0, 2.0, 4.0, t_max=math.pi)

        for t in (0.4, 1.7):
            a = frenet_service.frenet_apparatus(original, t)
            b = frenet_service.frenet_apparatus(fast, t / 2)

            assert b.speed == pytest.approx(2 * a.speed, rel=1e-12)
            assert (b.kappa, b.tau, b.sigma) == pytest.approx((a.kappa, a.tau, a.sigma), rel=1e-12)
            np.testing.assert_allclose(b.frame.to_matrix(), a.frame.to_matrix(), atol=1e-12)

    def test_line_is_degenerate(self):
        """Test that a straight line has no principal normal."""
        line = make_curve(["t", "2*t", "0", "0"])

        with pytest.raises(DegenerateCurvature) as exc_info:
            frenet_service.frenet_apparatus(line, 0.5)

        assert exc_info.value.details == {"t": 0.5, "curvature": "kappa"}

    def test_circle_is_degenerate(self):
        """Test that a planar circle has no binormal."""
        circle = make_curve(["cos(t)", "sin(t)", "0", "0"])

        with pytest.raises(DegenerateCurvature) as exc_info:
            frenet_service.frenet_apparatus(circle, 1.0)

        assert exc_info.value.details["curvature"] == "tau"
        assert exc_info.value.t == 1.0

    def test_not_regular(self):
        """Test a cusp where the speed vanishes."""
        cusp = make_curve(["t^2", "t^3", "t^4", "t^5"], t_min=-1.0, t_max=1.0)

        with pytest.raises(NotRegular):
            frenet_service.frenet_apparatus(cusp, 0.0)

    def test_space_helix_has_no_third_curvature(self):
        """Test that a helix in a hyperplane has σ = 0 and no harmonic curvatures."""
        helix = make_curve(["cos(t)", "sin(t)", "t", "0"])

        app = frenet_service.frenet_apparatus(helix, 0.5)
        jets = frenet_service.curvature_jets(helix, 0.5)

        assert app.sigma == 0.0
        assert app.tau == pytest.approx(0.5)
        with pytest.raises(DegenerateCurvature):
            frenet_service.harmonic_curvatures(jets)

    @settings(
        max_examples=20,
        deadline=None,
        suppress_health_check=[HealthCheck.filter_too_much, HealthCheck.too_slow],
    )
    @given(
        st.floats(0.5, 2.0),
        st.floats(0.5, 2.0),
        st.floats(0.5, 1.5),
        st.floats(0.5, 1.5),
        st.floats(-0.2, 0.2),
        st.floats(-0.2, 0.2),
    )
    def test_random_curves_have_valid_frames(self, a, b, p, dq, c1, c2):
        """Test orthonormality and det = +1 along randomized regular curves."""
        curve = make_curve(
            ["a*cos(p*t) + c1*t^2", "a*sin(p*t)", "b*cos(q*t)", "b*sin(q*t) + c2*t^3"],
            {"a": a, "b": b, "p": p, "q": p + dq, "c1": c1, "c2": c2},
            t_max=3.0,
        )
        for t in np.linspace(0.0, 3.0, 8):
            try:
                app = frenet_service.frenet_apparatus(curve, float(t))
            except (DegenerateCurvature, NotRegular):
                assume(False)
            frame = app.frame.to_matrix()
            np.testing.assert_allclose(frame @ frame.T, np.eye(4), atol=1e-9)
            assert np.linalg.det(frame) == pytest.approx(1.0, abs=1e-9)
            assert app.kappa > 0 and app.tau > 0


class TestCurvatureJets:
    """Tests for curvature jets and harmonic curvatures."""

    def test_to_arclength(self):
        """Test d/ds = (1/v) d/dt on t^2 with speed 2."""
        f = jet_var(1.5, 3) ** 2
        speed = Jet.constant(2.0, 3)

        np.testing.assert_allclose(to_arclength(f, speed).derivatives(), [2.25, 1.5, 0.5, 0.0])

    def test_jet_ratio_truncates(self):
        """Test that jets of different orders are divided at the common order."""
        ratio = jet_ratio(jet_var(2.0, 4), Jet.constant(2.0, 2))

        assert ratio.order == 2
        assert ratio.derivative(1) == 0.5

    def test_w_curve_jets_are_constant(self, w_curve):
        """Test that the s-derivatives of the curvatures vanish on a W-curve."""
        jets = frenet_service.curvature_jets(w_curve, 0.8)
        expected = w_curve_invariants(1.0, 1.0, 1.0, 2.0)

        assert jets.kappa_s.order == 4
        assert jets.tau_s.order == 3
        assert jets.sigma_s.order == 2
        assert jets.kappa_s.value == pytest.approx(expected["kappa"], rel=1e-12)
        assert jets.rho_s.value == pytest.approx(1 / expected["kappa"], rel=1e-12)
        for jet in (jets.kappa_s, jets.tau_s, jets.sigma_s):
            np.testing.assert_allclose(jet.derivatives()[1:], 0.0, atol=1e-10)

        harmonic = frenet_service.harmonic_curvatures(jets)
        assert harmonic.H1.value == pytest.approx(expected["kappa"] / expected["tau"], rel=1e-12)
        assert harmonic.H2.value == pytest.approx(0.0, abs=1e-10)
        assert harmonic.H1t.value == pytest.approx(expected["sigma"] / expected["tau"], rel=1e-12)

    def test_derivatives_match_finite_differences(self):
        """Test dκ/ds, dτ/ds and dσ/ds against differences of the apparatus."""
        curve = make_curve(["cos(t) + 0.1*t^2", "sin(t)", "cos(2*t)", "sin(2*t)"], t_max=2.0)
        t, h = 0.9, 1e-4
        jets = frenet_service.curvature_jets(curve, t)
        before = frenet_service.frenet_apparatus(curve, t - h)
        after = frenet_service.frenet_apparatus(curve, t + h)
        v = jets.speed

        for name, jet in (("kappa", jets.kappa_s), ("tau", jets.tau_s), ("sigma", jets.sigma_s)):
            numeric = (getattr(after, name) - getattr(before, name)) / (2 * h * v)
            assert jet.derivative(1) == pytest.approx(numeric, rel=1e-6, abs=1e-8)


class TestSampling:
    """Tests for grid sampling."""

    def test_sample_grid(self, w_curve):
        """Test sample order, arclength and harmonic curvatures on a W-curve."""
        samples = frenet_service.sample(w_curve, 16)

        # Check the result
        assert len(samples) == 16
        assert [s.t for s in samples] == pytest.approx(list(np.linspace(0, 2 * math.pi, 16)))
        assert samples[0].s == 0.0
        for sample in samples:
            assert sample.s == pytest.approx(math.sqrt(5.0) * sample.t, rel=1e-10, abs=1e-12)
            assert sample.harmonic is not None

    def test_sample_without_jets(self, w_curve):
        """Test that jets are skipped on request."""
        samples = frenet_service.sample(w_curve, 8, with_jets=False)

        assert all(s.jets is None and s.harmonic is None for s in samples)

    def test_harmonic_unset_where_sigma_vanishes(self):
        """Test that a helix in a hyperplane samples without harmonic curvatures."""
        helix = make_curve(["cos(t)", "sin(t)", "t", "0"])

        samples = frenet_service.sample(helix, 8)

        assert all(s.harmonic is None and s.jets is not None for s in samples)

    def test_analyze_report(self, w_curve):
        """Test the analyze table of a W-curve."""
        grid = GridSpec(t_min=w_curve.t_min, t_max=w_curve.t_max, samples=12)

        report = frenet_service.analyze(w_curve, grid)

        assert len(report.rows) == 12
        assert report.frame_reversals == 0
        assert report.rows[3].H1 == pytest.approx(report.rows[3].kappa / report.rows[3].tau)
        assert len(report.rows[3].E) == 4

    def test_check_continuity_counts_reversals(self, w_curve):
        """Test that a flipped normal in the middle of a grid is counted twice."""
        samples = frenet_service.sample(w_curve, 24, with_jets=False)
        app = samples[4].apparatus
        flipped = Frame4(app.T, -app.N, app.B, app.E)
        samples[4] = dataclasses.replace(
            samples[4], apparatus=dataclasses.replace(app, frame=flipped)
        )

        assert check_continuity(samples) == 2
