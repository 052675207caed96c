"""Frenet frame and curvatures of regular curves in E^4."""

import logging
import math
from dataclasses import dataclass
from typing import Callable, List, Optional

import numpy as np

from frenet4.exceptions import DegenerateCurvature, NotRegular
from frenet4.models.curve import Curve, Tolerances
from frenet4.models.geometry import (
    CurvatureJets,
    FrenetApparatus,
    FrenetSample,
    HarmonicCurvatures,
)
from frenet4.models.reports import AnalyzeReport, GridSpec, SampleRow
from frenet4.utils.jets import Jet, Scalar, sqrt, value_of
from frenet4.utils.linalg import Frame4, Vec4, cross3, det4, dot, norm
from frenet4.utils.numerics import Arclength

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class _Terms:
    """Quantities of the frame formulas; floats or jets of one common order."""

    speed: Scalar
    T: Vec4
    N: Vec4
    kappa: Scalar
    B: Optional[Vec4] = None
    E: Optional[Vec4] = None
    tau: Optional[Scalar] = None
    sigma: Optional[Scalar] = None
    mu: int = 1


def _length(v: Vec4) -> float:
    return math.sqrt(value_of(dot(v, v)))


def frame_terms(
    t: float,
    d1: Vec4,
    d2: Vec4,
    d3: Optional[Vec4] = None,
    d4: Optional[Vec4] = None,
    scale: Optional[float] = None,
    tolerances: Optional[Tolerances] = None,
) -> _Terms:
    """Evaluate the frame formulas as far as the given derivatives allow.

    Degeneracy is decided on constant terms only, so the orientation choices
    made for plain values carry over unchanged to jets.
    """
    tol = tolerances or Tolerances()
    if scale is None:
        scale = max(_length(d) for d in (d1, d2, d3) if d is not None)

    v2 = dot(d1, d1)
    if math.sqrt(value_of(v2)) <= tol.eps_reg * scale:
        raise NotRegular(f"speed vanishes at t = {t!r}", t=t)
    speed = sqrt(v2)

    # ‖α'‖²α'' − <α',α''>α', the component of α'' normal to α' scaled by ‖α'‖²
    g = d2 * v2 - d1 * dot(d1, d2)
    if _length(g) <= tol.eps_deg * value_of(v2) * _length(d2):
        raise DegenerateCurvature(f"first curvature vanishes at t = {t!r}", t=t, curvature="kappa")
    g_norm = norm(g)
    T = d1 / speed
    N = g / g_norm
    kappa = g_norm / (v2 * v2)
    if d3 is None:
        return _Terms(speed=speed, T=T, N=N, kappa=kappa)

    w = cross3(T, N, d3)
    if _length(w) <= tol.eps_deg * _length(d3):
        raise DegenerateCurvature(
            f"second curvature vanishes at t = {t!r} (α''' lies in span(T, N))",
            t=t,
            curvature="tau",
        )
    w_norm = norm(w)
    E0 = w / w_norm
    B = cross3(E0, T, N)
    if value_of(dot(B, d3)) < 0:
        B = -B
    tau = w_norm * speed / g_norm
    mu = 1 if value_of(det4(Frame4(T, N, B, E0))) > 0 else -1
    E = E0 * mu
    sigma = None
    if d4 is not None:
        sigma = dot(d4, E) / (w_norm * speed)
    return _Terms(speed=speed, T=T, N=N, kappa=kappa, B=B, E=E, tau=tau, sigma=sigma, mu=mu)


def to_arclength(f: Jet, speed: Jet) -> Jet:
    """Re-expand a t-jet in arclength using d/ds = (1/‖α'‖) d/dt repeatedly."""
    derivatives = [f.value]
    g = f
    while g.order > 0:
        g = g.differentiate() / speed.truncate(g.order - 1)
        derivatives.append(g.value)
    return Jet.from_derivatives(derivatives)


def _common(a: Jet, b: Jet):
    order = min(a.order, b.order)
    return a.truncate(order), b.truncate(order)


class FrenetService:
    """Frenet apparatus, curvature jets and grid sampling."""

    def frenet_apparatus(
        self,
        curve: Curve,
        t: float,
        scale: Optional[float] = None,
        tolerances: Optional[Tolerances] = None,
    ) -> FrenetApparatus:
        """Frame {T, N, B, E} and curvatures κ, τ, σ at t.

        Args:
            curve: The curve.
            t: Parameter value.
            scale: Curve scale for the regularity test; the largest derivative norm
                at t when omitted.
            tolerances: Thresholds to apply.

        Returns:
            The apparatus with det[T, N, B, E] = +1.

        Raises:
            NotRegular: The speed vanishes at t.
            DegenerateCurvature: κ or τ vanishes at t.
        """
        d1, d2, d3, d4 = (d.value() for d in curve.derivatives(t, 4))
        terms = frame_terms(t, d1, d2, d3, d4, scale, tolerances)
        return FrenetApparatus(
            t=float(t),
            frame=Frame4(terms.T, terms.N, terms.B, terms.E),
            kappa=float(terms.kappa),
            tau=float(terms.tau),
            sigma=float(terms.sigma),
            speed=float(terms.speed),
            mu=terms.mu,
        )

    def curvature_jets(
        self,
        curve: Curve,
        t: float,
        order: Optional[int] = None,
        scale: Optional[float] = None,
        tolerances: Optional[Tolerances] = None,
    ) -> CurvatureJets:
        """κ, τ, σ and ρ at t as jets in arclength.

        The curve is expanded to ``order``, its own jet order by default. With order K,
        κ carries K - 2 derivatives, τ K - 3 and σ K - 4.
        """
        order = order or curve.jet_order
        d1, d2, d3, d4 = curve.derivatives(t, 4, order)
        speed_t = sqrt(dot(d1, d1))

        def upto(count: int):
            return [d.truncate(order - count) for d in (d1, d2, d3, d4)[:count]]

        kappa_t = frame_terms(t, *upto(2), scale=scale, tolerances=tolerances).kappa
        tau_t = frame_terms(t, *upto(3), scale=scale, tolerances=tolerances).tau
        sigma_t = frame_terms(t, *upto(4), scale=scale, tolerances=tolerances).sigma

        kappa_s = to_arclength(kappa_t, speed_t)
        return CurvatureJets(
            t=float(t),
            kappa_s=kappa_s,
            tau_s=to_arclength(tau_t, speed_t),
            sigma_s=to_arclength(sigma_t, speed_t),
            rho_s=1.0 / kappa_s,
            speed=speed_t.value,
        )

    def harmonic_curvatures(
        self, cj: CurvatureJets, tolerances: Optional[Tolerances] = None
    ) -> HarmonicCurvatures:
        """Harmonic and anti-harmonic curvatures with their s-derivatives.

        Raises:
            DegenerateCurvature: σ vanishes, so H2 and the anti-harmonic pair are undefined.
        """
        tol = tolerances or Tolerances()
        kappa, tau, sigma = cj.kappa_s.value, cj.tau_s.value, cj.sigma_s.value
        if abs(sigma) <= tol.eps_deg * (kappa + tau):
            raise DegenerateCurvature(
                f"third curvature vanishes at t = {cj.t!r}", t=cj.t, curvature="sigma"
            )
        h1 = jet_ratio(cj.kappa_s, cj.tau_s)
        h2 = jet_ratio(h1.differentiate(), cj.sigma_s)
        h1t = jet_ratio(cj.sigma_s, cj.tau_s)
        h2t = jet_ratio(h1t.differentiate(), cj.kappa_s)
        return HarmonicCurvatures(H1=h1, H2=h2, H1t=h1t, H2t=h2t)

    def arclength(self, curve: Curve) -> Arclength:
        return Arclength(curve.speed, curve.t_min, curve.t_max)

    def grid_scale(self, curve: Curve, ts: np.ndarray) -> float:
        """Largest component magnitude of α' over the grid."""
        return max(float(np.max(np.abs(curve.derivatives(t, 1)[0].to_array()))) for t in ts)

    def sample(
        self,
        curve: Curve,
        samples: int,
        tolerances: Optional[Tolerances] = None,
        with_jets: bool = True,
        arclength: Optional[Callable[[float], float]] = None,
    ) -> List[FrenetSample]:
        """Apparatus (and curvature jets) on a uniform grid in t, in grid order.

        Harmonic curvatures are left unset at points where σ vanishes.
        """
        ts = curve.grid(samples)
        scale = self.grid_scale(curve, ts)
        arclength = arclength or self.arclength(curve)
        logger.info(f"Sampling {curve.name} at {samples} points on [{curve.t_min}, {curve.t_max}]")

        out = []
        for t in ts:
            t = float(t)
            app = self.frenet_apparatus(curve, t, scale, tolerances)
            jets = harmonic = None
            if with_jets:
                jets = self.curvature_jets(curve, t, scale=scale, tolerances=tolerances)
                try:
                    harmonic = self.harmonic_curvatures(jets, tolerances)
                except DegenerateCurvature:
                    logger.debug(f"No harmonic curvatures at t = {t!r}")
            logger.debug(f"t={t!r} kappa={app.kappa!r} tau={app.tau!r} sigma={app.sigma!r}")
            out.append(
                FrenetSample(t=t, s=arclength(t), apparatus=app, jets=jets, harmonic=harmonic)
            )

        return out

    def analyze(
        self, curve: Curve, grid: GridSpec, tolerances: Optional[Tolerances] = None
    ) -> AnalyzeReport:
        """Sampled apparatus table of a curve, with the frame continuity count.

        Args:
            curve: The curve.
            grid: Domain and sample count.
            tolerances: Thresholds to apply.

        Returns:
            One row per grid point, in grid order.
        """
        tol = tolerances or Tolerances()
        samples = self.sample(curve, grid.samples, tol)
        return AnalyzeReport(
            grid=grid,
            tolerances=tol,
            rows=[sample_row(s) for s in samples],
            frame_reversals=check_continuity(samples),
        )


def sample_row(sample: FrenetSample) -> SampleRow:
    app = sample.apparatus
    h = sample.harmonic
    return SampleRow(
        t=sample.t,
        s=sample.s,
        T=list(app.T.to_tuple()),
        N=list(app.N.to_tuple()),
        B=list(app.B.to_tuple()),
        E=list(app.E.to_tuple()),
        kappa=app.kappa,
        tau=app.tau,
        sigma=app.sigma,
        H1=h.H1.value if h is not None else None,
        H2=h.H2.value if h is not None else None,
    )


def jet_ratio(a: Jet, b: Jet) -> Jet:
    a, b = _common(a, b)
    return a / b


def check_continuity(samples: List[FrenetSample]) -> int:
    """Warn where a frame vector reverses between neighbouring samples.

    Returns:
        Number of reversals found.
    """
    flips = 0
    for prev, cur in zip(samples, samples[1:]):
        for name in ("N", "B", "E"):
            a = getattr(prev.apparatus, name).to_array()
            b = getattr(cur.apparatus, name).to_array()
            if float(np.dot(a, b)) < 0:
                flips += 1
                logger.warning(
                    f"{name} reverses between t = {prev.t!r} and t = {cur.t!r}; "
                    "the grid may be too coarse"
                )
    return flips


# Create a global frenet service instance
frenet_service = FrenetService()

frenet_apparatus = frenet_service.frenet_apparatus
curvature_jets = frenet_service.curvature_jets
harmonic_curvatures = frenet_service.harmonic_curvatures
