"""Residual-based classification of sampled curves.

Predicates work on grids of samples produced by the frenet service and answer
true / false / inconclusive. A residual below the tolerance is zero, one at or
above ``inconclusive_factor`` times the tolerance is not, anything in between
is inconclusive.
"""

import logging
import math
from typing import List, Optional, Sequence, Tuple

import numpy as np

from frenet4.config import config
from frenet4.exceptions import DegenerateCurvature, SpecError
from frenet4.models.curve import Tolerances
from frenet4.models.geometry import CurvatureJets, FrenetSample, HarmonicCurvatures
from frenet4.models.reports import (
    CcrSphereCheck,
    ClassificationReport,
    ConstancyCheck,
    GridSpec,
    ResidualCheck,
    SphereCheck,
    Verdict,
)
from frenet4.services.frenet import jet_ratio
from frenet4.utils.jets import Jet
from frenet4.utils.numerics import max_relative_deviation

logger = logging.getLogger(__name__)


def tri_state(residual: float, tol: float, factor: float) -> Verdict:
    """Verdict of the claim "residual is zero"."""
    if not math.isfinite(residual) or residual >= factor * tol:
        return Verdict.FALSE
    if residual < tol:
        return Verdict.TRUE
    return Verdict.INCONCLUSIVE


def curvature_scale(samples: Sequence[FrenetSample]) -> float:
    """Largest of κ, τ, |σ| over the grid; residuals are divided by it."""
    return max(max(s.apparatus.kappa, s.apparatus.tau, abs(s.apparatus.sigma)) for s in samples)


def generalized_helix_residual(cj: CurvatureJets, h: HarmonicCurvatures) -> float:
    """|H2' + σ H1|, zero along generalized helices."""
    return abs(h.H2.derivative(1) + cj.sigma_s.value * h.H1.value)


def slant3_residual(cj: CurvatureJets, h: HarmonicCurvatures) -> float:
    """|H̃2' + σ H̃1|, zero along type-3 slant helices."""
    return abs(h.H2t.derivative(1) + cj.sigma_s.value * h.H1t.value)


def sphere_residual(cj: CurvatureJets) -> float:
    """Squared radius estimate ρ² + (ρ'/τ)² + [ρτ + (ρ'/τ)']²/σ².

    Constant exactly when the curve lies on a hypersphere, and then equal to r².
    """
    rho, tau, sigma = cj.rho_s, cj.tau_s, cj.sigma_s.value
    if sigma == 0:
        raise DegenerateCurvature("sphere estimate needs a non-vanishing third curvature", t=cj.t)
    q = jet_ratio(rho.differentiate(), tau)
    return rho.value**2 + q.value**2 + (rho.value * tau.value + q.derivative(1)) ** 2 / sigma**2


def ccr_sphere_residual(f_jet: Jet, a: float, b: float) -> Tuple[float, float]:
    """Squared radius estimate of a curve with τ = aκ, σ = bκ, through f = ρ².

    Returns:
        The value of f + f'²/(4a²) + f(2a² + f'')²/(4a²b²), and the same expression
        with f² as leading term.
    """
    if a == 0 or b == 0:
        raise DegenerateCurvature(f"curvature ratios must not vanish, got a={a!r}, b={b!r}")
    f, f1, f2 = (f_jet.derivative(k) for k in range(3))
    tail = f1**2 / (4 * a**2) + f * (2 * a**2 + f2) ** 2 / (4 * a**2 * b**2)
    return f + tail, f * f + tail


def _max_relative_difference(values: Sequence[float], reference: np.ndarray) -> float:
    return float(np.max(np.abs(np.asarray(values) - reference) / np.abs(reference)))


class ClassifyService:
    """Classification predicates over sampled curves."""

    def _check_samples(self, samples: Sequence[FrenetSample]) -> None:
        if len(samples) < config.min_samples:
            raise SpecError(
                f"classification needs at least {config.min_samples} samples, got {len(samples)}"
            )

    def _constancy(self, series: dict, tol: Tolerances) -> ConstancyCheck:
        means = {}
        residual = 0.0
        for name, values in series.items():
            means[name], deviation = max_relative_deviation(values)
            residual = max(residual, deviation)
        return ConstancyCheck(
            verdict=tri_state(residual, tol.tol_const, tol.inconclusive_factor),
            residual=residual,
            means=means,
        )

    def is_helix(
        self, samples: Sequence[FrenetSample], tolerances: Optional[Tolerances] = None
    ) -> ConstancyCheck:
        """Are κ, τ and σ constant over the grid?"""
        self._check_samples(samples)
        apps = [s.apparatus for s in samples]
        return self._constancy(
            {
                "kappa": [a.kappa for a in apps],
                "tau": [a.tau for a in apps],
                "sigma": [a.sigma for a in apps],
            },
            tolerances or Tolerances(),
        )

    def is_ccr(
        self, samples: Sequence[FrenetSample], tolerances: Optional[Tolerances] = None
    ) -> ConstancyCheck:
        """Are τ/κ and σ/κ constant over the grid? Means are reported as a and b."""
        self._check_samples(samples)
        apps = [s.apparatus for s in samples]
        return self._constancy(
            {"a": [a.tau / a.kappa for a in apps], "b": [a.sigma / a.kappa for a in apps]},
            tolerances or Tolerances(),
        )

    def residual_check(
        self, values: Sequence[float], scale: float, tol: Tolerances
    ) -> ResidualCheck:
        arr = np.asarray(values, dtype=float)
        normalized = arr / scale
        return ResidualCheck(
            verdict=tri_state(float(normalized.max()), tol.tol_pde, tol.inconclusive_factor),
            max=float(arr.max()),
            mean=float(arr.mean()),
            min=float(arr.min()),
            normalized_max=float(normalized.max()),
            normalized_min=float(normalized.min()),
        )

    def sphere_check(self, values: Sequence[float], tol: Tolerances) -> SphereCheck:
        mean, deviation = max_relative_deviation(values)
        return SphereCheck(
            verdict=tri_state(deviation, tol.tol_const, tol.inconclusive_factor),
            residual=deviation,
            r_squared=mean,
            radius=math.sqrt(mean) if mean > 0 else None,
        )

    def ccr_sphere_check(
        self,
        samples: Sequence[FrenetSample],
        a: float,
        b: float,
        sphere: List[float],
        tol: Tolerances,
    ) -> CcrSphereCheck:
        substituted, printed = [], []
        for sample in samples:
            rho = sample.jets.rho_s
            value, printed_value = ccr_sphere_residual(rho * rho, a, b)
            substituted.append(value)
            printed.append(printed_value)
        reference = np.asarray(sphere)
        agreement = _max_relative_difference(substituted, reference)
        printed_agreement = _max_relative_difference(printed, reference)
        if printed_agreement > tol.tol_const:
            logger.warning(
                f"Leading term f² of the ccr sphere equation departs from the sphere "
                f"estimate by {printed_agreement:.3g}"
            )
        mean, deviation = max_relative_deviation(substituted)
        return CcrSphereCheck(
            verdict=tri_state(deviation, tol.tol_const, tol.inconclusive_factor),
            residual=deviation,
            value_mean=mean,
            agreement_with_sphere=agreement,
            printed_form_mean=float(np.mean(printed)),
            printed_form_agreement=printed_agreement,
        )

    def classify(
        self,
        samples: Sequence[FrenetSample],
        grid: GridSpec,
        tolerances: Optional[Tolerances] = None,
    ) -> ClassificationReport:
        """Run every predicate on a sampled curve.

        Residual checks that need σ are left out when σ vanishes somewhere on the grid.
        """
        tol = tolerances or Tolerances()
        scale = curvature_scale(samples)
        report = ClassificationReport(
            grid=grid,
            tolerances=tol,
            curvature_scale=scale,
            is_helix=self.is_helix(samples, tol),
            is_ccr=self.is_ccr(samples, tol),
        )

        if any(s.jets is None or s.harmonic is None for s in samples):
            logger.warning("Third curvature vanishes on the grid; skipping residual checks")
            return report

        report.generalized_helix = self.residual_check(
            [generalized_helix_residual(s.jets, s.harmonic) for s in samples], scale, tol
        )
        report.slant3 = self.residual_check(
            [slant3_residual(s.jets, s.harmonic) for s in samples], scale, tol
        )
        sphere = [sphere_residual(s.jets) for s in samples]
        report.sphere = self.sphere_check(sphere, tol)

        if report.is_ccr.verdict == Verdict.TRUE:
            a, b = report.is_ccr.means["a"], report.is_ccr.means["b"]
            report.ccr_sphere = self.ccr_sphere_check(samples, a, b, sphere, tol)
            report.ccr_not_generalized_helix = report.generalized_helix.verdict == Verdict.FALSE
            report.ccr_not_slant3 = report.slant3.verdict == Verdict.FALSE

        for name in ("is_helix", "is_ccr", "generalized_helix", "slant3", "sphere"):
            check = getattr(report, name)
            if check is not None and check.verdict == Verdict.INCONCLUSIVE:
                logger.warning(f"{name} is inconclusive")
        return report


# Create a global classify service instance
classify_service = ClassifyService()

is_helix = classify_service.is_helix
is_ccr = classify_service.is_ccr
