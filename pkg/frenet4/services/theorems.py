"""Executable corollaries for helices, their Bertrand mates and involutes."""

import logging
import math
from typing import List, Optional, Sequence, Tuple

import numpy as np

from frenet4.exceptions import DegenerateCurvature, GeometryError, NotRegular, VerificationError
from frenet4.models.curve import Curve, Tolerances
from frenet4.models.geometry import FrenetSample
from frenet4.models.reports import (
    ConstancyCheck,
    GridSpec,
    ItemVerdict,
    TheoremItem,
    TheoremReport,
    Verdict,
)
from frenet4.services.classify import (
    classify_service,
    curvature_scale,
    generalized_helix_residual,
    slant3_residual,
    sphere_residual,
)
from frenet4.services.derived_curves import default_c, default_lambda, derived_curves_service
from frenet4.services.frenet import frenet_service

logger = logging.getLogger(__name__)

_NO_SIGMA = "third curvature vanishes on the grid"

_MATE_RADIUS_CLAIM = (
    "the mate's sphere radius is sqrt(tau^2 + (1 - lambda kappa)^2 sigma^2)/(kappa sigma)"
)
_MATE_CLAIMS = [
    ("mate.is_helix", "the Bertrand mate of a helix is a helix"),
    ("mate.not_generalized_helix", "the Bertrand mate is not a generalized helix"),
    ("mate.not_slant3", "the Bertrand mate is not a type-3 slant helix"),
    ("mate.sphere_radius", _MATE_RADIUS_CLAIM),
]
_INVOLUTE_CLAIMS = [
    ("involute.not_helix", "the involute of a helix is not a helix"),
    ("involute.is_ccr", "the involute of a helix has constant curvature ratios"),
    ("involute.not_generalized_helix", "the involute is not a generalized helix"),
    ("involute.not_slant3", "the involute is not a type-3 slant helix"),
    ("involute.not_spherical", "the involute of a helix does not lie on a hypersphere"),
]

_FROM_VERDICT = {
    Verdict.TRUE: ItemVerdict.PASS,
    Verdict.FALSE: ItemVerdict.FAIL,
    Verdict.INCONCLUSIVE: ItemVerdict.INCONCLUSIVE,
}
_NEGATED = {
    Verdict.TRUE: ItemVerdict.FAIL,
    Verdict.FALSE: ItemVerdict.PASS,
    Verdict.INCONCLUSIVE: ItemVerdict.INCONCLUSIVE,
}


def _missing_harmonic(samples: Sequence[FrenetSample]) -> bool:
    return any(s.harmonic is None for s in samples)


def nonzero_item(
    item_id: str,
    claim: str,
    residuals: Sequence[float],
    bounds: Sequence[float],
    scale: float,
    tol: Tolerances,
) -> TheoremItem:
    """A residual claimed to stay at or above a pointwise lower bound, away from zero.

    PASS needs every residual above its bound and the smallest normalized residual
    clear of the inconclusive band; a residual indistinguishable from zero fails.
    """
    res = np.asarray(residuals)
    low = np.asarray(bounds)
    margin = float(res.min() / scale)
    above = bool(np.all(res >= low * (1 - tol.tol_const)))
    if margin < tol.tol_pde or not above:
        verdict = ItemVerdict.FAIL
    elif margin < tol.inconclusive_factor * tol.tol_pde:
        verdict = ItemVerdict.INCONCLUSIVE
    else:
        verdict = ItemVerdict.PASS
    return TheoremItem(
        id=item_id, claim=claim, verdict=verdict, value=float(res.min()), bound=float(low.min())
    )


def equality_item(
    item_id: str, claim: str, value: float, expected: float, tol: float, factor: float
) -> TheoremItem:
    difference = abs(value - expected) / max(abs(expected), abs(value))
    if difference < tol:
        verdict = ItemVerdict.PASS
    elif difference >= factor * tol:
        verdict = ItemVerdict.FAIL
    else:
        verdict = ItemVerdict.INCONCLUSIVE
    return TheoremItem(
        id=item_id,
        claim=claim,
        verdict=verdict,
        value=value,
        bound=expected,
        note=f"relative difference {difference!r}",
    )


def _inconclusive(item_id: str, claim: str, note: str) -> TheoremItem:
    return TheoremItem(id=item_id, claim=claim, verdict=ItemVerdict.INCONCLUSIVE, note=note)


def _degenerate_construction(
    claims: Sequence[Tuple[str, str]], construction: str, error: GeometryError
) -> List[TheoremItem]:
    """Every item of a construction whose curve has no 4D Frenet frame."""
    logger.warning(f"The {construction} is degenerate: {error}")
    note = f"the {construction} is degenerate ({type(error).__name__}: {error})"
    return [_inconclusive(item_id, claim, note) for item_id, claim in claims]


def _residual_items(
    key: str, subject: str, samples: Sequence[FrenetSample], tol: Tolerances
) -> List[TheoremItem]:
    """The two "cannot be a generalized helix / slant helix" items for a sampled curve."""
    gh_claim = f"{subject} is not a generalized helix"
    s3_claim = f"{subject} is not a type-3 slant helix"
    if _missing_harmonic(samples):
        return [
            _inconclusive(f"{key}.not_generalized_helix", gh_claim, _NO_SIGMA),
            _inconclusive(f"{key}.not_slant3", s3_claim, _NO_SIGMA),
        ]
    scale = curvature_scale(samples)
    apps = [s.apparatus for s in samples]
    return [
        nonzero_item(
            f"{key}.not_generalized_helix",
            gh_claim,
            [generalized_helix_residual(s.jets, s.harmonic) for s in samples],
            [abs(a.sigma * a.kappa / a.tau) / 2 for a in apps],
            scale,
            tol,
        ),
        nonzero_item(
            f"{key}.not_slant3",
            s3_claim,
            [slant3_residual(s.jets, s.harmonic) for s in samples],
            [abs(a.sigma**2 / a.tau) / 2 for a in apps],
            scale,
            tol,
        ),
    ]


def _fitted_radius(samples: Sequence[FrenetSample], tol: Tolerances):
    return classify_service.sphere_check([sphere_residual(s.jets) for s in samples], tol)


class TheoremService:
    """Runs the twelve corollary checks against one helix."""

    def verify(
        self,
        delta: Curve,
        samples: int,
        tolerances: Optional[Tolerances] = None,
        lam: Optional[float] = None,
        c: Optional[float] = None,
    ) -> TheoremReport:
        """Check the helix, Bertrand mate and involute corollaries.

        Args:
            delta: The helix.
            samples: Grid size for every sampled curve.
            tolerances: Thresholds to apply.
            lam: Bertrand offset; 0.1/κ when omitted.
            c: Involute constant; beyond the sampled arclength range when omitted.

        Raises:
            VerificationError: delta is not a W-curve.
        """
        tol = tolerances or Tolerances()
        delta_samples = frenet_service.sample(delta, samples, tol)
        helix = classify_service.is_helix(delta_samples, tol)
        if helix.verdict == Verdict.FALSE:
            raise VerificationError(
                "verify requires a W-curve (constant curvatures); "
                f"relative deviation {helix.residual:.3g}",
                residual=helix.residual,
            )
        kappa, tau, sigma = (helix.means[k] for k in ("kappa", "tau", "sigma"))
        if lam is None:
            lam = default_lambda(kappa)
        if c is None:
            c = default_c(delta_samples[-1].s)
        logger.info(f"Verifying with lambda={lam!r}, c={c!r}")

        items = self._helix_items(delta_samples, helix, tol)
        items += self._bertrand_items(delta, delta_samples, kappa, tau, sigma, lam, samples, tol)
        items += self._involute_items(delta, delta_samples, c, samples, tol)

        verdicts = {item.verdict for item in items}
        if ItemVerdict.FAIL in verdicts:
            verdict = ItemVerdict.FAIL
        elif ItemVerdict.INCONCLUSIVE in verdicts:
            verdict = ItemVerdict.INCONCLUSIVE
        else:
            verdict = ItemVerdict.PASS
        for item in items:
            if item.verdict != ItemVerdict.PASS:
                logger.warning(f"{item.id}: {item.verdict.value} ({item.claim})")

        return TheoremReport(
            grid=GridSpec(t_min=delta.t_min, t_max=delta.t_max, samples=samples),
            tolerances=tol,
            lam=lam,
            c=c,
            items=items,
            verdict=verdict,
        )

    def _helix_items(
        self, samples: List[FrenetSample], helix: ConstancyCheck, tol: Tolerances
    ) -> List[TheoremItem]:
        items = _residual_items("helix", "a helix", samples, tol)
        claim = "a helix on a hypersphere has radius sqrt(tau^2 + sigma^2)/(kappa sigma)"
        if _missing_harmonic(samples):
            return items + [_inconclusive("helix.sphere_radius", claim, _NO_SIGMA)]
        kappa, tau, sigma = (helix.means[k] for k in ("kappa", "tau", "sigma"))
        sphere = _fitted_radius(samples, tol)
        expected = math.sqrt(tau**2 + sigma**2) / (kappa * abs(sigma))
        item = equality_item(
            "helix.sphere_radius",
            claim,
            sphere.radius or 0.0,
            expected,
            tol.tol_crosscheck,
            tol.inconclusive_factor,
        )
        if sphere.verdict == Verdict.FALSE:
            item.verdict = ItemVerdict.FAIL
            item.note = f"squared radius estimate is not constant ({sphere.residual!r})"
        return items + [item]

    def _bertrand_items(
        self,
        delta: Curve,
        delta_samples: List[FrenetSample],
        kappa: float,
        tau: float,
        sigma: float,
        lam: float,
        samples: int,
        tol: Tolerances,
    ) -> List[TheoremItem]:
        try:
            analysis = derived_curves_service.analyze_bertrand(
                delta, lam, samples, tol, delta_samples=delta_samples
            )
        except (DegenerateCurvature, NotRegular) as e:
            return _degenerate_construction(_MATE_CLAIMS, "Bertrand mate", e)
        mate = analysis.samples
        mate_helix = classify_service.is_helix(mate, tol)
        items = [
            TheoremItem(
                id="mate.is_helix",
                claim=_MATE_CLAIMS[0][1],
                verdict=_FROM_VERDICT[mate_helix.verdict],
                value=mate_helix.residual,
                bound=tol.tol_const,
            )
        ]
        items += _residual_items("mate", "the Bertrand mate", mate, tol)

        claim = _MATE_RADIUS_CLAIM
        if _missing_harmonic(mate):
            return items + [_inconclusive("mate.sphere_radius", claim, _NO_SIGMA)]
        expected = math.sqrt(tau**2 + (1 - lam * kappa) ** 2 * sigma**2) / (kappa * abs(sigma))
        sphere = _fitted_radius(mate, tol)
        item = equality_item(
            "mate.sphere_radius",
            claim,
            sphere.radius or 0.0,
            expected,
            tol.tol_crosscheck,
            tol.inconclusive_factor,
        )
        closed = derived_curves_service.bertrand_apparatus(delta_samples[0].apparatus, lam, tol)
        identity = abs(closed.sphere_radius - expected) / expected
        item.note = f"{item.note}; closed-form identity difference {identity!r}"
        return items + [item]

    def _involute_items(
        self,
        delta: Curve,
        delta_samples: List[FrenetSample],
        c: float,
        samples: int,
        tol: Tolerances,
    ) -> List[TheoremItem]:
        try:
            analysis = derived_curves_service.analyze_involute(
                delta, c, samples, tol, delta_samples=delta_samples
            )
        except (DegenerateCurvature, NotRegular) as e:
            # The involute of a helix in a hyperplane is planar
            return _degenerate_construction(_INVOLUTE_CLAIMS, "involute", e)
        inv = analysis.samples
        inv_helix = classify_service.is_helix(inv, tol)
        inv_ccr = classify_service.is_ccr(inv, tol)
        items = [
            TheoremItem(
                id="involute.not_helix",
                claim=_INVOLUTE_CLAIMS[0][1],
                verdict=_NEGATED[inv_helix.verdict],
                value=inv_helix.residual,
                bound=tol.tol_const,
            ),
            TheoremItem(
                id="involute.is_ccr",
                claim=_INVOLUTE_CLAIMS[1][1],
                verdict=_FROM_VERDICT[inv_ccr.verdict],
                value=inv_ccr.residual,
                bound=tol.tol_const,
            ),
        ]
        items += _residual_items("involute", "the involute", inv, tol)

        claim = _INVOLUTE_CLAIMS[4][1]
        fit = analysis.report.sphere_fit
        if _missing_harmonic(inv) or fit is None:
            return items + [_inconclusive("involute.not_spherical", claim, _NO_SIGMA)]
        sphere = _fitted_radius(inv, tol)
        item = TheoremItem(
            id="involute.not_spherical",
            claim=claim,
            verdict=_NEGATED[sphere.verdict],
            value=sphere.residual,
            bound=tol.tol_const,
            note=(
                f"squared radius estimate against involute arclength: slope {fit.slope!r} "
                f"(expected {fit.expected_slope!r}), R^2 {fit.r_squared!r}"
            ),
        )
        if item.verdict == ItemVerdict.PASS and (fit.r_squared <= 0.999 or fit.slope == 0):
            item.verdict = ItemVerdict.FAIL
        return items + [item]


# Create a global theorem service instance
theorem_service = TheoremService()
