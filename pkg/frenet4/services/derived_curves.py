"""Bertrand mates and involutes of helices.

Each construction yields an evaluable curve, whose apparatus the frenet
service computes directly, and a closed-form apparatus written in the frame of
the original helix. ``crosscheck`` compares the two.
"""

import logging
import math
from dataclasses import dataclass
from typing import List, Optional, Sequence, Tuple, Union

import numpy as np
from scipy import integrate

from frenet4.exceptions import NotAHelix, SingularMate, SingularPoint
from frenet4.models.curve import Curve, Tolerances
from frenet4.models.geometry import FrenetApparatus, FrenetSample
from frenet4.models.reports import (
    AffineFitReport,
    Agreement,
    BertrandCoefficients,
    DerivedCurveReport,
    Discrepancy,
    DiscrepancyReport,
    GridSpec,
    InvoluteConstants,
    Verdict,
)
from frenet4.services.classify import classify_service, sphere_residual
from frenet4.services.frenet import check_continuity, frame_terms, frenet_service, sample_row
from frenet4.utils.jets import sqrt
from frenet4.utils.linalg import Vec4, dot, norm
from frenet4.utils.numerics import Arclength, affine_fit

logger = logging.getLogger(__name__)

Quantity = Union[float, Vec4]


# Constructed curves


class BertrandMateCurve(Curve):
    """ξ = δ + λN."""

    def __init__(self, delta: Curve, lam: float, tolerances: Optional[Tolerances] = None):
        super().__init__(
            delta.t_min, delta.t_max, f"bertrand mate of {delta.name}", delta.jet_order
        )
        self.delta = delta
        self.lam = float(lam)
        self.tolerances = tolerances

    def jet(self, t: float, order: int) -> Vec4:
        alpha = self.delta.jet(t, order + 2)
        d1 = alpha.differentiate()
        d2 = d1.differentiate()
        terms = frame_terms(t, d1.truncate(order), d2, tolerances=self.tolerances)
        return alpha.truncate(order) + terms.N * self.lam


class InvoluteCurve(Curve):
    """ξ = δ + (c - s)T, with s the arclength of δ from its t_min."""

    def __init__(
        self,
        delta: Curve,
        c: float,
        arclength: Arclength,
        tolerances: Optional[Tolerances] = None,
    ):
        super().__init__(delta.t_min, delta.t_max, f"involute of {delta.name}", delta.jet_order)
        self.delta = delta
        self.c = float(c)
        self.arclength = arclength
        self.tolerances = tolerances or Tolerances()

    def jet(self, t: float, order: int) -> Vec4:
        alpha = self.delta.jet(t, order + 1)
        d1 = alpha.differentiate()
        speed = sqrt(dot(d1, d1))
        s = speed.integrate(self.arclength(t)).truncate(order)
        gap = self.c - s
        if abs(gap.value) <= self.tolerances.eps_reg * max(1.0, abs(self.c)):
            raise SingularPoint(f"involute cusp at s = c = {self.c!r}", t=t, s=s.value)
        return alpha.truncate(order) + (d1 / speed) * gap


# Closed forms


@dataclass(frozen=True)
class Comparison:
    quantity: str
    closed_form: Quantity
    oracle: Quantity
    note: Optional[str] = None
    absolute: bool = False


@dataclass(frozen=True)
class BertrandMateApparatus:
    """Apparatus of ξ = δ + λN written in the frame of the helix δ."""

    coefficients: BertrandCoefficients
    T: Vec4
    N: Vec4
    B: Vec4
    E: Vec4
    B_consistent: Vec4
    kappa: float
    tau: float
    sigma: float
    speed: float  # ds_ξ/ds
    base_speed: float
    delta_N: Vec4

    @property
    def sphere_radius(self) -> float:
        return math.sqrt(self.tau**2 + self.sigma**2) / (self.kappa * abs(self.sigma))

    def comparisons(
        self, oracle: FrenetApparatus, s_xi: Optional[float] = None
    ) -> List[Comparison]:
        coeffs = self.coefficients
        sharing = 1.0 - abs(float(np.dot(oracle.N.to_array(), self.delta_N.to_array())))
        return [
            Comparison("T_xi", self.T, oracle.T),
            Comparison("N_xi", self.N, oracle.N),
            Comparison("B_xi", self.B_consistent, oracle.B),
            Comparison("E_xi", self.E, oracle.E),
            Comparison("kappa_xi", self.kappa, oracle.kappa),
            Comparison("tau_xi", self.tau, oracle.tau),
            Comparison("sigma_xi", self.sigma, oracle.sigma),
            Comparison("speed", self.speed * self.base_speed, oracle.speed),
            Comparison("normal_defect", coeffs.normal_defect, sharing, absolute=True),
            Comparison(
                "B_xi_printed",
                self.B,
                oracle.B,
                note=f"printed binormal; <B, T> = {-coeffs.b_orthogonality_defect!r}",
            ),
            Comparison(
                "l1", coeffs.l1, coeffs.l1_derived, note="printed coefficient against derivation"
            ),
        ]


@dataclass(frozen=True)
class InvoluteApparatus:
    """Apparatus of the involute at arclength s of the helix, in the helix frame."""

    c: float
    s: float
    T: Vec4
    N: Vec4
    B: Vec4
    E: Vec4
    kappa: float
    tau: float
    sigma: float
    speed: float  # ds_ξ/ds
    base_speed: float
    s_xi: float
    constants: InvoluteConstants

    def comparisons(
        self, oracle: FrenetApparatus, s_xi: Optional[float] = None
    ) -> List[Comparison]:
        out = [
            Comparison("T_xi", self.T, oracle.T),
            Comparison("N_xi", self.N, oracle.N),
            Comparison("B_xi", self.B, oracle.B),
            Comparison("E_xi", self.E, oracle.E),
            Comparison("kappa_xi", self.kappa, oracle.kappa),
            Comparison("tau_xi", self.tau, oracle.tau),
            Comparison("sigma_xi", self.sigma, oracle.sigma),
            Comparison("speed", self.speed * self.base_speed, oracle.speed),
        ]
        if s_xi is not None:
            root = math.sqrt(s_xi)
            k = self.constants
            out += [
                Comparison("s_xi", self.s_xi, s_xi),
                Comparison("A1", k.A1, oracle.kappa * root),
                Comparison("A2_derived", k.A2_derived, oracle.tau * root),
                Comparison("A3", k.A3, oracle.sigma * root),
                Comparison("A2", k.A2, oracle.tau * root, note="printed constant"),
            ]
        return out


def _check_helix(samples: Sequence[FrenetSample], tol: Tolerances) -> Tuple[float, float, float]:
    check = classify_service.is_helix(samples, tol)
    if check.verdict == Verdict.FALSE:
        raise NotAHelix(
            f"curvatures are not constant (relative deviation {check.residual:.3g})",
            residual=check.residual,
        )
    return check.means["kappa"], check.means["tau"], check.means["sigma"]


def bertrand_coefficients(
    kappa: float, tau: float, sigma: float, lam: float
) -> BertrandCoefficients:
    k2t2 = kappa**2 + tau**2
    p = kappa - lam * k2t2
    q = lam * tau * sigma
    K = math.hypot(1 - lam * kappa, lam * tau)
    L = math.hypot(p, q)
    # K = 0 is reported as SingularMate by the callers
    b_defect = 2 * lam * tau * (1 - lam * kappa) / K**2 if K > 0 else 0.0
    return BertrandCoefficients(
        lam=lam,
        K=K,
        L=L,
        M=tau * (lam * (k2t2 + sigma**2) - kappa * (1 + lam**2 * sigma**2)),
        l1=kappa**3 * (lam * kappa - 1) + lam * tau**2 * (2 * kappa**2 + tau**2 + sigma**2),
        l2=tau * sigma * (kappa - lam * (k2t2 + sigma**2)),
        l1_derived=-p * k2t2 + lam * tau**2 * sigma**2,
        b_orthogonality_defect=b_defect,
        normal_defect=1.0 - abs(p) / L if L > 0 else 1.0,
    )


def involute_constants(kappa: float, tau: float, sigma: float) -> InvoluteConstants:
    k2t2 = kappa**2 + tau**2
    A1 = math.sqrt(k2t2 / (2 * kappa))
    B1 = tau * sigma / k2t2
    B2 = -sigma * kappa / k2t2
    # The sphere-fit line is undefined when the helix lies in a hyperplane
    flat = B1 == 0 or B2 == 0
    return InvoluteConstants(
        A1=A1,
        A2=-tau * sigma / (2 * kappa * k2t2),
        A3=-sigma * math.sqrt(kappa) / math.sqrt(2 * k2t2),
        A2_derived=tau * sigma / math.sqrt(2 * kappa * k2t2),
        slope=None if flat else (B1**2 + B2**2) / (A1**2 * B2**2),
        intercept=None if flat else 1.0 / (4 * A1**4 * B1**2),
    )


def default_lambda(kappa: float) -> float:
    """Bertrand offset used when none is given: a tenth of the radius of curvature."""
    return 0.1 / kappa


def default_c(s_max: float) -> float:
    """Involute constant used when none is given, a quarter of the length past the end."""
    return s_max + s_max / 4


# Comparison


def _distance(a: Quantity, b: Quantity, absolute: bool) -> Tuple[float, bool]:
    """Difference up to sign and whether the sign-flipped match is the better one."""
    if isinstance(a, Vec4):
        x, y = a.to_array(), np.asarray(b.to_array())
        direct, flipped = float(np.linalg.norm(x - y)), float(np.linalg.norm(x + y))
        return min(direct, flipped), flipped < direct
    direct, flipped = abs(a - b), abs(a + b)
    scale = 1.0 if absolute else max(abs(a), abs(b))
    if scale == 0:
        return 0.0, False
    return min(direct, flipped) / scale, flipped < direct


def _as_json(q: Quantity) -> Union[float, List[float]]:
    return list(q.to_tuple()) if isinstance(q, Vec4) else float(q)


def crosscheck(
    closed_form: Union[BertrandMateApparatus, InvoluteApparatus],
    oracle: FrenetApparatus,
    s_xi: Optional[float] = None,
    tolerances: Optional[Tolerances] = None,
) -> DiscrepancyReport:
    """Compare a closed-form apparatus with the one computed on the constructed curve.

    Frame vectors and curvatures are matched up to sign; a sign-flipped match is
    reported as such rather than as a disagreement.
    """
    tol = tolerances or Tolerances()
    entries = []
    for cmp in closed_form.comparisons(oracle, s_xi):
        difference, flipped = _distance(cmp.closed_form, cmp.oracle, cmp.absolute)
        if difference >= tol.tol_crosscheck:
            verdict = Agreement.DISAGREE
        elif flipped:
            verdict = Agreement.SIGN
        else:
            verdict = Agreement.AGREE
        entries.append(
            Discrepancy(
                quantity=cmp.quantity,
                closed_form=_as_json(cmp.closed_form),
                oracle=_as_json(cmp.oracle),
                difference=difference,
                sign_flipped=flipped,
                verdict=verdict,
                note=cmp.note,
            )
        )
    return DiscrepancyReport(t=oracle.t, entries=entries)


@dataclass
class DerivedAnalysis:
    """A constructed curve sampled together with its closed-form comparison."""

    curve: Curve
    samples: List[FrenetSample]
    report: DerivedCurveReport


class DerivedCurvesService:
    """Constructions on helices and their verification."""

    def bertrand_mate(
        self,
        delta: Curve,
        lam: float,
        delta_samples: Sequence[FrenetSample],
        tolerances: Optional[Tolerances] = None,
    ) -> BertrandMateCurve:
        """Bertrand mate at offset λ of a helix sampled on its grid.

        Raises:
            NotAHelix: The curvatures of δ are not constant.
            SingularMate: K or L vanishes for this λ.
        """
        tol = tolerances or Tolerances()
        kappa, tau, sigma = _check_helix(delta_samples, tol)
        coeffs = bertrand_coefficients(kappa, tau, sigma, lam)
        self._check_mate(coeffs, kappa, tau, sigma, tol)
        logger.info(f"Bertrand mate with lambda={lam!r}: K={coeffs.K!r}, L={coeffs.L!r}")
        return BertrandMateCurve(delta, lam, tol)

    def _check_mate(self, coeffs: BertrandCoefficients, kappa, tau, sigma, tol: Tolerances) -> None:
        if coeffs.K <= tol.eps_deg:
            raise SingularMate(f"K vanishes for lambda = {coeffs.lam!r}", K=coeffs.K)
        if coeffs.L <= tol.eps_deg * (kappa + tau + abs(sigma)):
            raise SingularMate(f"L vanishes for lambda = {coeffs.lam!r}", L=coeffs.L)

    def bertrand_apparatus(
        self, delta_app: FrenetApparatus, lam: float, tolerances: Optional[Tolerances] = None
    ) -> BertrandMateApparatus:
        """Closed-form apparatus of the Bertrand mate at one point of the helix."""
        tol = tolerances or Tolerances()
        kappa, tau, sigma = delta_app.kappa, delta_app.tau, delta_app.sigma
        coeffs = bertrand_coefficients(kappa, tau, sigma, lam)
        self._check_mate(coeffs, kappa, tau, sigma, tol)
        K, L = coeffs.K, coeffs.L
        p = kappa - lam * (kappa**2 + tau**2)
        q = lam * tau * sigma
        T, N, B, E = delta_app.frame
        return BertrandMateApparatus(
            coefficients=coeffs,
            T=(T * (1 - lam * kappa) + B * (lam * tau)) / K,
            N=(N * p + E * q) / L,
            B=-(T * (lam * tau) + B * (1 - lam * kappa)) / K,
            E=-(N * q - E * p) / L,
            B_consistent=(B * (1 - lam * kappa) - T * (lam * tau)) / K,
            kappa=L / K**2,
            tau=coeffs.M / (K**2 * L),
            sigma=kappa * sigma / L,
            speed=K,
            base_speed=delta_app.speed,
            delta_N=N,
        )

    def involute(
        self,
        delta: Curve,
        c: float,
        delta_samples: Sequence[FrenetSample],
        tolerances: Optional[Tolerances] = None,
        arclength: Optional[Arclength] = None,
    ) -> InvoluteCurve:
        """Involute of a helix unwinding from arclength c.

        Raises:
            NotAHelix: The curvatures of δ are not constant.
            SingularPoint: s = c falls inside the sampled arclength range.
        """
        tol = tolerances or Tolerances()
        _check_helix(delta_samples, tol)
        arclength = arclength or frenet_service.arclength(delta)
        if 0.0 <= c <= arclength.total:
            raise SingularPoint(
                f"involute has its cusp at s = c = {c!r} inside the sampled range "
                f"[0, {arclength.total!r}]",
                t=arclength.inverse(c),
                s=c,
            )
        return InvoluteCurve(delta, c, arclength, tol)

    def involute_apparatus(
        self,
        delta_app: FrenetApparatus,
        s: float,
        c: float,
        tolerances: Optional[Tolerances] = None,
    ) -> InvoluteApparatus:
        """Closed-form apparatus of the involute at arclength s of the helix."""
        tol = tolerances or Tolerances()
        gap = abs(c - s)
        if gap <= tol.eps_reg * max(1.0, abs(c)):
            raise SingularPoint(f"involute cusp at s = c = {c!r}", t=delta_app.t, s=s)
        kappa, tau, sigma = delta_app.kappa, delta_app.tau, delta_app.sigma
        root = math.hypot(kappa, tau)
        T, N, B, E = delta_app.frame
        return InvoluteApparatus(
            c=c,
            s=s,
            T=N,
            N=(B * tau - T * kappa) / root,
            B=-E,
            E=(T * tau + B * kappa) / root,
            kappa=root / (kappa * gap),
            tau=tau * sigma / (kappa * root * gap),
            sigma=-sigma / (root * gap),
            speed=kappa * gap,
            base_speed=delta_app.speed,
            s_xi=kappa * gap**2 / 2,
            constants=involute_constants(kappa, tau, sigma),
        )

    def involute_arclength(self, curve: InvoluteCurve, ts: np.ndarray) -> np.ndarray:
        """Arclength of the involute from its cusp, by integrating its speed.

        The helix arclength s is carried along as a second state so that the
        involute's speed needs no nested quadrature.
        """
        delta, c = curve.delta, curve.c
        t_cusp = curve.arclength.inverse(c)

        def rhs(t, y):
            s = y[0]
            (d1,) = delta.derivatives(t, 1, 2)
            speed = norm(d1)
            T = d1 / speed
            dT = T.differentiate().value()
            v = speed.value
            velocity = d1.value() - T.value() * v + dT * (c - s)
            return [v, math.sqrt(float(dot(velocity, velocity)))]

        ordered = ts if t_cusp < ts[0] else ts[::-1]
        end = float(ordered[-1])
        solution = integrate.solve_ivp(
            rhs, (t_cusp, end), [c, 0.0], method="DOP853", t_eval=ordered, rtol=1e-12, atol=1e-14
        )
        if not solution.success:
            logger.warning(f"Involute arclength integration: {solution.message}")
        # Integrating towards smaller t accumulates a negative length
        values = np.abs(solution.y[1])
        return values if t_cusp < ts[0] else values[::-1]

    def analyze_bertrand(
        self,
        delta: Curve,
        lam: float,
        samples: int,
        tolerances: Optional[Tolerances] = None,
        delta_samples: Optional[List[FrenetSample]] = None,
    ) -> DerivedAnalysis:
        """Sample the mate of a helix and compare it with its closed form."""
        tol = tolerances or Tolerances()
        if delta_samples is None:
            delta_samples = frenet_service.sample(delta, samples, tol, with_jets=False)
        mate = self.bertrand_mate(delta, lam, delta_samples, tol)
        mate_samples = frenet_service.sample(mate, samples, tol)
        check_continuity(mate_samples)

        discrepancies = [
            crosscheck(self.bertrand_apparatus(d.apparatus, lam, tol), m.apparatus, tolerances=tol)
            for d, m in zip(delta_samples, mate_samples)
        ]
        coeffs = self.bertrand_apparatus(delta_samples[0].apparatus, lam, tol).coefficients
        report = DerivedCurveReport(
            grid=GridSpec(t_min=delta.t_min, t_max=delta.t_max, samples=samples),
            tolerances=tol,
            construction="bertrand",
            lam=lam,
            bertrand=coeffs,
            rows=[sample_row(m) for m in mate_samples],
            discrepancies=discrepancies,
            max_discrepancy=max(d.max_difference for d in discrepancies),
            flagged=_flagged(discrepancies),
        )
        return DerivedAnalysis(curve=mate, samples=mate_samples, report=report)

    def analyze_involute(
        self,
        delta: Curve,
        c: float,
        samples: int,
        tolerances: Optional[Tolerances] = None,
        delta_samples: Optional[List[FrenetSample]] = None,
    ) -> DerivedAnalysis:
        """Sample the involute of a helix and compare it with its closed form.

        The s column of the involute rows is its arclength from the cusp.
        """
        tol = tolerances or Tolerances()
        if delta_samples is None:
            delta_samples = frenet_service.sample(delta, samples, tol, with_jets=False)
        arclength = frenet_service.arclength(delta)
        curve = self.involute(delta, c, delta_samples, tol, arclength)
        ts = np.array([d.t for d in delta_samples])
        s_xi = self.involute_arclength(curve, ts)
        involute_samples = frenet_service.sample(
            curve, samples, tol, arclength=lambda t: float(np.interp(t, ts, s_xi))
        )
        check_continuity(involute_samples)

        discrepancies = []
        for d, inv, length in zip(delta_samples, involute_samples, s_xi):
            closed = self.involute_apparatus(d.apparatus, d.s, c, tol)
            discrepancies.append(crosscheck(closed, inv.apparatus, float(length), tol))
        first = delta_samples[0].apparatus
        constants = involute_constants(first.kappa, first.tau, first.sigma)

        sphere_fit = None
        if constants.slope is not None and all(s.harmonic is not None for s in involute_samples):
            fit = affine_fit(s_xi, [sphere_residual(s.jets) for s in involute_samples])
            sphere_fit = AffineFitReport(
                slope=fit.slope,
                intercept=fit.intercept,
                r_squared=fit.r_squared,
                expected_slope=constants.slope,
                expected_intercept=constants.intercept,
            )
        report = DerivedCurveReport(
            grid=GridSpec(t_min=delta.t_min, t_max=delta.t_max, samples=samples),
            tolerances=tol,
            construction="involute",
            c=c,
            involute=constants,
            sphere_fit=sphere_fit,
            rows=[sample_row(s) for s in involute_samples],
            discrepancies=discrepancies,
            max_discrepancy=max(d.max_difference for d in discrepancies),
            flagged=_flagged(discrepancies),
        )
        return DerivedAnalysis(curve=curve, samples=involute_samples, report=report)


def _flagged(discrepancies: Sequence[DiscrepancyReport]) -> List[str]:
    """Quantities that fail to agree, including sign-only mismatches, in first-seen order."""
    seen: List[str] = []
    for report in discrepancies:
        for entry in report.entries:
            if entry.verdict != Agreement.AGREE and entry.quantity not in seen:
                seen.append(entry.quantity)
    for quantity in seen:
        logger.warning(f"Closed form of {quantity} does not agree with the constructed curve")
    return seen


# Create a global derived curves service instance
derived_curves_service = DerivedCurvesService()

bertrand_mate = derived_curves_service.bertrand_mate
bertrand_apparatus = derived_curves_service.bertrand_apparatus
involute = derived_curves_service.involute
involute_apparatus = derived_curves_service.involute_apparatus
