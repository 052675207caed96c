"""Frenet apparatus and curvature data attached to a curve point."""

from dataclasses import dataclass
from typing import Optional

from frenet4.utils.jets import Jet
from frenet4.utils.linalg import Frame4


@dataclass(frozen=True)
class FrenetApparatus:
    """Frame and curvatures at one parameter value."""

    t: float
    frame: Frame4
    kappa: float
    tau: float
    sigma: float
    speed: float
    mu: int

    @property
    def T(self):
        return self.frame.T

    @property
    def N(self):
        return self.frame.N

    @property
    def B(self):
        return self.frame.B

    @property
    def E(self):
        return self.frame.E


@dataclass(frozen=True)
class CurvatureJets:
    """κ, τ, σ and ρ = 1/κ as jets in the arclength variable."""

    t: float
    kappa_s: Jet
    tau_s: Jet
    sigma_s: Jet
    rho_s: Jet
    speed: float


@dataclass(frozen=True)
class HarmonicCurvatures:
    """H1 = κ/τ, H2 = H1'/σ and the anti-harmonic pair σ/τ, (σ/τ)'/κ, as s-jets."""

    H1: Jet
    H2: Jet
    H1t: Jet
    H2t: Jet


@dataclass(frozen=True)
class FrenetSample:
    """One grid point of a sampled curve."""

    t: float
    s: float
    apparatus: FrenetApparatus
    jets: Optional[CurvatureJets] = None
    harmonic: Optional[HarmonicCurvatures] = None
