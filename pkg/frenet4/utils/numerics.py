"""Quadrature, finite differences and fitting used around the jet engine."""

import logging
from dataclasses import dataclass
from typing import Callable, List, Sequence, Tuple

import numpy as np
from scipy import integrate, optimize

from frenet4.config import config

logger = logging.getLogger(__name__)


class Arclength:
    """Arclength s(t) of a curve from ``t0``, by adaptive quadrature of its speed.

    Values at a set of nodes are accumulated once; any other parameter value
    integrates from the nearest node at or below it.
    """

    def __init__(
        self,
        speed: Callable[[float], float],
        t0: float,
        t1: float,
        nodes: int = 33,
        abs_tol: float = config.quad_abs_tol,
        limit: int = config.quad_limit,
    ):
        self.speed = speed
        self.abs_tol = abs_tol
        self.limit = limit
        self.t0 = float(t0)
        self.t1 = float(t1)
        self._nodes = np.linspace(self.t0, self.t1, nodes)
        values = [0.0]
        for a, b in zip(self._nodes[:-1], self._nodes[1:]):
            values.append(values[-1] + self._quad(a, b))
        self._values = np.array(values)

    def _quad(self, a: float, b: float) -> float:
        if a == b:
            return 0.0
        value, error = integrate.quad(
            self.speed, a, b, epsabs=self.abs_tol, epsrel=0.0, limit=self.limit
        )
        if error > 10 * self.abs_tol:
            logger.warning(f"Arclength quadrature on [{a}, {b}] has error estimate {error:.3g}")
        return value

    @property
    def total(self) -> float:
        return float(self._values[-1])

    def __call__(self, t: float) -> float:
        i = int(np.clip(np.searchsorted(self._nodes, t, side="right") - 1, 0, len(self._nodes) - 1))
        return float(self._values[i]) + self._quad(float(self._nodes[i]), float(t))

    def inverse(self, s: float) -> float:
        """Parameter t with s(t) = s; extends past the node range if needed."""
        lo, hi = self.t0, self.t1
        width = hi - lo
        while self(lo) > s:
            lo -= width
        while self(hi) < s:
            hi += width
        return optimize.brentq(
            lambda t: self(t) - s, lo, hi, xtol=1e-14, rtol=4 * np.finfo(float).eps
        )


# Finite differences

_STENCILS = {
    1: ((-1, -0.5), (1, 0.5)),
    2: ((-1, 1.0), (0, -2.0), (1, 1.0)),
    3: ((-2, -0.5), (-1, 1.0), (1, -1.0), (2, 0.5)),
    4: ((-2, 1.0), (-1, -4.0), (0, 6.0), (1, -4.0), (2, 1.0)),
}


def central_difference(f: Callable[[float], np.ndarray], t: float, n: int, h: float) -> np.ndarray:
    """Second-order central difference of the n-th derivative, n in 1..4."""
    total = sum(weight * np.asarray(f(t + k * h), dtype=float) for k, weight in _STENCILS[n])
    return total / h**n


def richardson_derivative(
    f: Callable[[float], np.ndarray], t: float, n: int, h: float = 0.1, levels: int = 4
) -> np.ndarray:
    """Richardson-extrapolated central difference; errors are even in h."""
    table: List[List[np.ndarray]] = []
    for i in range(levels):
        row = [central_difference(f, t, n, h / 2**i)]
        for j in range(1, i + 1):
            factor = 4.0**j
            row.append(row[j - 1] + (row[j - 1] - table[i - 1][j - 1]) / (factor - 1.0))
        table.append(row)
    return table[-1][-1]


@dataclass(frozen=True)
class OracleFrame:
    """Frenet data obtained without the ternary product."""

    frame: np.ndarray  # rows T, N, B, E
    kappa: float
    tau: float
    sigma: float
    speed: float


def gram_schmidt_frenet(derivatives: Sequence[np.ndarray]) -> OracleFrame:
    """Frenet frame and curvatures from α', α'', α''', α'''' by Gram-Schmidt."""
    d1, d2, d3, d4 = (np.asarray(d, dtype=float) for d in derivatives)
    v = float(np.linalg.norm(d1))
    basis: List[np.ndarray] = []
    for d in (d1, d2, d3):
        u = d - sum(np.dot(d, e) * e for e in basis) if basis else d
        basis.append(u / np.linalg.norm(u))
    # Last vector: orthogonal complement, oriented for det = +1
    _, _, vt = np.linalg.svd(np.vstack(basis))
    e4 = vt[-1]
    frame = np.vstack(basis + [e4])
    if np.linalg.det(frame) < 0:
        frame[3] = -e4
    T, N, B, E = frame
    kappa = float(np.dot(d2, N)) / v**2
    tau = float(np.dot(d3, B)) / (v**3 * kappa)
    sigma = float(np.dot(d4, E)) / (v**4 * kappa * tau)
    return OracleFrame(frame=frame, kappa=kappa, tau=tau, sigma=sigma, speed=v)


def finite_difference_frenet(
    point: Callable[[float], np.ndarray], t: float, h: float = 0.2, levels: int = 4
) -> OracleFrame:
    """Independent Frenet oracle: Richardson derivatives fed to Gram-Schmidt."""
    derivatives = [richardson_derivative(point, t, n, h, levels) for n in (1, 2, 3, 4)]
    return gram_schmidt_frenet(derivatives)


# Fitting


@dataclass(frozen=True)
class AffineFit:
    slope: float
    intercept: float
    r_squared: float


def affine_fit(x: Sequence[float], y: Sequence[float]) -> AffineFit:
    """Least-squares y ≈ slope*x + intercept with coefficient of determination."""
    x_arr = np.asarray(x, dtype=float)
    y_arr = np.asarray(y, dtype=float)
    slope, intercept = np.polyfit(x_arr, y_arr, 1)
    residual = y_arr - (slope * x_arr + intercept)
    ss_res = float(np.dot(residual, residual))
    centered = y_arr - y_arr.mean()
    ss_tot = float(np.dot(centered, centered))
    # Constant data is fitted exactly by the constant
    r_squared = 1.0 - ss_res / ss_tot if ss_tot > 0 else 1.0
    return AffineFit(slope=float(slope), intercept=float(intercept), r_squared=r_squared)


def max_relative_deviation(values: Sequence[float]) -> Tuple[float, float]:
    """Grid mean and the largest |v - mean| / |mean|.

    A zero mean with nonzero values (a series odd about the middle of the grid) is
    measured against the largest |v| instead, so the result stays finite.
    """
    arr = np.asarray(values, dtype=float)
    mean = float(arr.mean())
    spread = float(np.max(np.abs(arr - mean)))
    if spread == 0:
        return mean, 0.0
    reference = abs(mean) if mean != 0 else float(np.max(np.abs(arr)))
    return mean, spread / reference
