"""Vector algebra in Euclidean 4-space.

Components may be floats or jets; every operation here is written with the
arithmetic operators only, so the same code evaluates values and Taylor
expansions.
"""

from dataclasses import dataclass
from typing import Callable, Iterator, Tuple

import numpy as np

from frenet4.utils.jets import Jet, Scalar, sqrt, value_of


@dataclass(frozen=True)
class Vec4:
    """A point or vector of E^4."""

    x1: Scalar
    x2: Scalar
    x3: Scalar
    x4: Scalar

    @classmethod
    def from_iterable(cls, values) -> "Vec4":
        x1, x2, x3, x4 = values
        return cls(x1, x2, x3, x4)

    @classmethod
    def zero(cls) -> "Vec4":
        return cls(0.0, 0.0, 0.0, 0.0)

    @classmethod
    def basis(cls, i: int) -> "Vec4":
        """Unit vector e_i, 1-based."""
        values = [0.0, 0.0, 0.0, 0.0]
        values[i - 1] = 1.0
        return cls.from_iterable(values)

    def __iter__(self) -> Iterator[Scalar]:
        return iter((self.x1, self.x2, self.x3, self.x4))

    def map(self, fn: Callable[[Scalar], Scalar]) -> "Vec4":
        return Vec4(fn(self.x1), fn(self.x2), fn(self.x3), fn(self.x4))

    def __add__(self, other: "Vec4") -> "Vec4":
        return Vec4(self.x1 + other.x1, self.x2 + other.x2, self.x3 + other.x3, self.x4 + other.x4)

    def __sub__(self, other: "Vec4") -> "Vec4":
        return Vec4(self.x1 - other.x1, self.x2 - other.x2, self.x3 - other.x3, self.x4 - other.x4)

    def __neg__(self) -> "Vec4":
        return Vec4(-self.x1, -self.x2, -self.x3, -self.x4)

    def __mul__(self, k: Scalar) -> "Vec4":
        return Vec4(self.x1 * k, self.x2 * k, self.x3 * k, self.x4 * k)

    __rmul__ = __mul__

    def __truediv__(self, k: Scalar) -> "Vec4":
        return Vec4(self.x1 / k, self.x2 / k, self.x3 / k, self.x4 / k)

    def value(self) -> "Vec4":
        """Plain-float vector of constant terms."""
        return self.map(value_of)

    def truncate(self, order: int) -> "Vec4":
        return self.map(lambda c: c.truncate(order) if isinstance(c, Jet) else c)

    def differentiate(self) -> "Vec4":
        return self.map(lambda c: c.differentiate())

    def to_array(self) -> np.ndarray:
        return np.array([value_of(c) for c in self], dtype=float)

    def to_tuple(self) -> Tuple[float, float, float, float]:
        x1, x2, x3, x4 = (value_of(c) for c in self)
        return (x1, x2, x3, x4)


@dataclass(frozen=True)
class Frame4:
    """An ordered quadruple of vectors, rows of the frame matrix."""

    T: Vec4
    N: Vec4
    B: Vec4
    E: Vec4

    def __iter__(self) -> Iterator[Vec4]:
        return iter((self.T, self.N, self.B, self.E))

    def to_matrix(self) -> np.ndarray:
        return np.array([v.to_array() for v in self])


def dot(u: Vec4, v: Vec4) -> Scalar:
    return u.x1 * v.x1 + u.x2 * v.x2 + u.x3 * v.x3 + u.x4 * v.x4


def norm(u: Vec4) -> Scalar:
    return sqrt(dot(u, u))


def _det3(a, b, c, d, e, f, g, h, i) -> Scalar:
    return a * (e * i - f * h) - b * (d * i - f * g) + c * (d * h - e * g)


def cross3(a: Vec4, b: Vec4, c: Vec4) -> Vec4:
    """Ternary vector product a∧b∧c.

    Cofactor expansion along the first row of the determinant whose rows are
    (e1, e2, e3, e4), a, b, c. The result is orthogonal to a, b and c, and
    <a∧b∧c, d> = det[d; a; b; c].
    """
    a1, a2, a3, a4 = a
    b1, b2, b3, b4 = b
    c1, c2, c3, c4 = c
    return Vec4(
        _det3(a2, a3, a4, b2, b3, b4, c2, c3, c4),
        -_det3(a1, a3, a4, b1, b3, b4, c1, c3, c4),
        _det3(a1, a2, a4, b1, b2, b4, c1, c2, c4),
        -_det3(a1, a2, a3, b1, b2, b3, c1, c2, c3),
    )


def det4(f: Frame4) -> Scalar:
    """Determinant of the matrix with rows T, N, B, E (Laplace along T)."""
    # The cofactors of row T are the components of N∧B∧E.
    return dot(f.T, cross3(f.N, f.B, f.E))
