"""Truncated Taylor series (jets) in one variable.

A jet of order K stores the normalized Taylor coefficients c0..cK of a scalar
function at a point, ck = f^(k)(t0)/k!. Arithmetic and the elementary
functions propagate the coefficients with the usual recurrences, so every
derivative up to order K is exact up to rounding.
"""

import math
from numbers import Real
from typing import Optional, Sequence, Union

import numpy as np

from frenet4.exceptions import JetDomainError, JetOrderMismatch

Scalar = Union["Jet", float]

_FUNCTIONS = ("sin", "cos", "exp", "ln", "sqrt", "pow_const")


class Jet:
    """Truncated Taylor expansion of a scalar at a point."""

    __slots__ = ("_coeffs",)

    # Let numpy scalars defer to Jet's reflected operators.
    __array_ufunc__ = None

    def __init__(self, coeffs: Sequence[float]):
        arr = np.array(coeffs, dtype=float)
        if arr.ndim != 1 or arr.size == 0:
            raise ValueError("a jet needs at least one coefficient")
        arr.setflags(write=False)
        self._coeffs = arr

    @classmethod
    def constant(cls, value: float, order: int) -> "Jet":
        coeffs = np.zeros(order + 1)
        coeffs[0] = value
        return cls(coeffs)

    @classmethod
    def variable(cls, t0: float, order: int) -> "Jet":
        if order < 1:
            raise JetDomainError(f"a jet variable needs order >= 1, got {order}")
        coeffs = np.zeros(order + 1)
        coeffs[0] = t0
        coeffs[1] = 1.0
        return cls(coeffs)

    @classmethod
    def from_derivatives(cls, derivatives: Sequence[float]) -> "Jet":
        """Build a jet from plain derivative values f, f', f'', ..."""
        factorials = [math.factorial(k) for k in range(len(derivatives))]
        return cls([d / f for d, f in zip(derivatives, factorials)])

    # Accessors

    @property
    def coeffs(self) -> np.ndarray:
        return self._coeffs

    @property
    def order(self) -> int:
        return self._coeffs.size - 1

    @property
    def value(self) -> float:
        return float(self._coeffs[0])

    def derivative(self, k: int) -> float:
        """Return f^(k)(t0) = k! * ck."""
        if not 0 <= k <= self.order:
            raise JetDomainError(f"derivative {k} is beyond jet order {self.order}")
        return math.factorial(k) * float(self._coeffs[k])

    def derivatives(self) -> np.ndarray:
        factorials = np.array([math.factorial(k) for k in range(self.order + 1)], dtype=float)
        return self._coeffs * factorials

    def truncate(self, order: int) -> "Jet":
        if order > self.order:
            raise JetOrderMismatch(f"cannot raise jet order {self.order} to {order}")
        return Jet(self._coeffs[: order + 1])

    def differentiate(self) -> "Jet":
        """Jet of f' at the same point, one order lower."""
        if self.order < 1:
            raise JetDomainError("cannot differentiate an order-0 jet")
        k = np.arange(1, self.order + 1, dtype=float)
        return Jet(self._coeffs[1:] * k)

    def integrate(self, value: float = 0.0) -> "Jet":
        """Jet of the antiderivative taking ``value`` at the point, one order higher."""
        k = np.arange(1, self.order + 2, dtype=float)
        return Jet(np.concatenate(([value], self._coeffs / k)))

    # Arithmetic

    def _coerce(self, other: Scalar) -> "Jet":
        if isinstance(other, Jet):
            if other.order != self.order:
                raise JetOrderMismatch(
                    f"jet orders differ: {self.order} and {other.order}"
                )
            return other
        if isinstance(other, Real):
            return Jet.constant(float(other), self.order)
        return NotImplemented

    def __add__(self, other: Scalar) -> "Jet":
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return Jet(self._coeffs + other._coeffs)

    __radd__ = __add__

    def __sub__(self, other: Scalar) -> "Jet":
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return Jet(self._coeffs - other._coeffs)

    def __rsub__(self, other: Scalar) -> "Jet":
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return Jet(other._coeffs - self._coeffs)

    def __neg__(self) -> "Jet":
        return Jet(-self._coeffs)

    def __pos__(self) -> "Jet":
        return self

    def __mul__(self, other: Scalar) -> "Jet":
        if isinstance(other, Real):
            return Jet(self._coeffs * float(other))
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        # Cauchy product, truncated
        return Jet(np.convolve(self._coeffs, other._coeffs)[: self.order + 1])

    __rmul__ = __mul__

    def __truediv__(self, other: Scalar) -> "Jet":
        if isinstance(other, Real):
            if other == 0:
                raise JetDomainError("division of a jet by zero")
            return Jet(self._coeffs / float(other))
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return _divide(self, other)

    def __rtruediv__(self, other: Scalar) -> "Jet":
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return _divide(other, self)

    def __pow__(self, exponent: float) -> "Jet":
        return self.pow_const(exponent)

    # Elementary functions

    def exp(self) -> "Jet":
        a = self._coeffs
        out = np.zeros_like(a)
        out[0] = math.exp(a[0])
        for k in range(1, a.size):
            j = np.arange(1, k + 1)
            out[k] = np.dot(j * a[1 : k + 1], out[k - 1 :: -1][:k]) / k
        return Jet(out)

    def ln(self) -> "Jet":
        a = self._coeffs
        if a[0] <= 0:
            raise JetDomainError(f"ln needs a positive constant term, got {a[0]!r}")
        out = np.zeros_like(a)
        out[0] = math.log(a[0])
        for k in range(1, a.size):
            j = np.arange(1, k)
            acc = np.dot(j * out[1:k], a[k - 1 : 0 : -1]) if k > 1 else 0.0
            out[k] = (a[k] - acc / k) / a[0]
        return Jet(out)

    def _sin_cos(self):
        a = self._coeffs
        s = np.zeros_like(a)
        c = np.zeros_like(a)
        s[0] = math.sin(a[0])
        c[0] = math.cos(a[0])
        for k in range(1, a.size):
            ja = np.arange(1, k + 1) * a[1 : k + 1]
            s[k] = np.dot(ja, c[k - 1 :: -1][:k]) / k
            c[k] = -np.dot(ja, s[k - 1 :: -1][:k]) / k
        return Jet(s), Jet(c)

    def sin(self) -> "Jet":
        return self._sin_cos()[0]

    def cos(self) -> "Jet":
        return self._sin_cos()[1]

    def sqrt(self) -> "Jet":
        a = self._coeffs
        if a[0] < 0 or (a[0] == 0 and self.order > 0):
            raise JetDomainError(f"sqrt needs a positive constant term, got {a[0]!r}")
        out = np.zeros_like(a)
        out[0] = math.sqrt(a[0])
        for k in range(1, a.size):
            acc = np.dot(out[1:k], out[k - 1 : 0 : -1]) if k > 1 else 0.0
            out[k] = (a[k] - acc) / (2.0 * out[0])
        return Jet(out)

    def pow_const(self, exponent: float) -> "Jet":
        """Raise to a constant power.

        Integer exponents use repeated multiplication and so are defined at a
        zero constant term; other exponents need a positive constant term.
        """
        p = float(exponent)
        if p.is_integer():
            n = int(p)
            if n < 0:
                return _divide(Jet.constant(1.0, self.order), self._int_pow(-n))
            return self._int_pow(n)
        if self._coeffs[0] <= 0:
            raise JetDomainError(
                f"non-integer power needs a positive base, got {self._coeffs[0]!r}"
            )
        return (self.ln() * p).exp()

    def _int_pow(self, n: int) -> "Jet":
        result = Jet.constant(1.0, self.order)
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def __repr__(self) -> str:
        return f"Jet({self._coeffs.tolist()!r})"


def _divide(a: Jet, b: Jet) -> Jet:
    """Recursive coefficient solve of a = b * c."""
    bc = b.coeffs
    if bc[0] == 0:
        raise JetDomainError("division by a jet with zero constant term")
    ac = a.coeffs
    out = np.zeros_like(ac)
    for k in range(ac.size):
        acc = np.dot(bc[1 : k + 1], out[k - 1 :: -1][:k]) if k > 0 else 0.0
        out[k] = (ac[k] - acc) / bc[0]
    return Jet(out)


def jet_var(t0: float, order: int) -> Jet:
    """The independent variable as a jet: [t0, 1, 0, ..., 0]."""
    return Jet.variable(t0, order)


def jet_arith(a: Jet, b: Jet, op: str) -> Jet:
    """Combine two jets of equal order with one of add, sub, mul, div."""
    if a.order != b.order:
        raise JetOrderMismatch(f"jet orders differ: {a.order} and {b.order}")
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    if op == "div":
        return a / b
    raise ValueError(f"unknown jet operation: {op}")


def jet_fn(a: Jet, fn: str, exponent: Optional[float] = None) -> Jet:
    """Apply one of the elementary functions to a jet."""
    if fn not in _FUNCTIONS:
        raise ValueError(f"unknown jet function: {fn}")
    if fn == "pow_const":
        if exponent is None:
            raise ValueError("pow_const needs an exponent")
        return a.pow_const(exponent)
    return getattr(a, fn)()


def sqrt(x: Scalar) -> Scalar:
    """Square root of a float or a jet."""
    if isinstance(x, Jet):
        return x.sqrt()
    return math.sqrt(x)


def value_of(x: Scalar) -> float:
    """Constant term of a jet, or the float itself."""
    if isinstance(x, Jet):
        return x.value
    return float(x)
