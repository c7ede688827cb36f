"""Scalar evaluation backends: outward-rounded intervals and second-order jets.

Two number types drive everything in this package:

* ``Interval`` -- a closed interval ``[lo, hi]`` of doubles.  Every operation
  returns an enclosure of the exact image of its operands (containment, not
  tightness).  Soundness under floating point is obtained by nudging both
  endpoints one representable step outward after each primitive operation,
  which avoids platform-dependent rounding-mode control.  Domain violations
  (division by an interval containing zero, square root of a fully negative
  interval) degrade to the whole real line instead of raising, so that
  certification loops can subdivide rather than abort.

* ``Jet2`` -- a truncated Taylor series ``(v, d1, d2)`` carrying a function
  value together with its first and second derivative at a point.  Arithmetic
  follows the product/quotient/chain rules, so evaluating an expression on
  ``Jet2(x, 1, 0)`` yields exact derivatives of the expression (up to floating
  point roundoff), with no finite-difference truncation error.  The component
  type is generic: jets over ``float`` give fast point derivatives, jets over
  ``Interval`` give rigorous derivative enclosures over a window.

Everything here is immutable and pure; evaluation is safe to run in parallel
and is deterministic.
"""

from __future__ import annotations

import math
from enum import Enum

__all__ = [
    "Sign",
    "Interval",
    "Jet2",
    "DomainError",
    "jet_var",
    "jet_const",
    "jet_mul",
    "jet_div",
    "jet_sqrt",
    "int_arith",
    "int_sign",
    "sqrt_any",
]

_INF = math.inf


class DomainError(ValueError):
    """Evaluation left the mathematical domain of an operation.

    Raised by the float and jet-over-float backends (e.g. sqrt of a
    non-positive value signals evaluation outside a metric's open domain).
    The interval backend never raises this; it widens to ENTIRE instead.
    """


class Sign(Enum):
    """Verdict of an interval sign query."""

    POSITIVE = "positive"
    NEGATIVE = "negative"
    INCONCLUSIVE = "inconclusive"


def _down(x: float) -> float:
    return math.nextafter(x, -_INF)


def _up(x: float) -> float:
    return math.nextafter(x, _INF)


class Interval:
    """Closed interval with outward-rounded arithmetic.

    Invariants: ``lo <= hi`` always; the result of any operation contains the
    exact image of its operand intervals.  Endpoints may be infinite; the
    interval ``[-inf, inf]`` (``Interval.entire()``) is the sound answer for
    any domain violation.
    """

    __slots__ = ("lo", "hi")

    def __init__(self, lo, hi=None):
        if hi is None:
            hi = lo
        lo = float(lo)
        hi = float(hi)
        if math.isnan(lo) or math.isnan(hi):
            lo, hi = -_INF, _INF
        if lo > hi:
            raise ValueError(f"invalid interval [{lo}, {hi}]")
        self.lo = lo
        self.hi = hi

    @staticmethod
    def entire() -> "Interval":
        return Interval(-_INF, _INF)

    @staticmethod
    def point(x: float) -> "Interval":
        return Interval(x, x)

    # -- helpers ----------------------------------------------------------

    def _widened(lo: float, hi: float) -> "Interval":  # noqa: N805 - static style
        if math.isnan(lo) or math.isnan(hi) or lo == -_INF or hi == _INF:
            return Interval.entire()
        return Interval(_down(lo), _up(hi))

    _widened = staticmethod(_widened)

    @property
    def width(self) -> float:
        return self.hi - self.lo

    @property
    def mid(self) -> float:
        if self.lo == -_INF or self.hi == _INF:
            return 0.0
        return 0.5 * (self.lo + self.hi)

    def is_entire(self) -> bool:
        return self.lo == -_INF and self.hi == _INF

    def contains(self, x: float) -> bool:
        return self.lo <= x <= self.hi

    def encloses(self, other: "Interval") -> bool:
        return self.lo <= other.lo and other.hi <= self.hi

    # -- arithmetic --------------------------------------------------------

    def __add__(self, other):
        other = _as_interval(other)
        if other is NotImplemented:
            return NotImplemented
        return Interval._widened(self.lo + other.lo, self.hi + other.hi)

    __radd__ = __add__

    def __neg__(self):
        # Negation is exact, but the one-ulp outward step is applied uniformly.
        return Interval._widened(-self.hi, -self.lo)

    def __sub__(self, other):
        other = _as_interval(other)
        if other is NotImplemented:
            return NotImplemented
        return Interval._widened(self.lo - other.hi, self.hi - other.lo)

    def __rsub__(self, other):
        other = _as_interval(other)
        if other is NotImplemented:
            return NotImplemented
        return other.__sub__(self)

    def __mul__(self, other):
        other = _as_interval(other)
        if other is NotImplemented:
            return NotImplemented
        if self.is_entire() or other.is_entire():
            return Interval.entire()
        candidates = (
            self.lo * other.lo,
            self.lo * other.hi,
            self.hi * other.lo,
            self.hi * other.hi,
        )
        if any(math.isnan(c) for c in candidates):
            return Interval.entire()
        return Interval._widened(min(candidates), max(candidates))

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = _as_interval(other)
        if other is NotImplemented:
            return NotImplemented
        if other.lo <= 0.0 <= other.hi:
            return Interval.entire()
        if self.is_entire() or other.is_entire():
            return Interval.entire()
        candidates = (
            self.lo / other.lo,
            self.lo / other.hi,
            self.hi / other.lo,
            self.hi / other.hi,
        )
        if any(math.isnan(c) for c in candidates):
            return Interval.entire()
        return Interval._widened(min(candidates), max(candidates))

    def __rtruediv__(self, other):
        other = _as_interval(other)
        if other is NotImplemented:
            return NotImplemented
        return other.__truediv__(self)

    def sqrt(self) -> "Interval":
        """Enclosure of sqrt over the non-negative part of the interval.

        A fully negative interval has empty intersection with the domain;
        ENTIRE is returned so the caller sees an inconclusive bound.
        """
        if self.hi < 0.0:
            return Interval.entire()
        lo = 0.0 if self.lo < 0.0 else math.sqrt(self.lo)
        hi = math.sqrt(self.hi) if self.hi != _INF else _INF
        return Interval._widened(lo, hi)

    def powi(self, n: int) -> "Interval":
        """Integer power, tight on even powers of sign-mixed intervals."""
        if n < 0:
            return (Interval.point(1.0) / self).powi(-n)
        if n == 0:
            return Interval.point(1.0)
        if self.is_entire():
            return Interval.entire()
        plo, phi = self.lo**n, self.hi**n
        if n % 2 == 0 and self.lo < 0.0 <= self.hi:
            lo, hi = 0.0, max(plo, phi)
        elif n % 2 == 0 and self.hi < 0.0:
            lo, hi = phi, plo
        else:
            lo, hi = plo, phi
        if math.isnan(lo) or math.isnan(hi):
            return Interval.entire()
        return Interval._widened(lo, hi)

    def sign(self) -> Sign:
        if self.lo > 0.0:
            return Sign.POSITIVE
        if self.hi < 0.0:
            return Sign.NEGATIVE
        return Sign.INCONCLUSIVE

    def __repr__(self):
        return f"Interval({self.lo!r}, {self.hi!r})"

    def __eq__(self, other):
        return (
            isinstance(other, Interval) and self.lo == other.lo and self.hi == other.hi
        )

    def __hash__(self):
        return hash((self.lo, self.hi))


def _as_interval(x):
    if isinstance(x, Interval):
        return x
    if isinstance(x, (int, float)):
        return Interval.point(float(x))
    return NotImplemented


def sqrt_any(x):
    """Square root dispatching on the backend type.

    Floats raise ``DomainError`` for negative input (zero is allowed: profile
    values vanish exactly at closed domain endpoints); jets are strict at zero
    because the derivative components blow up there; intervals degrade
    soundly instead of raising.
    """
    if isinstance(x, Interval):
        return x.sqrt()
    if isinstance(x, Jet2):
        return jet_sqrt(x)
    if x < 0.0:
        raise DomainError(f"sqrt of negative value {x}")
    return math.sqrt(x)


def _zero_like(x):
    return Interval.point(0.0) if isinstance(x, Interval) else 0.0


def _one_like(x):
    return Interval.point(1.0) if isinstance(x, Interval) else 1.0


class Jet2:
    """Order-2 jet: value, first and second derivative of a scalar function.

    Components are floats or Intervals.  The value component of every
    operation is computed with exactly the same floating-point expression as
    the plain real backend, so ``expr(Jet2.var(x)).v == expr(x)`` bitwise.
    """

    __slots__ = ("v", "d1", "d2")

    def __init__(self, v, d1, d2):
        self.v = v
        self.d1 = d1
        self.d2 = d2

    @staticmethod
    def var(x):
        """Jet of the identity function at x."""
        return Jet2(x, _one_like(x), _zero_like(x))

    @staticmethod
    def const(c):
        return Jet2(c, _zero_like(c), _zero_like(c))

    def __add__(self, other):
        other = _as_jet(other, self)
        if other is NotImplemented:
            return NotImplemented
        return Jet2(self.v + other.v, self.d1 + other.d1, self.d2 + other.d2)

    __radd__ = __add__

    def __neg__(self):
        return Jet2(-self.v, -self.d1, -self.d2)

    def __sub__(self, other):
        other = _as_jet(other, self)
        if other is NotImplemented:
            return NotImplemented
        return Jet2(self.v - other.v, self.d1 - other.d1, self.d2 - other.d2)

    def __rsub__(self, other):
        other = _as_jet(other, self)
        if other is NotImplemented:
            return NotImplemented
        return other.__sub__(self)

    def __mul__(self, other):
        other = _as_jet(other, self)
        if other is NotImplemented:
            return NotImplemented
        return Jet2(
            self.v * other.v,
            self.d1 * other.v + self.v * other.d1,
            self.d2 * other.v + 2.0 * self.d1 * other.d1 + self.v * other.d2,
        )

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = _as_jet(other, self)
        if other is NotImplemented:
            return NotImplemented
        if isinstance(other.v, float) and other.v == 0.0:
            raise DomainError("jet division by zero value (degenerate profile)")
        w = self.v / other.v
        d1 = (self.d1 - w * other.d1) / other.v
        d2 = (self.d2 - 2.0 * d1 * other.d1 - w * other.d2) / other.v
        return Jet2(w, d1, d2)

    def __rtruediv__(self, other):
        other = _as_jet(other, self)
        if other is NotImplemented:
            return NotImplemented
        return other.__truediv__(self)

    def sqrt(self):
        return jet_sqrt(self)

    def powi(self, n: int):
        if n < 0:
            return Jet2.const(_one_like(self.v)) / self.powi(-n)
        if n == 0:
            return Jet2.const(_one_like(self.v))
        if n == 1:
            return self
        # n >= 2: closed-form power rule keeps the value component identical
        # to the real backend's x**n.
        if isinstance(self.v, Interval):
            vn = self.v.powi(n)
            vn1 = self.v.powi(n - 1)
            vn2 = self.v.powi(n - 2)
        else:
            vn = self.v**n
            vn1 = self.v ** (n - 1)
            vn2 = self.v ** (n - 2)
        return Jet2(
            vn,
            float(n) * vn1 * self.d1,
            float(n) * vn1 * self.d2 + float(n * (n - 1)) * vn2 * self.d1 * self.d1,
        )

    def __repr__(self):
        return f"Jet2({self.v!r}, {self.d1!r}, {self.d2!r})"


def _as_jet(x, template: Jet2):
    if isinstance(x, Jet2):
        return x
    if isinstance(x, (int, float)):
        if isinstance(template.v, Interval):
            return Jet2.const(Interval.point(float(x)))
        return Jet2.const(float(x))
    if isinstance(x, Interval):
        return Jet2.const(x)
    return NotImplemented


def jet_var(x) -> Jet2:
    return Jet2.var(x)


def jet_const(c) -> Jet2:
    return Jet2.const(c)


def jet_mul(a: Jet2, b: Jet2) -> Jet2:
    return a * b


def jet_div(a: Jet2, b: Jet2) -> Jet2:
    return a / b


def jet_sqrt(a: Jet2) -> Jet2:
    """Jet of sqrt: (sqrt v, d1/(2 sqrt v), d2/(2 sqrt v) - d1^2/(4 v^{3/2}))."""
    if isinstance(a.v, Interval):
        s = a.v.sqrt()
        half = Interval.point(0.5)
        d1 = half * a.d1 / s
        d2 = half * a.d2 / s - half * d1 * a.d1 / a.v
        return Jet2(s, d1, d2)
    if a.v <= 0.0:
        raise DomainError(f"jet sqrt of non-positive value {a.v}")
    s = math.sqrt(a.v)
    d1 = 0.5 * a.d1 / s
    d2 = 0.5 * a.d2 / s - 0.5 * d1 * a.d1 / a.v
    return Jet2(s, d1, d2)


def int_arith(op: str, a: Interval, b: Interval | None = None, n: int | None = None):
    """Named-dispatch interval arithmetic: op in {+, -, *, /, sqrt, powi, neg}."""
    if op == "+":
        return a + b
    if op == "-":
        return a - b
    if op == "*":
        return a * b
    if op == "/":
        return a / b
    if op == "sqrt":
        return a.sqrt()
    if op == "powi":
        return a.powi(n)
    if op == "neg":
        return -a
    raise ValueError(f"unknown interval operation {op!r}")


def int_sign(a: Interval) -> Sign:
    return a.sign()
