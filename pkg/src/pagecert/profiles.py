"""Expression trees for one-variable profile functions.

A ``ProfileExpr`` is a small immutable tree over one variable with real
constants and the operations {+, -, *, /, sqrt, integer power, negation}.
A single tree definition evaluates under three backends:

* plain ``float``          -- fast point evaluation,
* ``Jet2`` over floats     -- exact first and second derivatives,
* ``Interval`` (optionally inside a ``Jet2``) -- rigorous enclosures.

The tree guarantees backend coherence: the float evaluation equals the value
component of the jet evaluation bitwise, and lies inside the interval
evaluation.
"""

from __future__ import annotations

from .numerics import Interval, Jet2, sqrt_any

__all__ = ["ProfileExpr", "const", "var", "X"]


def _wrap(value):
    if isinstance(value, ProfileExpr):
        return value
    if isinstance(value, (int, float)):
        return Const(float(value))
    raise TypeError(f"cannot use {type(value).__name__} in a profile expression")


class ProfileExpr:
    """Base class; nodes overload operators so trees read like formulas."""

    __slots__ = ()

    def __call__(self, x):
        return self.eval(x)

    def eval(self, x):
        raise NotImplementedError

    def eval_jet(self, x: float) -> Jet2:
        """Jet of the profile at a point: (value, d/dx, d2/dx2)."""
        return self.eval(Jet2.var(x))

    def eval_jet_interval(self, window: Interval) -> Jet2:
        """Rigorous jet over a window: each component is an enclosure."""
        return self.eval(Jet2.var(window))

    # -- operator sugar (constants auto-wrap) ------------------------------

    def __add__(self, other):
        return Add(self, _wrap(other))

    def __radd__(self, other):
        return Add(_wrap(other), self)

    def __sub__(self, other):
        return Sub(self, _wrap(other))

    def __rsub__(self, other):
        return Sub(_wrap(other), self)

    def __mul__(self, other):
        return Mul(self, _wrap(other))

    def __rmul__(self, other):
        return Mul(_wrap(other), self)

    def __truediv__(self, other):
        return Div(self, _wrap(other))

    def __rtruediv__(self, other):
        return Div(_wrap(other), self)

    def __neg__(self):
        return Neg(self)

    def sqrt(self) -> "ProfileExpr":
        return Sqrt(self)

    def powi(self, n: int) -> "ProfileExpr":
        return Pow(self, n)

    def __pow__(self, n: int):
        return Pow(self, n)


class Const(ProfileExpr):
    __slots__ = ("c",)

    def __init__(self, c: float):
        self.c = float(c)

    def eval(self, x):
        if isinstance(x, Jet2):
            if isinstance(x.v, Interval):
                return Jet2.const(Interval.point(self.c))
            return Jet2.const(self.c)
        if isinstance(x, Interval):
            return Interval.point(self.c)
        return self.c

    def __repr__(self):
        return f"{self.c:g}"


class Var(ProfileExpr):
    __slots__ = ()

    def eval(self, x):
        return x

    def __repr__(self):
        return "x"


class Add(ProfileExpr):
    __slots__ = ("a", "b")

    def __init__(self, a, b):
        self.a, self.b = a, b

    def eval(self, x):
        return self.a.eval(x) + self.b.eval(x)

    def __repr__(self):
        return f"({self.a!r} + {self.b!r})"


class Sub(ProfileExpr):
    __slots__ = ("a", "b")

    def __init__(self, a, b):
        self.a, self.b = a, b

    def eval(self, x):
        return self.a.eval(x) - self.b.eval(x)

    def __repr__(self):
        return f"({self.a!r} - {self.b!r})"


class Mul(ProfileExpr):
    __slots__ = ("a", "b")

    def __init__(self, a, b):
        self.a, self.b = a, b

    def eval(self, x):
        return self.a.eval(x) * self.b.eval(x)

    def __repr__(self):
        return f"({self.a!r} * {self.b!r})"


class Div(ProfileExpr):
    __slots__ = ("a", "b")

    def __init__(self, a, b):
        self.a, self.b = a, b

    def eval(self, x):
        return self.a.eval(x) / self.b.eval(x)

    def __repr__(self):
        return f"({self.a!r} / {self.b!r})"


class Neg(ProfileExpr):
    __slots__ = ("a",)

    def __init__(self, a):
        self.a = a

    def eval(self, x):
        return -self.a.eval(x)

    def __repr__(self):
        return f"(-{self.a!r})"


class Sqrt(ProfileExpr):
    __slots__ = ("a",)

    def __init__(self, a):
        self.a = a

    def eval(self, x):
        return sqrt_any(self.a.eval(x))

    def __repr__(self):
        return f"sqrt({self.a!r})"


class Pow(ProfileExpr):
    __slots__ = ("a", "n")

    def __init__(self, a, n: int):
        if not isinstance(n, int):
            raise TypeError("power exponent must be an integer")
        self.a = a
        self.n = n

    def eval(self, x):
        v = self.a.eval(x)
        if isinstance(v, (Interval, Jet2)):
            return v.powi(self.n)
        return v**self.n

    def __repr__(self):
        return f"({self.a!r}**{self.n})"


def const(c: float) -> ProfileExpr:
    return Const(c)


def var() -> ProfileExpr:
    return Var()


#: Shared variable node; trees are built as expressions in X.
X = Var()
