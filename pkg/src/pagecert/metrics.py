"""Profile functions and constructors for the bundled cohomogeneity-one metrics.

A metric here is diagonal in a left-invariant coframe on S^3:

    ds^2 = f0(x)^2 dx^2 + f1(x)^2 s1^2 + f2(x)^2 s2^2 + f3(x)^2 s3^2

where the one-forms satisfy d s_i = LAMBDA * s_j ^ s_k (cyclic), with the
structure constant LAMBDA frozen package-wide in :mod:`pagecert.curvature`.

Three metrics are bundled:

* ``page_metric``         -- the Page metric on CP^2 # conj(CP^2), built from
  the profile functions W, g and the constant D, all parameterized by the
  unique positive root ``a`` of  x^4 + 4x^3 - 6x^2 + 12x - 3.
* ``round_s4_metric``     -- the unit round 4-sphere (calibration oracle).
* ``fubini_study_metric`` -- CP^2 with the Fubini-Study metric normalized to
  sectional curvature range [1, 4] (validation oracle).

The sphere and CP^2 metrics are usually written with trigonometric profiles
in an arc parameter t; since profile trees are algebraic, both are stored in
an equivalent algebraic coordinate (x = cos t, respectively x = cos 2t).
Curvature, Ricci, and Euler-characteristic results are unchanged by this
reparameterization.

Orbit-coefficient normalization: the frozen structure constant makes the
*unit* round S^3 equal to (1/4)(s1^2 + s2^2 + s3^2).  The classical forms of
the Page and Fubini-Study metrics are written for one-forms with twice these
differentials, so their orbit profiles appear here divided by two.  The
scalar quantities of interest (W, g, F = g'/W, k01) are defined from the
classical profiles and do not depend on that normalization.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

from .numerics import DomainError, Interval, Sign
from .profiles import ProfileExpr, X, const

__all__ = [
    "SCAN_MARGIN",
    "ORBIT_VOLUME",
    "CertificationError",
    "quartic_f",
    "find_root_a",
    "PageParams",
    "DiagonalMetric",
    "page_metric",
    "page_w_expr",
    "page_g_expr",
    "gprime_over_w_expr",
    "gprime_closed_form_expr",
    "k01_closed_form",
    "k01_from_profiles",
    "round_s4_metric",
    "fubini_study_metric",
    "bundled_metric",
]

#: Margin epsilon for sampling scans: profiles blow up at the domain endpoints.
SCAN_MARGIN = 1e-3

#: Volume of a principal S^3 orbit in the coframe measure s1^s2^s3, calibrated
#: so that the round-S4 oracle integrates to Euler characteristic 2 exactly.
#: Under the frozen structure constant the unit S^3 has coframe volume 16 pi^2.
ORBIT_VOLUME = 16.0 * math.pi**2


class CertificationError(RuntimeError):
    """A certified search could not reach its target within its budget."""


def quartic_f(x):
    """The quartic x^4 + 4x^3 - 6x^2 + 12x - 3 in any backend (Horner form)."""
    return (((x + 4.0) * x - 6.0) * x + 12.0) * x - 3.0


def find_root_a(tol: float = 1e-14, max_steps: int = 500) -> Interval:
    """Certified enclosure of the unique root of the quartic in (0, 1).

    Bisection in which every retained endpoint carries an interval-arithmetic
    sign certificate: the quartic evaluated on the degenerate interval
    [p, p] with outward rounding has definite sign.  When the midpoint's sign
    is inconclusive the midpoint is nudged deterministically.

    Returns an interval of width <= tol whose endpoints certify
    f(lo) < 0 < f(hi).  Raises CertificationError if the budget is exhausted
    (does not happen for tol >= 1e-14).
    """
    if tol <= 0.0:
        raise ValueError("tol must be positive")
    lo, hi = 0.0, 1.0
    if quartic_f(Interval.point(lo)).sign() is not Sign.NEGATIVE:
        raise CertificationError("could not certify f(0) < 0")
    if quartic_f(Interval.point(hi)).sign() is not Sign.POSITIVE:
        raise CertificationError("could not certify f(1) > 0")
    # Overshoot the requested width so that loose tolerances still yield a
    # well-localized enclosure; floor at a few dozen ulps of the current
    # bracket, where endpoint sign certificates remain available.
    for _ in range(max_steps):
        target = max(tol / 16.0, 64.0 * math.ulp(hi))
        if hi - lo <= target:
            if hi - lo > tol:
                raise CertificationError(
                    f"float spacing near the root prevents width {tol:g}"
                )
            return Interval(lo, hi)
        width = hi - lo
        mid = 0.5 * (lo + hi)
        s = quartic_f(Interval.point(mid)).sign()
        if s is Sign.INCONCLUSIVE:
            for k in (1, -1, 2, -2, 4, -4, 8, -8):
                shifted = mid + k * width / 64.0
                if not lo < shifted < hi:
                    continue
                s2 = quartic_f(Interval.point(shifted)).sign()
                if s2 is not Sign.INCONCLUSIVE:
                    mid, s = shifted, s2
                    break
            else:
                raise CertificationError(
                    f"sign of quartic inconclusive near {mid!r} at width {width:g}"
                )
        if s is Sign.NEGATIVE:
            lo = mid
        else:
            hi = mid
    raise CertificationError(f"bisection did not reach tol={tol:g} in {max_steps} steps")


@dataclass(frozen=True)
class PageParams:
    """Root of the quartic and the derived constants of the Page profiles.

    a is the midpoint of the certified enclosure (used for all point
    computations); the enclosure itself is carried along for certificates.
    A = 2a / sqrt(3 + 6a^2 - a^4) and D = 2 / (3 + a^2).
    """

    a: float
    a_enclosure: Interval
    A: float = field(init=False)
    D: float = field(init=False)

    def __post_init__(self):
        if not 0.0 < self.a < 1.0:
            raise ValueError(f"root parameter a={self.a} outside (0, 1)")
        lo = self.a_enclosure.lo
        hi = self.a_enclosure.hi
        if quartic_f(Interval.point(lo)).sign() is not Sign.NEGATIVE:
            raise ValueError("enclosure lower endpoint lost its sign certificate")
        if quartic_f(Interval.point(hi)).sign() is not Sign.POSITIVE:
            raise ValueError("enclosure upper endpoint lost its sign certificate")
        a = self.a
        object.__setattr__(self, "A", 2.0 * a / math.sqrt(3.0 + 6.0 * a * a - a**4))
        object.__setattr__(self, "D", 2.0 / (3.0 + a * a))

    @staticmethod
    def certified(tol: float = 1e-14) -> "PageParams":
        enc = find_root_a(tol)
        return PageParams(a=enc.mid, a_enclosure=enc)


@dataclass(frozen=True)
class DiagonalMetric:
    """Four profile trees on an open interval plus the orbit volume constant."""

    name: str
    f: tuple
    domain: tuple
    orbit_volume: float = ORBIT_VOLUME

    def __post_init__(self):
        if len(self.f) != 4:
            raise ValueError("expected four profile functions")
        if not self.domain[0] < self.domain[1]:
            raise ValueError("empty domain")

    def contains(self, x: float) -> bool:
        return self.domain[0] < x < self.domain[1]

    def assert_positive_profiles(self, samples: int = 256):
        """Positivity of all four profiles on a dense interior sample."""
        lo, hi = self.scan_window()
        step = (hi - lo) / (samples - 1)
        for i in range(samples):
            x = lo + step * i
            for k, expr in enumerate(self.f):
                if not expr(x) > 0.0:
                    raise ValueError(
                        f"profile f{k} of {self.name!r} not positive at x = {x}"
                    )
        return self

    def scan_window(self, margin: float = SCAN_MARGIN):
        """Closed sampling window, pulled in from the open domain's endpoints."""
        lo, hi = self.domain
        return (lo + margin, hi - margin)

    def volume_density(self, x: float) -> float:
        """Riemannian volume density f0 f1 f2 f3 against dx ^ s1 ^ s2 ^ s3."""
        p = 1.0
        for expr in self.f:
            p *= expr(x)
        return p


# ---------------------------------------------------------------------------
# Page metric
# ---------------------------------------------------------------------------


def _page_building_blocks(p: PageParams):
    a2 = p.a * p.a
    n = 1.0 - const(a2) * X * X                        # 1 - a^2 x^2
    delta = const(3.0 - a2) - const(a2 * (1.0 + a2)) * X * X
    one_minus_x2 = 1.0 - X * X
    return n, delta, one_minus_x2


def page_w_expr(p: PageParams) -> ProfileExpr:
    """W(x) = sqrt( (1 - a^2 x^2) / ([3 - a^2 - a^2(1+a^2)x^2] (1 - x^2)) )."""
    n, delta, one_minus_x2 = _page_building_blocks(p)
    return (n / (delta * one_minus_x2)).sqrt()


def page_g_expr(p: PageParams) -> ProfileExpr:
    """g(x) = 2 / sqrt(3 + 6a^2 - a^4) * sqrt(1 - a^2 x^2)."""
    a2 = p.a * p.a
    g0 = 2.0 / math.sqrt(3.0 + 6.0 * a2 - a2 * a2)
    n, _, _ = _page_building_blocks(p)
    return const(g0) * n.sqrt()


def page_metric(p: PageParams | None = None) -> DiagonalMetric:
    """The Page metric on (-1, 1) in the frozen coframe normalization.

    f0 = W and the classical orbit profiles (g, g, D/W) enter divided by two;
    f3 uses the algebraically equivalent form (D/4) sqrt(Delta (1-x^2) / N)
    = D/(4W).  This is the unique choice that makes the metric Einstein under
    the package's structure constant (see the Einstein residual tests).
    """
    if p is None:
        p = PageParams.certified()
    n, delta, one_minus_x2 = _page_building_blocks(p)
    w = page_w_expr(p)
    half_g = const(0.5) * page_g_expr(p)
    f3 = const(0.25 * p.D) * (delta * one_minus_x2 / n).sqrt()
    return DiagonalMetric(
        name="page",
        f=(w, half_g, half_g, f3),
        domain=(-1.0, 1.0),
    ).assert_positive_profiles()


def gprime_closed_form_expr(p: PageParams) -> ProfileExpr:
    """Closed form of g'(x): -aA x (1 - a^2 x^2)^(-1/2).

    Direct differentiation of g; the leading coefficient is a*A.
    """
    n, _, _ = _page_building_blocks(p)
    return const(-p.a * p.A) * X / n.sqrt()


def gprime_over_w_expr(p: PageParams) -> ProfileExpr:
    """F(x) = g'(x)/W(x) in closed form:

        F = -aA x sqrt([3 - a^2 - a^2(1+a^2)x^2] (1 - x^2)) / (1 - a^2 x^2)

    F vanishes at x = 0 and x = 1 and is negative in between; the sign of its
    derivative controls the sign of the radial-orbit sectional curvature k01
    through k01 = -(2/(gW)) F'.
    """
    n, delta, one_minus_x2 = _page_building_blocks(p)
    return const(-p.a * p.A) * X * (delta * one_minus_x2).sqrt() / n


def k01_closed_form(p: PageParams, x: float) -> float:
    """k01 = -(2/(gW)) F' with F' taken from the jet backend.

    Valid for x in (-1, 1); raises DomainError outside.
    """
    if not -1.0 < x < 1.0:
        raise DomainError(f"x={x} outside the Page domain (-1, 1)")
    fprime = gprime_over_w_expr(p).eval_jet(x).d1
    g = page_g_expr(p)(x)
    w = page_w_expr(p)(x)
    return -2.0 * fprime / (g * w)


def k01_from_profiles(p: PageParams, x: float) -> float:
    """k01 via the equivalent profile-derivative form 2 (g'W' - g''W)/(g W^3)."""
    if not -1.0 < x < 1.0:
        raise DomainError(f"x={x} outside the Page domain (-1, 1)")
    gj = page_g_expr(p).eval_jet(x)
    wj = page_w_expr(p).eval_jet(x)
    return 2.0 * (gj.d1 * wj.d1 - gj.d2 * wj.v) / (gj.v * wj.v**3)


# ---------------------------------------------------------------------------
# Calibration metrics
# ---------------------------------------------------------------------------


def round_s4_metric() -> DiagonalMetric:
    """Unit round S^4 as a cohomogeneity-one metric over S^3 orbits.

    In the arc parameter t in (0, pi) the profiles are f0 = 1 and
    f1 = f2 = f3 = (1/2) sin t; stored in the coordinate x = cos t:

        f0 = 1/sqrt(1 - x^2),   fi = (1/2) sqrt(1 - x^2).

    Every sectional curvature equals 1 and the Euler characteristic is 2.
    """
    one_minus_x2 = 1.0 - X * X
    s = one_minus_x2.sqrt()
    f0 = 1.0 / s
    fi = const(0.5) * s
    return DiagonalMetric(
        name="s4", f=(f0, fi, fi, fi), domain=(-1.0, 1.0)
    ).assert_positive_profiles()


def fubini_study_metric() -> DiagonalMetric:
    """CP^2 with the Fubini-Study metric, sectional curvature pinched in [1, 4].

    In the arc parameter t in (0, pi/2): f0 = 1, f1 = f2 = (1/2) sin t and
    f3 = (1/2) sin t cos t, stored in the orientation-preserving coordinate
    x = -cos 2t (so the Kaehler-type Weyl spectrum sits in the self-dual
    block, as for the Page metric):

        f0 = 1/(2 sqrt(1 - x^2)),  f1 = f2 = (1/2) sqrt((1 + x)/2),
        f3 = (1/4) sqrt(1 - x^2).

    The f3 normalization is fixed by requiring the metric to be Einstein with
    curvature range exactly [1, 4] under the frozen structure constant; the
    Euler characteristic evaluates to 3.
    """
    one_minus_x2 = 1.0 - X * X
    f0 = 1.0 / (2.0 * one_minus_x2.sqrt())
    f12 = const(0.5) * (const(0.5) * (1.0 + X)).sqrt()
    f3 = const(0.25) * one_minus_x2.sqrt()
    return DiagonalMetric(
        name="cp2-fs", f=(f0, f12, f12, f3), domain=(-1.0, 1.0)
    ).assert_positive_profiles()


def bundled_metric(name: str, params: PageParams | None = None) -> DiagonalMetric:
    """Look up a bundled metric by its CLI name: page, s4, or cp2-fs."""
    if name == "page":
        return page_metric(params)
    if name == "s4":
        return round_s4_metric()
    if name == "cp2-fs":
        return fubini_study_metric()
    raise KeyError(f"unknown metric {name!r}")
