"""Closed-form scalar kernels for butterfly right triangles.

Every vertex of an ordinary reduced polygon sits at distance w from its
opposite side, and the two crossing segments at each butterfly cut out
congruent right triangles.  With t = tanh w, the triangle with crossing
angle x (at the segment crossing) has

    leg_tanh(x)           tanh of the leg from the crossing to the foot,
                          the smaller root of the quadratic induced by
                          cos x = tanh b / tanh(w - b)
    alpha_of_leg(y)       the angle at the polygon vertex, arcsin of
                          y*sech(w)/(tanh(w) - y) for y = tanh(leg)
    alpha_of_crossing(x)  their composition

and the polygon area is (n-2)*pi - 2*sum(alpha_of_crossing(phi_i)).

Derivative functions carry a dual sourcing policy: first derivatives are
closed forms (finite-difference audited in tests); the second derivatives'
algebraically reduced closed forms are numerically suspect, so the
finite-difference-of-first-derivative value is the authority and the closed
forms are kept only for discrepancy reporting.
"""

import math
from dataclasses import dataclass
from typing import NamedTuple

from .errors import ConvergenceFailure, DomainError, InvalidN

HALF_PI = math.pi / 2.0

# Inverse-trig arguments this close to 1 snap to the boundary, so that the
# exact endpoint identities (alpha_of_leg at the max leg = pi/2, margin
# functions vanishing there) hold to the last bit.  Costs at most ~1e-6
# absolute error inside the snap band itself.
SNAP_BAND = 1e-13

# out-of-domain slack tolerated before DomainError
CLAMP = 1e-9


@dataclass(frozen=True)
class KernelParams:
    """Thickness w with cached tanh and sech."""

    w: float
    t: float  # tanh w
    s: float  # sech w

    def __post_init__(self):
        if not (0.0 < self.t < 1.0):
            raise ValueError("tanh w must lie in (0,1)")
        if abs(self.s * self.s + self.t * self.t - 1.0) > 1e-14:
            raise ValueError("cached sech/tanh inconsistent")

    @property
    def leg_tanh_max(self):
        """tanh(w/2), the largest possible leg tanh (crossing angle 0)."""
        return self.t / (1.0 + self.s)


def kernel_params(w: float) -> KernelParams:
    if w <= 0.0:
        raise DomainError("thickness must be positive")
    return KernelParams(w, math.tanh(w), 1.0 / math.cosh(w))


class ButterflyScalars(NamedTuple):
    """Scalar data of one butterfly right triangle."""

    phi: float    # crossing angle, in (0, pi/2)
    b: float      # leg: crossing point to foot
    c: float      # hypotenuse: crossing point to vertex, = w - b
    alpha: float  # angle at the polygon vertex


def discriminant_root(kp: KernelParams, x: float) -> float:
    """sqrt((1+cos x)^2 - 4 tanh(w)^2 cos x), the root of the leg quadratic's
    discriminant; even in x, total on the reals.

    Evaluated as (1-cos x)^2 + 4 cos(x) sech(w)^2 for cos x >= 0 (identical
    algebraically, but every term is nonnegative, so no cancellation near
    x = 0 even for large w) and in the printed form otherwise.
    """
    c = math.cos(x)
    if c >= 0.0:
        rad = (1.0 - c) ** 2 + 4.0 * c * kp.s * kp.s
    else:
        rad = (1.0 + c) ** 2 - 4.0 * kp.t * kp.t * c
    return math.sqrt(rad)


def leg_tanh(kp: KernelParams, x: float) -> float:
    """tanh of the butterfly leg for crossing angle x in [0, pi/2].

    Smaller quadratic root, evaluated in the cancellation-free form
    2 t cos x / (1 + cos x + root); decreasing from tanh(w/2) to 0.
    """
    if x < -CLAMP or x > HALF_PI + CLAMP:
        raise DomainError(f"crossing angle {x} outside [0, pi/2]")
    x = min(max(x, 0.0), HALF_PI)
    c = math.cos(x)
    return 2.0 * kp.t * c / (1.0 + c + discriminant_root(kp, x))


def alpha_of_leg(kp: KernelParams, y: float) -> float:
    """Vertex angle arcsin(y sech w / (tanh w - y)) for leg tanh y.

    Domain [0, tanh(w/2)]; the right endpoint maps to pi/2 exactly.
    """
    if y < 0.0:
        raise DomainError(f"leg tanh {y} negative")
    if y > kp.leg_tanh_max + 1e-12:
        raise DomainError(f"leg tanh {y} above tanh(w/2) = {kp.leg_tanh_max}")
    den = kp.t - y
    # 1 - arg == (t - y(1+s))/den, which vanishes exactly at y = tanh(w/2)
    gap = (kp.t - y * (1.0 + kp.s)) / den
    if gap <= SNAP_BAND:
        return HALF_PI
    return math.asin(y * kp.s / den)


def alpha_of_crossing(kp: KernelParams, x: float) -> float:
    """Vertex angle as a function of the crossing angle: alpha_of_leg after
    leg_tanh.  Decreasing from pi/2 at 0 to 0 at pi/2."""
    return alpha_of_leg(kp, leg_tanh(kp, x))


def _interior(x, lo, hi, what):
    if not (lo < x < hi):
        raise DomainError(f"{what}: {x} not inside ({lo}, {hi})")


def leg_tanh_deriv(kp: KernelParams, x: float) -> float:
    """d/dx of leg_tanh: -sin(x) (tanh w - leg_tanh(x)) / discriminant_root(x);
    strictly negative on (0, pi/2)."""
    _interior(x, 0.0, HALF_PI, "leg_tanh_deriv")
    return -math.sin(x) * (kp.t - leg_tanh(kp, x)) / discriminant_root(kp, x)


def alpha_of_crossing_deriv(kp: KernelParams, x: float) -> float:
    """Closed-form d/dx of alpha_of_crossing; strictly negative on (0, pi/2)."""
    _interior(x, 0.0, HALF_PI, "alpha_of_crossing_deriv")
    c = math.cos(x)
    r = discriminant_root(kp, x)
    inner = (1.0 - c) * (2.0 * kp.t * kp.t - (1.0 + c) + r)
    return -math.sqrt(2.0) * kp.t * kp.s * math.sin(x) / (r * math.sqrt(inner))


def alpha_of_crossing_second(kp: KernelParams, x: float, step=1e-6) -> float:
    """Second derivative of alpha_of_crossing, by central difference of the
    closed-form first derivative (the authoritative value; see module note).
    Strictly positive on (0, pi/2)."""
    _interior(x, 0.0, HALF_PI, "alpha_of_crossing_second")
    h = min(step, 0.5 * x, 0.5 * (HALF_PI - x))
    return (alpha_of_crossing_deriv(kp, x + h)
            - alpha_of_crossing_deriv(kp, x - h)) / (2.0 * h)


def alpha_of_crossing_second_closed(kp: KernelParams, x: float) -> float:
    """Algebraically reduced closed form of the second derivative.

    Its scaling is inconsistent with the finite-difference value (the sign is
    right, the magnitude is not); alpha_of_crossing_second is the authority
    and this form is retained only for the discrepancy report.
    """
    _interior(x, 0.0, HALF_PI, "alpha_of_crossing_second_closed")
    c = math.cos(x)
    r = discriminant_root(kp, x)
    shape = math.sqrt((1.0 - c) / (-1.0 - c + 2.0 * kp.t * kp.t + r))
    bracket = (1.0 + c) ** 2 - 4.0 * kp.t * kp.t - (1.0 + c) * r
    return -0.5 * math.sqrt(2.0) * kp.t * kp.s * shape * bracket


def alpha_bisection(kp: KernelParams, phi: float, tol=0.0, max_iter=200) -> ButterflyScalars:
    """Butterfly scalars by bisection, avoiding the quadratic entirely.

    Solves cos(phi) = tanh(b)/tanh(w-b) for b on (0, w/2]; the left side of
    the gap function is 0 and the right side is 1, so the bracket is
    guaranteed.  The default tol runs the bracket down to adjacent floats
    (well below the 1e-14 contract).  Independent oracle for
    alpha_of_crossing.
    """
    _interior(phi, 0.0, HALF_PI, "alpha_bisection")
    target = math.cos(phi)
    lo, hi = 0.0, kp.w / 2.0
    converged = False
    for _ in range(max_iter):
        mid = 0.5 * (lo + hi)
        if mid <= lo or mid >= hi:
            converged = True  # bracket exhausted at float resolution
            break
        if math.tanh(mid) / math.tanh(kp.w - mid) < target:
            lo = mid
        else:
            hi = mid
        if hi - lo <= tol:
            converged = True
            break
    if not converged:
        raise ConvergenceFailure(f"bisection stalled at [{lo}, {hi}]")
    b = 0.5 * (lo + hi)
    c = kp.w - b
    alpha = math.asin(math.sinh(b) / math.sinh(c))
    return ButterflyScalars(phi, b, c, alpha)


def diameter_bound(w: float) -> float:
    """Upper diameter bound arcosh(cosh w sqrt(1 + (sqrt2/2) sinh w)) for an
    ordinary reduced polygon of thickness w; strictly above w."""
    if w <= 0.0:
        raise DomainError("thickness must be positive")
    return math.acosh(math.cosh(w) * math.sqrt(1.0 + 0.5 * math.sqrt(2.0) * math.sinh(w)))


def regular_ngon_area(kp: KernelParams, n: int) -> float:
    """Area (n-2) pi - 2 n alpha_of_crossing(pi/n) of the regular reduced
    n-gon of thickness w; n must be an odd integer >= 3."""
    if n != int(n) or n < 3 or n % 2 == 0:
        raise InvalidN(f"need an odd integer >= 3, got {n}")
    return (n - 2) * math.pi - 2.0 * n * alpha_of_crossing(kp, math.pi / n)


def circle_limit_area(w: float) -> float:
    """Area 2 pi (cosh(w/2) - 1) of the disk of thickness w (radius w/2);
    the n -> infinity limit of regular_ngon_area and an upper bound for it."""
    if w <= 0.0:
        raise DomainError("thickness must be positive")
    return 2.0 * math.pi * (math.cosh(w / 2.0) - 1.0)


def quarter_disk_area(w: float) -> float:
    """Area (pi/2)(cosh w - 1) of a quarter of the disk of radius w, a
    reduced body of thickness w; exceeds circle_limit_area(w) for all w > 0."""
    if w <= 0.0:
        raise DomainError("thickness must be positive")
    return 0.5 * math.pi * (math.cosh(w) - 1.0)


# ---------------------------------------------------------------------------
# monotonicity machinery: why the regular area grows with n.
#
# With y = leg_tanh(pi/n), the regular area is 2 pi * area_ratio(y) - 2 pi,
# so the growth of the area in n reduces to area_ratio increasing in y on
# (0, tanh(w/2)).  area_ratio_margin shares the sign of area_ratio's
# derivative, and both it and its derivative vanish at the right endpoint.


def _arccos_pair(kp: KernelParams, x: float):
    """The two arccos terms of the ratio machinery, with exact endpoint snap.

    Returns (acos_vertex, acos_crossing, gap) where gap > 0 measures the
    distance from the right endpoint; gap <= 0 means x is at/past it.
    acos_vertex = pi/2 - alpha_of_leg(x), acos_crossing = the crossing angle
    whose leg tanh is x.
    """
    den = kp.t - x
    gap = (kp.t - x * (1.0 + kp.s)) / den
    if gap <= SNAP_BAND:
        return 0.0, 0.0, gap
    a1 = math.acos(min(1.0, x * kp.s / den))
    a2 = math.acos(min(1.0, x * (1.0 - x * kp.t) / den))
    return a1, a2, gap


def _check_ratio_domain(kp, x, what, closed_right=False):
    if x <= 0.0:
        raise DomainError(f"{what}: {x} <= 0")
    if x > kp.leg_tanh_max + CLAMP:
        raise DomainError(f"{what}: {x} beyond tanh(w/2) = {kp.leg_tanh_max}")
    if not closed_right and x >= kp.leg_tanh_max * (1.0 - 1e-15):
        raise DomainError(f"{what}: {x} at the right endpoint (0/0)")


def area_ratio(kp: KernelParams, x: float) -> float:
    """Ratio of the two arccos terms; strictly increasing on (0, tanh(w/2)).

    Evaluated at leg_tanh(pi/n) it gives (area of the regular reduced n-gon
    + 2 pi) / (2 pi), which is why its monotonicity in x forces the area to
    grow with n.
    """
    _check_ratio_domain(kp, x, "area_ratio")
    a1, a2, _ = _arccos_pair(kp, x)
    return a1 / a2


def area_ratio_margin(kp: KernelParams, x: float) -> float:
    """Margin whose sign equals the sign of area_ratio's derivative;
    positive on (0, tanh(w/2)) and exactly 0 at the right endpoint."""
    _check_ratio_domain(kp, x, "area_ratio_margin", closed_right=True)
    a1, a2, _ = _arccos_pair(kp, x)
    return ((x * x + 1.0 - 2.0 * x * kp.t) * a1
            - math.sqrt((1.0 - kp.t * kp.t) * (1.0 - x * x)) * a2)


def area_ratio_margin_deriv(kp: KernelParams, x: float) -> float:
    """Closed-form derivative of area_ratio_margin; negative on the open
    interval and exactly 0 at the right endpoint."""
    _check_ratio_domain(kp, x, "area_ratio_margin_deriv", closed_right=True)
    a1, a2, _ = _arccos_pair(kp, x)
    return (x * kp.s / math.sqrt(1.0 - x * x)) * a2 - 2.0 * (kp.t - x) * a1


class SecondDerivPair(NamedTuple):
    """Dual-sourced second derivative: finite-difference authority plus the
    suspect closed form (NaN where its radicand goes negative)."""

    numeric: float
    closed: float


def area_ratio_margin_second(kp: KernelParams, x: float, step=1e-6) -> SecondDerivPair:
    """Second derivative of area_ratio_margin, dual-sourced.

    The numeric field (central difference of the closed-form first
    derivative) is the authority and is strictly positive on the domain; the
    closed field follows the reduced expression whose radicand
    t^2 x^2 + t^2 - 2x goes negative on part of the domain (NaN there).
    """
    _check_ratio_domain(kp, x, "area_ratio_margin_second")
    h = min(step, 0.5 * x, 0.5 * (kp.leg_tanh_max - x))
    numeric = (area_ratio_margin_deriv(kp, x + h)
               - area_ratio_margin_deriv(kp, x - h)) / (2.0 * h)

    a1, a2, _ = _arccos_pair(kp, x)
    rad = kp.t * kp.t * x * x + kp.t * kp.t - 2.0 * x
    if rad > 0.0:
        third = (kp.t * kp.s / ((1.0 - x * x) * kp.t * math.sqrt(rad))
                 * (x ** 3 - 3.0 * x + 2.0 * kp.t))
        closed = 2.0 * a1 + kp.s / (1.0 - x * x) ** 1.5 * a2 + third
    else:
        closed = math.nan
    return SecondDerivPair(numeric, closed)


def sides_from_crossing(kp: KernelParams, phi: float) -> float:
    """Side count n recovered from a crossing angle phi = pi/n through the
    leg quadratic; returns pi/phi up to roundoff (self-consistency check)."""
    _interior(phi, 0.0, HALF_PI, "sides_from_crossing")
    y = leg_tanh(kp, phi)
    return math.pi / math.acos(min(1.0, y * (1.0 - y * kp.t) / (kp.t - y)))
