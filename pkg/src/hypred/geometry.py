"""Hyperboloid-model primitives for the hyperbolic plane.

Conventions
-----------
Points live on the upper sheet of <p,p> = -1 in Minkowski 3-space with
signature (-,+,+); the base point is (1,0,0).  A geodesic is encoded by its
spacelike unit normal u (<u,u> = +1); the line is {p : <p,u> = 0} and the
positive side is <p,u> > 0.  For a line built from an ordered point pair the
positive side is the left of travel.  The Poincare disk is used only for I/O
and rendering.

Inverse trig/hyperbolic arguments are clamped into their domain when within
CLAMP_WINDOW of the boundary; anything further out raises DomainError.
"""

import math
from dataclasses import dataclass
from enum import Enum

import numpy as np

from .errors import (CollinearOverlap, DegeneratePoints, DegenerateTriangle,
                     DomainError, IllConditioned, OutsideDisk)

CLAMP_WINDOW = 1e-9          # out-of-domain slack tolerated before DomainError
POINT_NORM_TOL = 1e-12       # |<p,p> + 1| bound, relative to the coord scale
LINE_NORM_TOL = 1e-12        # |<u,u> - 1| bound, relative to the coord scale
LORENTZ_TOL = 1e-10          # ||M^T J M - J|| bound, relative to ||M||^2
PARABOLIC_MARGIN = 1e-8      # |trace - 3| band treated as unclassifiable

J_DIAG = np.array([-1.0, 1.0, 1.0])


def mdot(a, b):
    """Minkowski product -a0*b0 + a1*b1 + a2*b2 of two 3-vectors."""
    return a[1] * b[1] + a[2] * b[2] - a[0] * b[0]


def _clamped(x, lo, hi, what):
    if x < lo:
        if x < lo - CLAMP_WINDOW:
            raise DomainError(f"{what}: argument {x!r} below {lo}")
        return lo
    if x > hi:
        if x > hi + CLAMP_WINDOW:
            raise DomainError(f"{what}: argument {x!r} above {hi}")
        return hi
    return x


def _acos(x):
    return math.acos(_clamped(x, -1.0, 1.0, "acos"))


def _acosh(x):
    return math.acosh(_clamped(x, 1.0, math.inf, "acosh"))


@dataclass(frozen=True, eq=False)
class HPoint:
    """Point on the upper hyperboloid sheet."""

    coords: np.ndarray

    def __post_init__(self):
        c = np.asarray(self.coords, dtype=float)
        object.__setattr__(self, "coords", c)
        if c.shape != (3,):
            raise ValueError("HPoint needs 3 coordinates")
        scale = max(1.0, float(c @ c))  # cancellation noise grows with |coords|^2
        if abs(mdot(c, c) + 1.0) > POINT_NORM_TOL * scale:
            raise ValueError(f"not on the hyperboloid: <p,p> = {mdot(c, c)}")
        if c[0] < 1.0 - POINT_NORM_TOL:
            raise ValueError("not on the upper sheet")

    def __repr__(self):
        return f"HPoint({self.coords[0]!r}, {self.coords[1]!r}, {self.coords[2]!r})"


@dataclass(frozen=True, eq=False)
class HLine:
    """Oriented geodesic, encoded by its spacelike unit normal."""

    normal: np.ndarray

    def __post_init__(self):
        u = np.asarray(self.normal, dtype=float)
        object.__setattr__(self, "normal", u)
        if u.shape != (3,):
            raise ValueError("HLine needs a 3-vector normal")
        scale = max(1.0, float(u @ u))
        if abs(mdot(u, u) - 1.0) > LINE_NORM_TOL * scale:
            raise ValueError(f"normal not spacelike unit: <u,u> = {mdot(u, u)}")

    def reversed(self):
        """Same geodesic with the positive side flipped."""
        return HLine(-self.normal)


@dataclass(frozen=True, eq=False)
class GeodesicSegment:
    """Geodesic segment [a, b]; a == b encodes the degenerate one-point set."""

    a: HPoint
    b: HPoint

    @property
    def length(self):
        return distance(self.a, self.b)


def hpoint(x0, x1, x2):
    """Point from raw hyperboloid coordinates (validated)."""
    return HPoint(np.array([x0, x1, x2], dtype=float))


def normalize_point(v):
    """Rescale a timelike 3-vector onto the upper hyperboloid sheet."""
    q = -mdot(v, v)
    if q <= 0.0:
        raise ValueError("vector is not timelike")
    c = v / math.sqrt(q)
    if c[0] < 0.0:
        c = -c
    return HPoint(c)


def normalize_spacelike(v):
    """Rescale a spacelike 3-vector to unit Minkowski norm."""
    q = mdot(v, v)
    if q <= 0.0:
        raise ValueError("vector is not spacelike")
    return v / math.sqrt(q)


BASE_POINT = hpoint(1.0, 0.0, 0.0)


def _jcross(a, b):
    # J(a x b): Minkowski-orthogonal to a and b
    return J_DIAG * np.cross(a, b)


def distance(p: HPoint, q: HPoint) -> float:
    """Geodesic distance arcosh(-<p,q>); symmetric, >= 0.

    Evaluated as 2 arsinh(|p - q|_M / 2), which is algebraically identical
    (<p-q, p-q> = 2(cosh d - 1)) but keeps full precision for nearby points
    where the arcosh form loses half the digits; roundoff below the domain
    boundary lands at exactly 0.
    """
    diff = p.coords - q.coords
    n2 = mdot(diff, diff)
    if n2 <= 0.0:
        return 0.0
    return 2.0 * math.asinh(0.5 * math.sqrt(n2))


def line_through(p: HPoint, q: HPoint) -> HLine:
    """Oriented geodesic through two distinct points; positive side on the
    left of travel p -> q."""
    c = _jcross(p.coords, q.coords)
    n2 = mdot(c, c)
    scale = float(np.linalg.norm(p.coords) * np.linalg.norm(q.coords))
    if n2 <= (1e-12 * scale) ** 2:
        raise DegeneratePoints("cannot span a line from coincident points")
    return HLine(c / math.sqrt(n2))


def point_line_distance(p: HPoint, line: HLine) -> float:
    """Signed distance arsinh(<p,u>); positive on the line's positive side."""
    return math.asinh(mdot(p.coords, line.normal))


def foot_of_perpendicular(p: HPoint, line: HLine) -> HPoint:
    """Nearest point of the line to p (equals p when p lies on the line)."""
    s = mdot(p.coords, line.normal)
    return normalize_point(p.coords - s * line.normal)


def tangent_toward(origin: HPoint, target: HPoint):
    """Unit tangent vector at origin pointing along the geodesic to target."""
    t = target.coords + mdot(target.coords, origin.coords) * origin.coords
    n2 = mdot(t, t)
    if n2 <= 1e-24:
        raise DegeneratePoints("tangent direction undefined for coincident points")
    return t / math.sqrt(n2)


def exp_map(p: HPoint, v) -> HPoint:
    """Geodesic exponential: follow tangent v at p for length |v|."""
    n2 = mdot(v, v)
    if n2 <= 0.0:
        return p
    n = math.sqrt(n2)
    return normalize_point(math.cosh(n) * p.coords + math.sinh(n) * (v / n))


def angle(a: HPoint, vertex: HPoint, b: HPoint) -> float:
    """Unsigned angle in [0, pi] between geodesics vertex->a and vertex->b."""
    ta = tangent_toward(vertex, a)
    tb = tangent_toward(vertex, b)
    return _acos(mdot(ta, tb))


def signed_angle(vertex: HPoint, u_from, u_to) -> float:
    """Angle in (-pi, pi] rotating unit tangent u_from onto u_to at vertex.

    Positive sign matches rotation_about's positive (counterclockwise) sense.
    """
    cos_t = mdot(u_from, u_to)
    sin_t = float(np.linalg.det(np.stack([vertex.coords, u_from, u_to])))
    return math.atan2(sin_t, cos_t)


def perpendicular_at_foot(p: HPoint, line: HLine):
    """Common-perpendicular construction: returns (foot, line through p
    perpendicular to the perpendicular geodesic from p to line)."""
    foot = foot_of_perpendicular(p, line)
    d = tangent_toward(p, foot)
    # line through p whose tangent is orthogonal to d
    n = _jcross(p.coords, d)
    u = _jcross(p.coords, normalize_spacelike(n))
    return foot, HLine(normalize_spacelike(u))


def line_line_distance(l1: HLine, l2: HLine) -> float:
    """Distance between two geodesics: 0 if they meet, else the length of the
    common perpendicular arcosh|<u1,u2>|."""
    c = abs(mdot(l1.normal, l2.normal))
    if c <= 1.0:
        return 0.0
    return math.acosh(c)


def _point_on_segment(x: HPoint, seg: GeodesicSegment, tol=1e-9) -> bool:
    return distance(seg.a, x) + distance(x, seg.b) <= seg.length + tol


def segment_intersection(s1: GeodesicSegment, s2: GeodesicSegment, tol=1e-9):
    """Common point of two geodesic segments, or None when disjoint.

    Endpoint contact counts as intersection.  Raises CollinearOverlap when the
    segments share a sub-segment of positive length.
    """
    n1 = line_through(s1.a, s1.b).normal
    n2 = line_through(s2.a, s2.b).normal
    if abs(mdot(n1, n2)) >= 1.0 - 1e-12:
        return _collinear_intersection(s1, s2, tol)
    c = _jcross(n1, n2)
    q = mdot(c, c)
    if q >= 0.0:
        return None  # lines diverge or are asymptotic
    x = normalize_point(c)
    if _point_on_segment(x, s1, tol) and _point_on_segment(x, s2, tol):
        return x
    return None


def _collinear_intersection(s1, s2, tol):
    # both segments on one geodesic: parameterize by signed arc length from s1.a
    origin, far = s1.a, s1.b
    d = tangent_toward(origin, far)

    def coord(p):
        if distance(origin, p) <= tol:
            return 0.0
        t = tangent_toward(origin, p)
        return math.copysign(distance(origin, p), mdot(t, d))

    lo1, hi1 = sorted((0.0, coord(s1.b)))
    lo2, hi2 = sorted((coord(s2.a), coord(s2.b)))
    lo, hi = max(lo1, lo2), min(hi1, hi2)
    if hi - lo > tol:
        raise CollinearOverlap("segments share a sub-segment")
    if hi < lo - tol:
        return None
    t = 0.5 * (lo + hi)
    return exp_map(origin, t * d)


# ---------------------------------------------------------------------------
# isometries


class IsometryClass(Enum):
    IDENTITY = "identity"
    ELLIPTIC = "elliptic"
    PARABOLIC = "parabolic"
    HYPERBOLIC = "hyperbolic"
    ORIENTATION_REVERSING = "orientation-reversing"


@dataclass(frozen=True, eq=False)
class Isometry:
    """Lorentz matrix acting on the hyperboloid."""

    matrix: np.ndarray

    def __post_init__(self):
        m = np.asarray(self.matrix, dtype=float)
        object.__setattr__(self, "matrix", m)
        if m.shape != (3, 3):
            raise ValueError("isometry needs a 3x3 matrix")
        gram = m.T @ (J_DIAG[:, None] * m)
        scale = max(1.0, float((m * m).sum()))
        if np.abs(gram - np.diag(J_DIAG)).max() > LORENTZ_TOL * scale:
            raise ValueError("matrix does not preserve the Minkowski form")

    def __matmul__(self, other):
        if isinstance(other, Isometry):
            return Isometry(self.matrix @ other.matrix)
        return NotImplemented

    def apply(self, p: HPoint) -> HPoint:
        # renormalize to keep roundoff from drifting off the sheet
        return normalize_point(self.matrix @ p.coords)

    def apply_line(self, line: HLine) -> HLine:
        u = self.matrix @ line.normal
        return HLine(normalize_spacelike(u))

    def apply_segment(self, seg: GeodesicSegment) -> GeodesicSegment:
        return GeodesicSegment(self.apply(seg.a), self.apply(seg.b))

    def inverse(self):
        # Lorentz inverse J M^T J, cheaper and exacter than a general inverse
        m = self.matrix
        return Isometry(J_DIAG[:, None] * m.T * J_DIAG[None, :])

    @property
    def det(self):
        return float(np.linalg.det(self.matrix))


IDENTITY = Isometry(np.eye(3))


def _point_reflection_matrix(x):
    return -np.eye(3) - 2.0 * np.outer(x, J_DIAG * x)


def transvection(a: HPoint, b: HPoint) -> Isometry:
    """Hyperbolic translation along the geodesic a -> b carrying a to b."""
    s = a.coords + b.coords
    q = -mdot(s, s)
    if q <= 0.0:
        raise DegeneratePoints("transvection endpoints antipodal-degenerate")
    m = s / math.sqrt(q)
    return Isometry(_point_reflection_matrix(m) @ _point_reflection_matrix(a.coords))


def _base_rotation(theta):
    c, s = math.cos(theta), math.sin(theta)
    return np.array([[1.0, 0.0, 0.0], [0.0, c, -s], [0.0, s, c]])


def rotation_about(p: HPoint, theta: float) -> Isometry:
    """Elliptic isometry fixing p, rotating its tangent plane by theta
    (counterclockwise for theta > 0)."""
    r = Isometry(_base_rotation(theta))
    if distance(p, BASE_POINT) <= 1e-15:
        return r
    t = transvection(BASE_POINT, p)
    return t @ r @ t.inverse()


def translation_along(line: HLine, t: float) -> Isometry:
    """Hyperbolic isometry preserving the line, displacing its points by |t|
    in the orientation direction for t > 0."""
    if t == 0.0:
        return IDENTITY
    q0 = foot_of_perpendicular(BASE_POINT, line)
    d = normalize_spacelike(_jcross(line.normal, q0.coords))
    q1 = exp_map(q0, t * d)
    return transvection(q0, q1)


@dataclass(frozen=True)
class Classification:
    kind: IsometryClass
    fixed_point: HPoint | None = None
    angle: float | None = None
    translation_length: float | None = None


def classify(iso: Isometry, margin=PARABOLIC_MARGIN) -> Classification:
    """Classify an isometry by its fixed-point structure.

    Orientation-preserving maps split by trace: < 3 elliptic (interior fixed
    point; the fixed point and rotation angle are returned), > 3 hyperbolic
    (two ideal fixed points).  Traces within ``margin`` of 3 are reported as
    IllConditioned unless the matrix is the identity; genuinely parabolic
    matrices land in that band, so PARABOLIC is unreachable at the default
    margin.
    """
    m = iso.matrix
    if np.abs(m - np.eye(3)).max() <= 1e-10:
        return Classification(IsometryClass.IDENTITY)
    if iso.det < 0.0:
        return Classification(IsometryClass.ORIENTATION_REVERSING)
    tr = float(np.trace(m))
    if abs(tr - 3.0) < margin:
        raise IllConditioned(f"trace {tr} within {margin} of the parabolic value 3")
    if tr > 3.0:
        return Classification(IsometryClass.HYPERBOLIC,
                              translation_length=_acosh((tr - 1.0) / 2.0))
    p = _elliptic_fixed_point(m)
    t = transvection(BASE_POINT, p) if distance(p, BASE_POINT) > 1e-15 else IDENTITY
    n = (t.inverse() @ iso @ t).matrix
    theta = math.atan2(0.5 * (n[2, 1] - n[1, 2]), 0.5 * (n[1, 1] + n[2, 2]))
    return Classification(IsometryClass.ELLIPTIC, fixed_point=p, angle=theta)


def _elliptic_fixed_point(m):
    # null vector of M - I via SVD; timelike for an elliptic isometry
    _, _, vt = np.linalg.svd(m - np.eye(3))
    v = vt[-1]
    if mdot(v, v) >= 0.0:
        raise IllConditioned("fixed direction is not timelike")
    return normalize_point(v)


# ---------------------------------------------------------------------------
# triangle relations


def triangle_relations_residual(a: HPoint, b: HPoint, c: HPoint):
    """Relative residuals of the law of sines and the half-angle side/angle
    relation for triangle abc.

    Returns an array of five values: two independent law-of-sines gaps
    sin(alpha)/sinh(a') - sin(beta)/sinh(b') etc., and the cyclic half-angle
    relation cot(gamma/2) = tan((alpha+beta)/2) cosh((a'+b')/2)/cosh((a'-b')/2)
    for each labeling, all normalized by the mean term magnitude.
    """
    pts = (a, b, c)
    side = [distance(pts[(i + 1) % 3], pts[(i + 2) % 3]) for i in range(3)]
    if min(side) <= 1e-9:
        raise DegenerateTriangle("side below tolerance")
    ang = [angle(pts[(i + 1) % 3], pts[i], pts[(i + 2) % 3]) for i in range(3)]
    if min(ang) <= 1e-12 or max(ang) >= math.pi - 1e-12:
        raise DegenerateTriangle("triangle numerically collinear")

    ratios = [math.sin(ang[i]) / math.sinh(side[i]) for i in range(3)]
    mean_ratio = sum(ratios) / 3.0
    res = [abs(ratios[0] - ratios[1]) / mean_ratio,
           abs(ratios[1] - ratios[2]) / mean_ratio]

    for i in range(3):
        al, be, ga = ang[(i + 1) % 3], ang[(i + 2) % 3], ang[i]
        sa, sb = side[(i + 1) % 3], side[(i + 2) % 3]
        lhs = 1.0 / math.tan(ga / 2.0)
        rhs = math.tan((al + be) / 2.0) * math.cosh((sa + sb) / 2.0) / math.cosh((sa - sb) / 2.0)
        res.append(abs(lhs - rhs) / max(abs(lhs), abs(rhs)))
    return np.array(res)


# ---------------------------------------------------------------------------
# Poincare disk


def to_poincare(p: HPoint):
    """Stereographic map to the unit disk: (x1, x2)/(1 + x0)."""
    c = p.coords
    return np.array([c[1] / (1.0 + c[0]), c[2] / (1.0 + c[0])])


def from_poincare(z) -> HPoint:
    """Inverse of to_poincare; raises OutsideDisk for |z| >= 1."""
    z = np.asarray(z, dtype=float)
    r2 = float(z @ z)
    if r2 >= 1.0:
        raise OutsideDisk(f"|z|^2 = {r2} >= 1")
    d = 1.0 - r2
    return HPoint(np.array([(1.0 + r2) / d, 2.0 * z[0] / d, 2.0 * z[1] / d]))
