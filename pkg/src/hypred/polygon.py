"""Convex polygons in the hyperbolic plane.

Hull construction runs in Beltrami-Klein coordinates, where geodesics are
straight lines and hyperbolic convexity coincides with Euclidean convexity
of the projected points.  Vertices are kept in positive (counterclockwise in
disk coordinates) cyclic order; each edge line's positive side is the
polygon interior.

Width of a polygon with respect to a supporting line equals the largest
|signed distance| of a vertex from it (the supporting line at the farthest
point perpendicular to the common perpendicular realizes the line-to-line
definition; tests check that construction explicitly).  Thickness is the
minimum of that width over the closed one-parameter family of supporting
lines: n edge lines plus the pencil of lines through each vertex sweeping
its exterior cone.
"""

import math
from dataclasses import dataclass

import numpy as np

from . import _backend as backend
from .errors import DegenerateHull, NotSupporting
from .geometry import (HLine, HPoint, J_DIAG, angle, distance, line_through,
                       mdot, normalize_spacelike, tangent_toward)

CONVEXITY_TOL = 1e-10     # vertices may dip this far onto an edge's wrong side
ANGLE_CAP = math.pi - 1e-9  # interior angles at/above this mark a non-vertex
TOUCH_TOL = 1e-10         # a supporting line must graze the polygon this closely

INV_PHI = (math.sqrt(5.0) - 1.0) / 2.0
INV_PHI2 = 1.0 - INV_PHI


class ConvexPolygon:
    """Positively oriented convex polygon; preserves the given vertex order.

    Use make_polygon for unordered point sets.
    """

    def __init__(self, vertices):
        verts = tuple(vertices)
        if len(verts) < 3:
            raise DegenerateHull(f"{len(verts)} vertices cannot bound a polygon")
        self.vertices = verts
        self.n = len(verts)
        self.array = np.array([v.coords for v in verts])

        for i in range(self.n):
            if distance(verts[i], verts[(i + 1) % self.n]) <= 1e-9:
                raise DegenerateHull("consecutive vertices coincide")

        self.edge_lines = tuple(
            line_through(verts[i], verts[(i + 1) % self.n]) for i in range(self.n))
        self.edge_normals = np.array([l.normal for l in self.edge_lines])

        signed = np.arcsinh(self.array @ (J_DIAG * self.edge_normals).T)
        if signed.min() < -CONVEXITY_TOL:
            raise DegenerateHull(
                "vertices are not in convex positive cyclic order "
                f"(worst signed distance {signed.min():.3e})")

        self.interior_angles = np.array([
            angle(verts[i - 1], verts[i], verts[(i + 1) % self.n])
            for i in range(self.n)])
        if self.interior_angles.max() >= ANGLE_CAP:
            raise DegenerateHull("straight vertex: point is not extreme")

    def __repr__(self):
        return f"ConvexPolygon(n={self.n})"


def klein_coords(points):
    """Beltrami-Klein projection (x1/x0, x2/x0) of an iterable of HPoints."""
    a = np.array([p.coords for p in points])
    return a[:, 1:] / a[:, :1]


def _hull_indices(pts2, eps=1e-14):
    # Andrew monotone chain, strict turns; returns CCW index cycle
    order = sorted(range(len(pts2)), key=lambda i: (pts2[i][0], pts2[i][1]))

    def cross(o, a, b):
        return ((pts2[a][0] - pts2[o][0]) * (pts2[b][1] - pts2[o][1])
                - (pts2[a][1] - pts2[o][1]) * (pts2[b][0] - pts2[o][0]))

    lower = []
    for i in order:
        while len(lower) > 1 and cross(lower[-2], lower[-1], i) <= eps:
            lower.pop()
        lower.append(i)
    upper = []
    for i in reversed(order):
        while len(upper) > 1 and cross(upper[-2], upper[-1], i) <= eps:
            upper.pop()
        upper.append(i)
    return lower[:-1] + upper[:-1]


def make_polygon(points) -> ConvexPolygon:
    """Convex hull of 3+ points, keeping extreme points only.

    Raises DegenerateHull when the points lie within tolerance of a common
    geodesic (or otherwise fail to span a polygon).
    """
    pts = list(points)
    if len(pts) < 3:
        raise DegenerateHull("need at least 3 points")

    # drop near-duplicates so the chain cannot stutter
    kept: list[HPoint] = []
    for p in pts:
        if all(distance(p, q) > 1e-9 for q in kept):
            kept.append(p)
    if len(kept) < 3:
        raise DegenerateHull("fewer than 3 distinct points")

    idx = _hull_indices(klein_coords(kept))
    hull = [kept[i] for i in idx]
    # strict turns can still leave hyperbolically flat corners; peel them off
    while len(hull) >= 3:
        n = len(hull)
        flat = [i for i in range(n)
                if angle(hull[i - 1], hull[i], hull[(i + 1) % n]) >= ANGLE_CAP]
        if not flat:
            break
        hull = [h for i, h in enumerate(hull) if i not in set(flat)]
    if len(hull) < 3:
        raise DegenerateHull("points lie within tolerance of a common geodesic")
    return ConvexPolygon(hull)


def contains(poly: ConvexPolygon, p: HPoint, tol=1e-9) -> bool:
    """Whether p lies in the closed polygon (within tol of it)."""
    pt = p.coords.reshape(1, 3)
    return bool(backend.min_signed(pt, poly.edge_normals)[0] >= -tol)


def gauss_bonnet_area(poly: ConvexPolygon) -> float:
    """Area by angle defect: (n-2) pi - sum of interior angles."""
    return (poly.n - 2) * math.pi - float(poly.interior_angles.sum())


def triangulation_area(poly: ConvexPolygon, anchor=0) -> float:
    """Area by fan triangulation from a vertex: sum of triangle angle
    defects.  Independent of anchor for convex polygons (tests assert it);
    the default fan keeps the two routes of the area cross-check distinct."""
    v = poly.vertices
    total = 0.0
    for k in range(1, poly.n - 1):
        a, b, c = v[anchor], v[(anchor + k) % poly.n], v[(anchor + k + 1) % poly.n]
        defect = math.pi - angle(b, a, c) - angle(a, b, c) - angle(a, c, b)
        total += defect
    return total


def diameter(poly: ConvexPolygon) -> float:
    """Largest pairwise vertex distance (convexity puts the diameter there)."""
    return math.acosh(max(1.0, backend.max_pair_mdot(poly.array)))


def width_wrt(poly: ConvexPolygon, line: HLine, touch_tol=TOUCH_TOL) -> float:
    """Width with respect to a supporting line: the largest |signed vertex
    distance|.  Raises NotSupporting when the line misses or crosses."""
    w, lo, hi = backend.widths_minmax(poly.array, line.normal.reshape(1, 3))
    lo, hi = float(lo[0]), float(hi[0])
    one_side = lo >= -touch_tol or hi <= touch_tol
    touches = min(abs(lo), abs(hi)) <= touch_tol
    if not (one_side and touches):
        raise NotSupporting(f"signed vertex distances span [{lo:.3e}, {hi:.3e}]")
    return float(w[0])


@dataclass(frozen=True)
class SupportingLineParam:
    """Point in the supporting-line family: an edge line (theta == 0) or a
    line of the vertex pencil at angle theta into the exterior cone."""

    kind: str  # "edge" | "vertex"
    index: int
    theta: float
    line: HLine


@dataclass(frozen=True)
class WidthProfile:
    """Sampled width function over the supporting-line family."""

    samples: tuple            # (SupportingLineParam, width) pairs, cyclic order
    min_value: float
    argmin: SupportingLineParam
    max_value: float
    argmax: SupportingLineParam


def _pencil_frame(poly: ConvexPolygon, j):
    """Orthonormal tangent frame spanning the exterior cone at vertex j.

    Returns (e1, e2, delta): directions cos(theta) e1 + sin(theta) e2 for
    theta in [0, delta] sweep the supporting lines from the incoming edge
    line to the outgoing one.
    """
    v = poly.vertices
    e1 = -tangent_toward(v[j], v[j - 1])            # incoming edge, continued
    d_out = tangent_toward(v[j], v[(j + 1) % poly.n])
    delta = math.pi - float(poly.interior_angles[j])
    raw = d_out - mdot(d_out, e1) * e1
    e2 = normalize_spacelike(raw)
    return e1, e2, delta


def _pencil_normals(poly: ConvexPolygon, j, thetas):
    """Unit normals of the pencil lines at vertex j for an array of thetas."""
    e1, e2, _ = _pencil_frame(poly, j)
    dirs = np.outer(np.cos(thetas), e1) + np.outer(np.sin(thetas), e2)
    vj = poly.vertices[j].coords
    normals = np.cross(vj, dirs) * J_DIAG
    norms = np.sqrt(normals[:, 1] ** 2 + normals[:, 2] ** 2 - normals[:, 0] ** 2)
    return normals / norms[:, None]


def pencil_line(poly: ConvexPolygon, j, theta) -> HLine:
    """Supporting line through vertex j at angle theta into its exterior cone."""
    return HLine(_pencil_normals(poly, j, np.array([theta]))[0])


def _width_at(poly, j, theta):
    n = _pencil_normals(poly, j, np.array([theta]))
    w, _, _ = backend.widths_minmax(poly.array, n)
    return float(w[0])


def _golden_min(f, a, b, tol):
    """Golden-section minimum of f on [a, b]; returns (x, f(x))."""
    c = b - INV_PHI * (b - a)
    d = a + INV_PHI * (b - a)
    fc, fd = f(c), f(d)
    while b - a > tol:
        if fc < fd:
            b, d, fd = d, c, fc
            c = b - INV_PHI * (b - a)
            fc = f(c)
        else:
            a, c, fc = c, d, fd
            d = a + INV_PHI * (b - a)
            fd = f(d)
    x = 0.5 * (a + b)
    return x, f(x)


def _scan_width_function(poly: ConvexPolygon, samples_per_cone, refine_tol):
    """Sample the width over the full supporting family and refine extrema.

    Returns (cones, best_min, best_max) where cones[j] = (thetas, widths)
    and each best is (value, cone index, theta).  theta == 0 entries are the
    edge lines, so edges and pencils are covered in one cyclic pass.
    """
    n = poly.n
    cones = []
    for j in range(n):
        _, _, delta = _pencil_frame(poly, j)
        thetas = delta * np.arange(samples_per_cone) / samples_per_cone
        normals = _pencil_normals(poly, j, thetas)
        w, _, _ = backend.widths_minmax(poly.array, normals)
        cones.append((thetas, w, delta))

    widths = np.concatenate([c[1] for c in cones])
    cone_of = np.concatenate([np.full(len(c[0]), j) for j, c in enumerate(cones)])
    theta_of = np.concatenate([c[0] for c in cones])
    m = len(widths)

    def refine(k, sign):
        """Refine the extremum near global sample k; sign=+1 min, -1 max."""
        j = int(cone_of[k])
        best = (widths[k], j, float(theta_of[k]))
        prev_k, next_k = (k - 1) % m, (k + 1) % m

        def eval_cone(jj, th):
            return sign * _width_at(poly, jj, th)

        # pieces of the bracket that live inside single cones
        pieces = []
        if cone_of[prev_k] == j:
            pieces.append((j, float(theta_of[prev_k]), float(theta_of[k])))
        else:
            jp = int(cone_of[prev_k])
            pieces.append((jp, float(theta_of[prev_k]), cones[jp][2]))
            pieces.append((j, 0.0, float(theta_of[k])))
        if cone_of[next_k] == j:
            pieces.append((j, float(theta_of[k]), float(theta_of[next_k])))
        else:
            jn = int(cone_of[next_k])
            pieces.append((j, float(theta_of[k]), cones[j][2]))
            pieces.append((jn, 0.0, float(theta_of[next_k])))

        for jj, a, b in pieces:
            if b - a <= refine_tol:
                continue
            th, val = _golden_min(lambda t: eval_cone(jj, t), a, b, refine_tol)
            if val < sign * best[0]:  # val is sign * width
                best = (sign * val, jj, th)
        return best

    lo_k = int(np.argmin(widths))
    hi_k = int(np.argmax(widths))
    best_min = refine(lo_k, +1.0)
    # other local minima can undercut the refined global sample minimum
    for k in range(m):
        if widths[k] <= widths[(k - 1) % m] and widths[k] <= widths[(k + 1) % m]:
            if widths[k] <= best_min[0] + (widths[hi_k] - widths[lo_k]) * 1e-3 + 1e-12:
                cand = refine(k, +1.0)
                if cand[0] < best_min[0]:
                    best_min = cand
    best_max = refine(hi_k, -1.0)
    return cones, best_min, best_max


def _param_for(poly, j, theta, delta) -> SupportingLineParam:
    if theta <= 1e-9:
        return SupportingLineParam("edge", (j - 1) % poly.n, 0.0,
                                   poly.edge_lines[(j - 1) % poly.n])
    if theta >= delta - 1e-9:
        return SupportingLineParam("edge", j, 0.0, poly.edge_lines[j])
    return SupportingLineParam("vertex", j, theta, pencil_line(poly, j, theta))


def thickness(poly: ConvexPolygon, samples_per_cone=256, refine_tol=1e-10):
    """Minimal width over all supporting lines, with the witness parameter.

    Dense sampling (samples_per_cone per exterior cone plus the edge lines)
    followed by golden-section refinement of the candidate local minima; the
    width function is continuous, so this is sound at the tolerances used.
    """
    cones, best_min, _ = _scan_width_function(poly, samples_per_cone, refine_tol)
    value, j, theta = best_min
    return value, _param_for(poly, j, theta, cones[j][2])


def width_profile(poly: ConvexPolygon, samples_per_cone=256, refine_tol=1e-10) -> WidthProfile:
    """Full sampled width profile; its refined max matches the diameter."""
    cones, best_min, best_max = _scan_width_function(poly, samples_per_cone, refine_tol)
    samples = []
    for j, (thetas, widths, delta) in enumerate(cones):
        for th, wd in zip(thetas, widths):
            samples.append((_param_for(poly, j, float(th), delta), float(wd)))
    vmin, jmin, tmin = best_min
    vmax, jmax, tmax = best_max
    return WidthProfile(tuple(samples),
                        vmin, _param_for(poly, jmin, tmin, cones[jmin][2]),
                        vmax, _param_for(poly, jmax, tmax, cones[jmax][2]))
