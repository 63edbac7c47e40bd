"""Ordinary reduced polygons: construction, butterfly structure, validation.

An ordinary reduced polygon is an odd-gon of thickness w in which every
vertex v_i lies at distance w from the line of its opposite side, with the
perpendicular foot t_i in that side's relative interior.  The segments
[v_i, t_i] and [v_k, t_k] for the partner index k = i + (n+1)/2 (mod n)
cross at a point p_i; the two congruent right triangles they cut out form
the butterfly B_i, and the n butterflies tile the polygon.

Index conventions (0-based, all mod n): the side opposite vertex i runs
from vertex i + (n-1)/2 to vertex i + (n+1)/2, so its line is
``poly.edge_lines[i + (n-1)/2]``; the partner of i is i + (n+1)/2.
"""

import math
from dataclasses import dataclass

import numpy as np

from . import _backend as backend
from . import polygon as pg
from .errors import (ClosureViolation, ConvergenceFailure, CoverageGap,
                     DegenerateHull, DomainError, InvalidN,
                     NotOrdinaryReduced, ValidationFailure)
from .geometry import (GeodesicSegment, HLine, HPoint, Isometry, IsometryClass,
                       angle, classify, distance, foot_of_perpendicular,
                       line_through, mdot, normalize_point, point_line_distance,
                       rotation_about, segment_intersection, signed_angle,
                       tangent_toward, to_poincare, transvection)
from .kernels import alpha_of_crossing, diameter_bound, kernel_params
from .report import CheckReport

DIST_TOL = 1e-7        # |d(v_i, opposite line) - w| allowed
INTERIOR_TOL = 1e-10   # barycentric margin required of each foot
PHI_SUM_TOL = 1e-9     # slack on the crossing-angle sum bound (<= pi)
COVER_TOL = 1e-9       # signed-distance slack in point-in-triangle tests

# The crossing angles of a REGULAR polygon sum to exactly pi (all segments
# pass through the center, so the crossing points coincide and the angles
# add like Euclidean ones).  For non-regular instances the crossing points
# spread apart and the sum drops strictly BELOW pi, by an amount quadratic
# in the distance from regular (rotation holonomy; measured directly, and
# consistent with the boundary cycle still composing to an exact half-turn).
# Since the vertex-angle kernel is decreasing, the below-pi sum only widens
# the regular polygon's area advantage.


def check_odd(n):
    if n != int(n) or n < 3 or n % 2 == 0:
        raise InvalidN(f"need an odd integer >= 3, got {n}")
    return int(n)


def opposite_side(n, i):
    """Vertex indices (start, end) of the side opposite vertex i."""
    return (i + (n - 1) // 2) % n, (i + (n + 1) // 2) % n


def partner(n, i):
    """Index whose segment crosses segment i inside butterfly B_i."""
    return (i + (n + 1) // 2) % n


@dataclass(frozen=True)
class ButterflyData:
    """Per-index record of the butterfly construction at vertex i."""

    index: int
    v: HPoint          # vertex i
    t: HPoint          # foot of the perpendicular on the opposite side line
    p: HPoint          # crossing with the partner segment
    b: float           # leg d(p, t)
    c: float           # hypotenuse d(p, v_partner)
    phi: float         # crossing angle at p
    alpha: float       # angle at the partner vertex
    line: HLine        # line through v and t


@dataclass(frozen=True)
class CrossingAngles:
    """Angle vector with each entry in (0, pi/2) and total pi."""

    values: np.ndarray

    def __post_init__(self):
        v = np.asarray(self.values, dtype=float)
        object.__setattr__(self, "values", v)
        if v.ndim != 1 or len(v) < 3:
            raise ValueError("need a flat vector of at least 3 angles")
        if v.min() <= 0.0 or v.max() >= math.pi / 2.0:
            raise ValueError("crossing angles must lie strictly in (0, pi/2)")
        if abs(v.sum() - math.pi) > 1e-12:
            raise ValueError(f"crossing angles sum to {v.sum()}, not pi")

    @classmethod
    def normalized(cls, values):
        """Rescale a nearly valid vector so the sum is exactly pi."""
        v = np.asarray(values, dtype=float)
        if abs(v.sum() - math.pi) > 1e-6:
            raise ValueError(f"sum {v.sum()} too far from pi to normalize")
        return cls(v * (math.pi / v.sum()))

    def __len__(self):
        return len(self.values)


@dataclass(frozen=True)
class OrdinaryReducedPolygon:
    polygon: pg.ConvexPolygon
    w: float
    butterflies: tuple
    validation: CheckReport | None = None

    def __post_init__(self):
        check_odd(self.polygon.n)
        phi_sum = sum(bf.phi for bf in self.butterflies)
        if phi_sum > math.pi + PHI_SUM_TOL:
            raise ValidationFailure(
                f"crossing angles sum to {phi_sum}, above pi by "
                f"{phi_sum - math.pi:.3e}")

    @property
    def n(self):
        return self.polygon.n

    @property
    def phis(self):
        return np.array([bf.phi for bf in self.butterflies])

    @property
    def phi_deficit(self):
        """pi minus the crossing-angle sum; 0 for regular, > 0 otherwise."""
        return math.pi - sum(bf.phi for bf in self.butterflies)


def area_from_crossing_angles(w, phis) -> float:
    """Area (n-2) pi - 2 sum(alpha_of_crossing(phi_i)) from the angle data
    alone; agrees with the geometric area of the polygon realizing phis.

    Valid for any angle vector with entries in (0, pi/2): the identity is
    per-butterfly and does not need the angles to sum to pi (extracted
    vectors of non-regular instances sum to slightly less).
    """
    values = phis.values if isinstance(phis, CrossingAngles) else np.asarray(phis, dtype=float)
    if values.min() <= 0.0 or values.max() >= math.pi / 2.0:
        raise DomainError("crossing angles must lie strictly in (0, pi/2)")
    kp = kernel_params(w)
    return (len(values) - 2) * math.pi - 2.0 * sum(
        alpha_of_crossing(kp, x) for x in values)


def opposite_side_line(poly: pg.ConvexPolygon, i) -> HLine:
    j1, _ = opposite_side(poly.n, i)
    return poly.edge_lines[j1]


def extract_butterflies(poly: pg.ConvexPolygon, w,
                        dist_tol=DIST_TOL, interior_tol=INTERIOR_TOL):
    """Butterfly records for each vertex of a candidate polygon.

    Raises NotOrdinaryReduced when any vertex/opposite-side distance is off w
    by more than dist_tol, a foot leaves the relative interior of its side,
    or a segment pair fails to cross.
    """
    n = check_odd(poly.n)
    v = poly.vertices

    feet = []
    for i in range(n):
        j1, j2 = opposite_side(n, i)
        side = opposite_side_line(poly, i)
        d = point_line_distance(v[i], side)
        if abs(abs(d) - w) > dist_tol:
            raise NotOrdinaryReduced(
                f"vertex {i} at distance {abs(d)} from its opposite side, want {w}")
        t = foot_of_perpendicular(v[i], side)
        span = distance(v[j1], v[j2])
        s = distance(v[j1], t) / span
        off_line = distance(v[j1], t) + distance(t, v[j2]) - span
        if off_line > 1e-9 or s < interior_tol or s > 1.0 - interior_tol:
            raise NotOrdinaryReduced(
                f"foot of vertex {i} outside the relative interior "
                f"(barycentric {s:.3e}, off-line {off_line:.3e})")
        feet.append(t)

    out = []
    for i in range(n):
        k = partner(n, i)
        seg_i = GeodesicSegment(v[i], feet[i])
        seg_k = GeodesicSegment(v[k], feet[k])
        p = segment_intersection(seg_i, seg_k)
        if p is None:
            raise NotOrdinaryReduced(f"segments {i} and {k} do not cross")
        b = distance(p, feet[i])
        c = distance(p, v[k])
        phi = angle(feet[i], p, v[k])
        alpha = angle(feet[i], v[k], p)
        out.append(ButterflyData(i, v[i], feet[i], p, b, c, phi, alpha,
                                 line_through(v[i], feet[i])))
    return out


def congruence_residuals(bf: ButterflyData, bf_partner: ButterflyData):
    """How far the two triangles of a butterfly are from congruent.

    Returns [| d(p,v_i) - d(p,v_k) |, | d(p,t_i) - d(p,t_k) |, angle gap of
    the two crossing angles] for butterfly i with partner k.
    """
    p = bf.p
    r1 = abs(distance(p, bf.v) - distance(p, bf_partner.v))
    r2 = abs(distance(p, bf.t) - distance(p, bf_partner.t))
    r3 = abs(angle(bf.v, p, bf_partner.t) - angle(bf.t, p, bf_partner.v))
    return np.array([r1, r2, r3])


def butterfly_triangles(orp: OrdinaryReducedPolygon):
    """Vertex triples (as HPoints) of the 2n triangles forming the butterflies."""
    tris = []
    for bf in orp.butterflies:
        mate = orp.butterflies[partner(orp.n, bf.index)]
        tris.append((bf.v, bf.p, mate.t))
        tris.append((mate.v, bf.p, bf.t))
    return tris


def _triangle_inward_normals(tris):
    """(T,3,3) inward unit normals of each triangle's three edge lines."""
    out = np.empty((len(tris), 3, 3))
    for k, (a, b, c) in enumerate(tris):
        for e, (p, q, other) in enumerate(((a, b, c), (b, c, a), (c, a, b))):
            u = line_through(p, q).normal
            if mdot(other.coords, u) < 0.0:
                u = -u
            out[k, e] = u
    return out


def _poincare_batch_to_hyperboloid(z):
    r2 = np.einsum("ij,ij->i", z, z)
    d = 1.0 - r2
    return np.column_stack([(1.0 + r2) / d, 2.0 * z[:, 0] / d, 2.0 * z[:, 1] / d])


def sample_interior_points(poly: pg.ConvexPolygon, m, rng):
    """m points of the closed polygon, by rejection sampling uniformly (in
    disk-model coordinates) from the smallest origin-centered disk containing
    the polygon."""
    zmax = max(np.linalg.norm(to_poincare(v)) for v in poly.vertices)
    pts = np.empty((0, 3))
    while len(pts) < m:
        k = max(4 * m, 256)
        r = zmax * np.sqrt(rng.uniform(size=k))
        th = rng.uniform(0.0, 2.0 * math.pi, size=k)
        z = np.column_stack([r * np.cos(th), r * np.sin(th)])
        cand = _poincare_batch_to_hyperboloid(z)
        keep = backend.min_signed(np.ascontiguousarray(cand), poly.edge_normals) >= 0.0
        pts = np.vstack([pts, cand[keep]])
    return np.ascontiguousarray(pts[:m])


def sample_triangle_points(a: HPoint, b: HPoint, c: HPoint, m, rng):
    """m points of the closed geodesic triangle abc (uniform in Klein
    coordinates, where the triangle is Euclidean)."""
    ka, kb, kc = (pt.coords[1:] / pt.coords[0] for pt in (a, b, c))
    u = rng.uniform(size=m)
    v = rng.uniform(size=m)
    flip = u + v > 1.0
    u[flip] = 1.0 - u[flip]
    v[flip] = 1.0 - v[flip]
    z = ka + np.outer(u, kb - ka) + np.outer(v, kc - ka)
    d = np.sqrt(1.0 - np.einsum("ij,ij->i", z, z))
    return np.ascontiguousarray(np.column_stack([1.0 / d, z[:, 0] / d, z[:, 1] / d]))


def covering_check(orp: OrdinaryReducedPolygon, samples=10_000, seed=0,
                   tol=COVER_TOL, per_butterfly=1_000) -> CheckReport:
    """Monte Carlo check that the butterflies tile the polygon.

    Samples interior points and requires each to lie in some butterfly
    triangle (raising CoverageGap with the worst witness otherwise), and
    samples each butterfly to confirm it stays inside the polygon.
    """
    rng = np.random.default_rng(seed)
    report = CheckReport()

    tris = butterfly_triangles(orp)
    normals = _triangle_inward_normals(tris)
    pts = sample_interior_points(orp.polygon, samples, rng)
    covered = backend.covered_by_any(pts, normals, tol)
    misses = np.nonzero(covered == 0)[0]
    if len(misses):
        worst_pt, worst_margin = None, -math.inf
        for idx in misses[:64]:
            point = pts[idx]
            margin = max(
                min(math.asinh(mdot(point, normals[k, e])) for e in range(3))
                for k in range(len(tris)))
            if margin > worst_margin:
                worst_margin, worst_pt = margin, point
        raise CoverageGap(
            f"{len(misses)} of {samples} interior points uncovered "
            f"(worst margin {worst_margin:.3e})",
            witness=normalize_point(worst_pt), margin=worst_margin)
    report.add("butterflies_cover_polygon", True, residual=0.0, tolerance=tol,
               detail=f"{samples} points")

    worst = math.inf
    half = max(1, per_butterfly // 2)
    for k, (a, b, c) in enumerate(tris):
        inside_pts = sample_triangle_points(a, b, c, half, rng)
        margin = float(backend.min_signed(inside_pts, orp.polygon.edge_normals).min())
        worst = min(worst, margin)
    report.add("butterflies_inside_polygon", worst >= -tol,
               residual=max(0.0, -worst), tolerance=tol,
               detail=f"{half} points per triangle")
    return report


def closure_isometry(orp: OrdinaryReducedPolygon, angle_tol=1e-7, fix_tol=1e-7) -> Isometry:
    """Compose the alternating rotate/translate cycle through all butterflies.

    Follows the tiling argument: at each step an elliptic isometry about p_i
    rotates the segment line i onto the partner's line, then a hyperbolic
    isometry along that line carries p_i to the partner's crossing point.
    The full cycle must close up to the half-turn about the first crossing
    point; raises ClosureViolation otherwise.
    """
    n = orp.n
    k = (n + 1) // 2
    bfs = orp.butterflies
    total = Isometry(np.eye(3))
    i = 0
    for _ in range(n):
        j = (i + k) % n
        p_i, p_j = bfs[i].p, bfs[j].p
        u1 = tangent_toward(p_i, bfs[i].v)
        u2 = tangent_toward(p_i, bfs[j].t)
        theta = signed_angle(p_i, u1, u2)
        step = transvection(p_i, p_j) @ rotation_about(p_i, theta)
        total = step @ total
        i = j

    cls = classify(total)
    if cls.kind is not IsometryClass.ELLIPTIC:
        raise ClosureViolation(f"cycle composed to a {cls.kind.value} isometry")
    angle_gap = abs(abs(cls.angle) - math.pi)
    fix_gap = distance(cls.fixed_point, bfs[0].p)
    if angle_gap > angle_tol or fix_gap > fix_tol:
        raise ClosureViolation(
            f"cycle is elliptic but off the half-turn about p_1 "
            f"(angle gap {angle_gap:.3e}, fixed-point gap {fix_gap:.3e})")
    return total


# ---------------------------------------------------------------------------
# constructors


def _regular_vertices(n, rho):
    thetas = 2.0 * math.pi * np.arange(n) / n
    return [HPoint(np.array([math.cosh(rho),
                             math.sinh(rho) * math.cos(t),
                             math.sinh(rho) * math.sin(t)])) for t in thetas]


def _regular_vertex_side_distance(n, rho):
    v = _regular_vertices(n, rho)
    side = line_through(v[(n - 1) // 2], v[(n + 1) // 2])
    return abs(point_line_distance(v[0], side))


def regular_reduced_ngon(n, w, rho_tol=1e-13, max_iter=400) -> OrdinaryReducedPolygon:
    """Regular ordinary reduced n-gon of thickness w, centered at the base
    point with a vertex on the positive x1 axis.

    The circumradius is bisected until the vertex/opposite-side distance is
    w; that distance grows continuously from 0 with the radius, so the
    bracket always exists.
    """
    n = check_odd(n)
    if w <= 0.0:
        raise DomainError("thickness must be positive")

    lo, hi = 0.0, max(w, 1.0)
    for _ in range(200):
        if _regular_vertex_side_distance(n, hi) > w:
            break
        lo = hi
        hi *= 2.0
    else:
        raise ConvergenceFailure("could not bracket the circumradius")
    for _ in range(max_iter):
        mid = 0.5 * (lo + hi)
        if _regular_vertex_side_distance(n, mid) < w:
            lo = mid
        else:
            hi = mid
        if hi - lo <= rho_tol:
            break
    else:
        raise ConvergenceFailure(f"circumradius bisection stalled at [{lo}, {hi}]")

    rho = 0.5 * (lo + hi)
    poly = pg.ConvexPolygon(_regular_vertices(n, rho))
    return OrdinaryReducedPolygon(poly, w, tuple(extract_butterflies(poly, w)))


def _tangent_frames(points):
    """Orthonormal tangent basis (e1, e2) at each point, from Gram-Schmidt
    on the spatial coordinate axes."""
    frames = []
    ax1 = np.array([0.0, 1.0, 0.0])
    ax2 = np.array([0.0, 0.0, 1.0])
    for p in points:
        c = p.coords
        e1 = ax1 + mdot(ax1, c) * c
        e1 = e1 / math.sqrt(mdot(e1, e1))
        e2 = ax2 + mdot(ax2, c) * c
        e2 = e2 - mdot(e2, e1) * e1
        e2 = e2 / math.sqrt(mdot(e2, e2))
        frames.append((e1, e2))
    return frames


def _constraint_residuals(verts, n, w):
    """Signed vertex/opposite-side distance errors for all n vertices."""
    res = np.empty(n)
    for i in range(n):
        j1, j2 = opposite_side(n, i)
        side = line_through(verts[j1], verts[j2])
        res[i] = point_line_distance(verts[i], side) - w
    return res


def _foot_direction_angle(verts, n, ref_dir):
    """Gauge observable: angle at vertex 0 from ref_dir to its foot direction."""
    j1, j2 = opposite_side(n, 0)
    side = line_through(verts[j1], verts[j2])
    foot = foot_of_perpendicular(verts[0], side)
    return signed_angle(verts[0], ref_dir, tangent_toward(verts[0], foot))


def sample_ordinary_reduced(n, w, seed=0, amplitude=0.15,
                            max_iter=50, tol=1e-12) -> OrdinaryReducedPolygon:
    """Pseudo-random non-regular ordinary reduced polygon.

    Starts from the regular polygon, takes a random tangent step of the given
    amplitude in vertex space, and projects back onto the constraint manifold
    {d(v_i, opposite side line) = w for all i} by damped Gauss-Newton least
    squares.  The gauge (vertex 0 pinned, its foot direction pinned) removes
    the isometry freedom, so repeated runs with one seed are reproducible.
    Outputs have thickness w and crossing-angle sum strictly below pi (see
    the module note); the deficit shrinks quadratically with the amplitude.

    Raises ConvergenceFailure when the projection stalls (retry with a lower
    amplitude) and ValidationFailure when the projected polygon loses
    convexity or a foot leaves its side's relative interior.
    """
    n = check_odd(n)
    base = regular_reduced_ngon(n, w)
    verts = list(base.polygon.vertices)
    rng = np.random.default_rng(seed)

    try:
        return _project_and_build(base, verts, n, w, rng, amplitude, max_iter, tol)
    except (ValueError, DegeneratePoints) as exc:
        # wild steps can push the configuration clean out of the chart
        raise ConvergenceFailure(
            f"projection left the admissible chart ({exc}); lower the amplitude"
        ) from exc


def _project_and_build(base, verts, n, w, rng, amplitude, max_iter, tol):
    if amplitude != 0.0:
        frames = _tangent_frames(verts)
        step = amplitude * rng.standard_normal(2 * n)
        moved = [verts[0]]
        for i in range(1, n):
            e1, e2 = frames[i]
            tangent = step[2 * i] * e1 + step[2 * i + 1] * e2
            norm = math.sqrt(mdot(tangent, tangent))
            if norm == 0.0:
                moved.append(verts[i])
            else:
                moved.append(normalize_point(
                    math.cosh(norm) * verts[i].coords
                    + (math.sinh(norm) / norm) * tangent))
        verts = moved

    j1, j2 = opposite_side(n, 0)
    ref_dir = tangent_toward(
        verts[0], foot_of_perpendicular(verts[0], line_through(verts[j1], verts[j2])))

    def residual(vs):
        r = _constraint_residuals(vs, n, w)
        gauge = _foot_direction_angle(vs, n, ref_dir)
        return np.append(r, gauge)

    def displaced(vs, x):
        frames = _tangent_frames(vs[1:])
        out = [vs[0]]
        for i in range(1, n):
            e1, e2 = frames[i - 1]
            t = x[2 * (i - 1)] * e1 + x[2 * (i - 1) + 1] * e2
            nt = math.sqrt(mdot(t, t))
            if nt == 0.0:
                out.append(vs[i])
            else:
                out.append(normalize_point(
                    math.cosh(nt) * vs[i].coords + (math.sinh(nt) / nt) * t))
        return out

    fd = 1e-7
    for _ in range(max_iter):
        r = residual(verts)
        if np.abs(r[:n]).max() <= tol:
            break
        m = 2 * (n - 1)
        jac = np.empty((n + 1, m))
        for col in range(m):
            x = np.zeros(m)
            x[col] = fd
            rp = residual(displaced(verts, x))
            x[col] = -fd
            rm = residual(displaced(verts, x))
            jac[:, col] = (rp - rm) / (2.0 * fd)
        dx, *_ = np.linalg.lstsq(jac, -r, rcond=None)

        scale, base_norm = 1.0, float(np.linalg.norm(r))
        for _ in range(30):
            trial = displaced(verts, scale * dx)
            if np.linalg.norm(residual(trial)) < base_norm:
                verts = trial
                break
            scale *= 0.5
        else:
            raise ConvergenceFailure("Gauss-Newton step rejected 30 times; "
                                     "lower the amplitude")
    else:
        raise ConvergenceFailure(f"projection did not reach {tol} within {max_iter} "
                                 "iterations; lower the amplitude")

    try:
        poly = pg.ConvexPolygon(verts)
        bfs = tuple(extract_butterflies(poly, w))
        return OrdinaryReducedPolygon(poly, w, bfs)
    except (DegenerateHull, NotOrdinaryReduced) as exc:
        raise ValidationFailure(f"projected polygon rejected: {exc}") from exc


def sample_many(n, w, count, seed=0, amplitude=0.1, max_rejects=None):
    """`count` valid sampler outputs, retrying rejected draws with fresh
    sub-seeds; returns (polygons, reject_count)."""
    if max_rejects is None:
        max_rejects = 5 * count + 20
    out, rejects, sub = [], 0, 0
    while len(out) < count:
        try:
            out.append(sample_ordinary_reduced(n, w, seed=seed * 1_000_003 + sub,
                                               amplitude=amplitude))
        except (ConvergenceFailure, ValidationFailure):
            rejects += 1
            if rejects > max_rejects:
                raise
        sub += 1
    return out, rejects


# ---------------------------------------------------------------------------
# validation


def validate(poly: pg.ConvexPolygon, w, covering_samples=2048, seed=0,
             dist_tol=DIST_TOL) -> CheckReport:
    """Full per-property report on whether poly is an ordinary reduced
    polygon of thickness w; failures are report entries, never exceptions."""
    report = CheckReport()
    n = poly.n
    odd = n >= 3 and n % 2 == 1
    report.add("odd_vertex_count", odd, detail=f"n = {n}")
    if not odd:
        return report

    dists = np.array([abs(point_line_distance(poly.vertices[i], opposite_side_line(poly, i)))
                      for i in range(n)])
    report.add("vertex_side_distance", np.abs(dists - w).max() <= dist_tol,
               residual=float(np.abs(dists - w).max()), tolerance=dist_tol)

    try:
        bfs = extract_butterflies(poly, w, dist_tol=dist_tol)
    except (NotOrdinaryReduced, InvalidN) as exc:
        report.add("butterfly_extraction", False, detail=str(exc))
        return report
    report.add("butterfly_extraction", True)

    margins = []
    for i in range(n):
        j1, j2 = opposite_side(n, i)
        span = distance(poly.vertices[j1], poly.vertices[j2])
        s = distance(poly.vertices[j1], bfs[i].t) / span
        margins.append(min(s, 1.0 - s))
    report.add("foot_in_relative_interior", min(margins) >= INTERIOR_TOL,
               residual=float(min(margins)), tolerance=INTERIOR_TOL)

    deficit = math.pi - sum(bf.phi for bf in bfs)
    report.add("crossing_angle_sum_at_most_pi", deficit >= -PHI_SUM_TOL,
               residual=deficit, tolerance=PHI_SUM_TOL,
               detail="deficit pi - sum(phi); 0 iff regular")

    split = max(abs(bf.c - (w - bf.b)) for bf in bfs)
    report.add("leg_hypotenuse_split", split <= 1e-9, residual=split, tolerance=1e-9)

    rel = max(abs(math.cos(bf.phi) * math.tanh(bf.c) - math.tanh(bf.b)) for bf in bfs)
    report.add("crossing_angle_relation", rel <= 1e-8, residual=rel, tolerance=1e-8)

    cong = max(congruence_residuals(bfs[i], bfs[partner(n, i)]).max() for i in range(n))
    report.add("butterfly_congruence", cong <= 1e-8, residual=cong, tolerance=1e-8)

    thick, _ = pg.thickness(poly)
    report.add("thickness_equals_w", abs(thick - w) <= dist_tol,
               residual=abs(thick - w), tolerance=dist_tol)

    diam = pg.diameter(poly)
    bound = diameter_bound(w)
    report.add("diameter_window", w < diam < bound,
               residual=diam, detail=f"window ({w}, {bound:.6f})")

    area_geo = pg.gauss_bonnet_area(poly)
    area_tri = pg.triangulation_area(poly)
    try:
        area_phi = area_from_crossing_angles(w, [bf.phi for bf in bfs])
        spread = max(abs(area_geo - area_tri), abs(area_geo - area_phi),
                     abs(area_tri - area_phi)) / abs(area_geo)
        report.add("area_three_ways", spread <= 1e-8, residual=spread, tolerance=1e-8)
    except DomainError as exc:
        report.add("area_three_ways", False, detail=str(exc))

    if covering_samples > 0:
        try:
            orp = OrdinaryReducedPolygon(poly, w, tuple(bfs))
            cov = covering_check(orp, samples=covering_samples, seed=seed)
            report.checks.extend(cov.checks)
        except (CoverageGap, ValidationFailure) as exc:
            report.add("butterflies_cover_polygon", False, detail=str(exc))
    return report
