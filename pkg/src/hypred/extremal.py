"""Extremality and monotonicity verification.

The formula-level side of the theory: maximizing the area functional
(n-2) pi - 2 sum(alpha_of_crossing(phi_i)) over the full constrained simplex
{phi in [eps, pi/2-eps]^n, sum phi = pi} (a superset of the angle vectors
realized by actual polygons), the growth of the regular n-gon area in n with
its circle-area limit, and the monotonicity analysis of the area ratio.
"""

import math
from dataclasses import dataclass

import numpy as np

from .errors import ConvergenceFailure, InvalidN
from .kernels import (alpha_of_crossing, alpha_of_crossing_deriv,
                      alpha_of_crossing_second, area_ratio, area_ratio_margin,
                      area_ratio_margin_deriv, area_ratio_margin_second,
                      circle_limit_area, kernel_params, quarter_disk_area,
                      regular_ngon_area)
from .reduced import CrossingAngles, sample_many
from .report import CheckReport

BOX_EPS = 1e-6  # keeps iterates inside the kernels' open domains


@dataclass(frozen=True)
class OptimizationResult:
    argmax: CrossingAngles
    max_value: float
    iterations: int
    first_order_residual: float
    distance_to_uniform: float
    used_fallback: bool = False

    def __post_init__(self):
        if abs(self.argmax.values.sum() - math.pi) > 1e-12:
            raise ValueError("argmax does not satisfy the angle-sum constraint")


def project_to_constrained_simplex(y, lo=BOX_EPS, hi=math.pi / 2.0 - BOX_EPS):
    """Euclidean projection onto {x : sum x = pi, lo <= x_i <= hi}.

    Shift-and-clip: x(lam) = clip(y - lam) has decreasing sum; the correct
    multiplier is found by bisection to machine resolution.
    """
    y = np.asarray(y, dtype=float)
    n = len(y)
    if not (n * lo <= math.pi <= n * hi):
        raise ValueError("constrained simplex is empty for these bounds")
    a, b = float(y.max()) - lo, float(y.min()) - hi

    def total(lam):
        return np.clip(y - lam, lo, hi).sum()

    lo_l, hi_l = min(a, b), max(a, b)
    for _ in range(200):
        mid = 0.5 * (lo_l + hi_l)
        if mid <= lo_l or mid >= hi_l:
            break
        if total(mid) > math.pi:
            lo_l = mid
        else:
            hi_l = mid
    x = np.clip(y - 0.5 * (lo_l + hi_l), lo, hi)
    # absorb the last-ulp sum error into an interior coordinate
    gap = math.pi - x.sum()
    k = int(np.argmax(np.minimum(x - lo, hi - x)))
    x[k] += gap
    return x


def maximize_area(w, n, tol=1e-10, max_iter=5000, seed=None, start=None) -> OptimizationResult:
    """Maximize the area formula over the constrained angle simplex.

    Projected gradient with backtracking line search on the equivalent
    problem of minimizing sum(alpha_of_crossing(phi_i)); falls back to
    Nelder-Mead (with the sum constraint eliminated) on stall.  The theory
    says the unique maximizer is the uniform vector.
    """
    if n != int(n) or n < 3 or n % 2 == 0:
        raise InvalidN(f"need an odd integer >= 3, got {n}")
    kp = kernel_params(w)
    uniform = np.full(n, math.pi / n)

    if start is not None:
        phi = project_to_constrained_simplex(np.asarray(start, dtype=float))
    elif seed is not None:
        rng = np.random.default_rng(seed)
        phi = project_to_constrained_simplex(
            rng.uniform(BOX_EPS, math.pi / 2.0 - BOX_EPS, n))
    else:
        phi = uniform.copy()

    def objective(x):
        return sum(alpha_of_crossing(kp, v) for v in x)

    def gradient(x):
        return np.array([alpha_of_crossing_deriv(kp, v) for v in x])

    lo, hi = BOX_EPS, math.pi / 2.0 - BOX_EPS
    f_cur = objective(phi)
    step0 = 1.0
    residual = math.inf
    used_fallback = False
    it = 0
    for it in range(1, max_iter + 1):
        g = gradient(phi)
        trial_full = project_to_constrained_simplex(phi - g)
        residual = float(np.abs(trial_full - phi).max())
        if residual <= tol:
            break

        moved = False
        if phi.min() > lo + 1e-9 and phi.max() < hi - 1e-9:
            # interior: equality-constrained Newton step on the separable
            # objective (diagonal Hessian), quadratic near the optimum
            h2 = np.array([alpha_of_crossing_second(kp, v) for v in phi])
            lam = float(np.sum(g / h2) / np.sum(1.0 / h2))
            d = -(g - lam) / h2
            t = 1.0
            for _ in range(40):
                cand = project_to_constrained_simplex(phi + t * d)
                f_cand = objective(cand)
                if f_cand <= f_cur + 1e-15:
                    phi, f_cur = cand, f_cand
                    moved = True
                    break
                t *= 0.5
        if not moved:
            step = step0
            for _ in range(60):
                cand = project_to_constrained_simplex(phi - step * g)
                f_cand = objective(cand)
                decrease = f_cur - f_cand
                needed = 1e-4 / max(step, 1e-16) * float(np.sum((cand - phi) ** 2))
                if decrease >= needed and f_cand < f_cur:
                    phi, f_cur = cand, f_cand
                    step0 = min(1.0, step * 2.0)
                    moved = True
                    break
                step *= 0.5
        if not moved:
            used_fallback = True
            phi, f_cur = _nelder_mead_fallback(kp, n, phi)
            trial_full = project_to_constrained_simplex(phi - gradient(phi))
            residual = float(np.abs(trial_full - phi).max())
            break
    else:
        raise ConvergenceFailure(
            f"projected gradient: residual {residual:.3e} > {tol} "
            f"after {max_iter} iterations")

    value = (n - 2) * math.pi - 2.0 * f_cur
    return OptimizationResult(
        argmax=CrossingAngles(phi),
        max_value=value,
        iterations=it,
        first_order_residual=residual,
        distance_to_uniform=float(np.abs(phi - uniform).max()),
        used_fallback=used_fallback)


def _nelder_mead_fallback(kp, n, phi):
    """Derivative-free polish with the sum constraint eliminated."""
    from scipy.optimize import minimize

    lo, hi = BOX_EPS, math.pi / 2.0 - BOX_EPS

    def packed(x):
        last = math.pi - x.sum()
        full = np.append(x, last)
        if full.min() < lo or full.max() > hi:
            return 1e6 + float(np.sum(np.maximum(lo - full, 0.0)
                                      + np.maximum(full - hi, 0.0)))
        return sum(alpha_of_crossing(kp, v) for v in full)

    res = minimize(packed, phi[:-1], method="Nelder-Mead",
                   options={"xatol": 1e-12, "fatol": 1e-14, "maxiter": 20000})
    full = project_to_constrained_simplex(np.append(res.x, math.pi - res.x.sum()))
    return full, sum(alpha_of_crossing(kp, v) for v in full)


def convexity_scan(ws=(0.2, 0.5, 1.0, 2.0, 4.0), n_x=500,
                   x_lo=0.05, x_hi=math.pi / 2.0 - 0.05, fd_step=3e-4) -> CheckReport:
    """Confirm the vertex-angle kernel's convexity in the crossing angle.

    Checks the authoritative second derivative and plain second central
    differences of the kernel itself at every grid point, and records their
    relative agreement (two independent numerical routes).
    """
    report = CheckReport()
    xs = np.linspace(x_lo, x_hi, n_x)
    for w in ws:
        kp = kernel_params(w)
        second = np.array([alpha_of_crossing_second(kp, x) for x in xs])
        fd = np.array([
            (alpha_of_crossing(kp, x + fd_step) - 2.0 * alpha_of_crossing(kp, x)
             + alpha_of_crossing(kp, x - fd_step)) / fd_step ** 2 for x in xs])
        # scale-relative: pointwise division is meaningless where the second
        # derivative itself sits below the h^-2-amplified roundoff floor
        rel = float(np.abs(second - fd).max() / np.abs(second).max())
        report.add(f"second_deriv_positive_w={w}", bool(second.min() > 0.0),
                   residual=float(second.min()),
                   detail=f"min margin over {n_x} points")
        report.add(f"second_differences_positive_w={w}", bool(fd.min() > 0.0),
                   residual=float(fd.min()))
        report.add(f"route_agreement_w={w}", rel <= 1e-5,
                   residual=rel, tolerance=1e-5,
                   detail="sup-norm relative over the grid")
    return report


@dataclass(frozen=True)
class MonotonicityTable:
    """Areas of regular reduced n-gons of one thickness, with circle gaps."""

    w: float
    rows: tuple  # (n, area, gap to the circle limit)

    def __post_init__(self):
        ns = [r[0] for r in self.rows]
        areas = [r[1] for r in self.rows]
        gaps = [r[2] for r in self.rows]
        if any(n % 2 == 0 for n in ns) or sorted(ns) != ns:
            raise ValueError("rows must be ascending odd n")
        if any(a2 <= a1 for a1, a2 in zip(areas, areas[1:])):
            raise ValueError("areas must be strictly increasing")
        if any(g <= 0.0 for g in gaps):
            raise ValueError("circle gaps must be strictly positive")
        if any(g2 >= g1 for g1, g2 in zip(gaps, gaps[1:])):
            raise ValueError("circle gaps must be strictly decreasing")

    def to_csv(self) -> str:
        lines = ["n,area,circle_gap"]
        for n, area, gap in self.rows:
            lines.append(f"{n},{area:.15g},{gap:.15g}")
        return "\n".join(lines) + "\n"


def monotonicity_table(w, n_max) -> MonotonicityTable:
    """Rows (n, area, circle gap) for n = 3, 5, ..., n_max; the constructor
    enforces strict growth toward the circle limit."""
    if n_max % 2 == 0 or n_max < 3:
        raise InvalidN("n_max must be odd and >= 3")
    kp = kernel_params(w)
    limit = circle_limit_area(w)
    rows = []
    for n in range(3, n_max + 1, 2):
        area = regular_ngon_area(kp, n)
        rows.append((n, area, limit - area))
    return MonotonicityTable(w, tuple(rows))


def area_ratio_report(ws=(0.25, 0.5, 1.0, 2.0, 4.0), n_x=500) -> CheckReport:
    """Monotonicity analysis of the area ratio on (0, tanh(w/2)).

    Per thickness: the ratio increases on the sampled grid; the margin and
    its derivative vanish at the right endpoint; the numeric second
    derivative is positive; the margin's sign matches the ratio's numeric
    slope; the cubic x^3 - 3x + 2 tanh(w) stays positive.  The gap between
    the numeric and closed second-derivative forms is recorded, not
    asserted (the closed form is the suspect one).
    """
    report = CheckReport()
    for w in ws:
        kp = kernel_params(w)
        u = kp.leg_tanh_max
        xs = np.linspace(u * 1e-3, u * (1.0 - 1e-3), n_x)

        ratio = np.array([area_ratio(kp, x) for x in xs])
        report.add(f"ratio_increasing_w={w}", bool(np.diff(ratio).min() > 0.0),
                   residual=float(np.diff(ratio).min()))

        end_margin = area_ratio_margin(kp, u)
        end_deriv = area_ratio_margin_deriv(kp, u)
        report.add(f"margin_vanishes_at_endpoint_w={w}", abs(end_margin) <= 1e-9,
                   residual=abs(end_margin), tolerance=1e-9)
        report.add(f"margin_deriv_vanishes_at_endpoint_w={w}", abs(end_deriv) <= 1e-9,
                   residual=abs(end_deriv), tolerance=1e-9)

        pairs = [area_ratio_margin_second(kp, x) for x in xs]
        numeric = np.array([p.numeric for p in pairs])
        closed = np.array([p.closed for p in pairs])
        report.add(f"margin_second_positive_w={w}", bool(numeric.min() > 0.0),
                   residual=float(numeric.min()))

        margin = np.array([area_ratio_margin(kp, x) for x in xs])
        h = np.minimum(1e-7, np.minimum(xs, u - xs) / 4.0)
        slope = np.array([
            (area_ratio(kp, x + hh) - area_ratio(kp, x - hh)) / (2.0 * hh)
            for x, hh in zip(xs, h)])
        meaningful = np.abs(margin) > 1e-10
        agree = np.sign(margin[meaningful]) == np.sign(slope[meaningful])
        report.add(f"margin_sign_matches_slope_w={w}", bool(agree.all()),
                   detail=f"{int(agree.sum())}/{int(meaningful.sum())} grid points")

        cubic = xs ** 3 - 3.0 * xs + 2.0 * kp.t
        report.add(f"cubic_positive_w={w}", bool(cubic.min() > 0.0),
                   residual=float(cubic.min()))

        finite = np.isfinite(closed)
        gap = float(np.abs(closed[finite] - numeric[finite]).max()) if finite.any() else math.nan
        report.add(f"closed_form_discrepancy_w={w}", True, residual=gap,
                   detail=f"recorded only; {int((~finite).sum())} grid points "
                          "where the closed radicand is negative")
    return report


def empirical_extremality(w, n, samples=100, seed=0, amplitude=0.08) -> CheckReport:
    """Measure sampled non-regular polygons against the regular area.

    Every sampled area must stay below the regular one (strictly so whenever
    the crossing angles are visibly non-uniform).
    """
    kp = kernel_params(w)
    regular = regular_ngon_area(kp, n)
    polys, rejects = sample_many(n, w, samples, seed=seed, amplitude=amplitude)

    from .polygon import gauss_bonnet_area

    report = CheckReport()
    worst_gap = math.inf
    strict_ok = True
    for orp in polys:
        area = gauss_bonnet_area(orp.polygon)
        gap = regular - area
        worst_gap = min(worst_gap, gap)
        nonuniform = float(np.abs(orp.phis - math.pi / n).max()) > 1e-6
        if area > regular + 1e-9 or (nonuniform and not gap > 0.0):
            strict_ok = False
    report.add("sampled_areas_below_regular", strict_ok and worst_gap > -1e-9,
               residual=worst_gap, tolerance=1e-9,
               detail=f"{len(polys)} samples, {rejects} rejected draws; "
                      "residual is the smallest area gap")
    return report


def circle_vs_quarter_report(ws=(0.1, 1.0, 3.0)) -> CheckReport:
    """The quarter disk (also reduced) beats the circle of equal thickness."""
    report = CheckReport()
    for w in ws:
        c, q = circle_limit_area(w), quarter_disk_area(w)
        report.add(f"quarter_disk_beats_circle_w={w}", q > c, residual=q - c)
    return report
