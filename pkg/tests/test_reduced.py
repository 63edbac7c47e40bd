import math

import numpy as np
import pytest

from hypred import geometry as G
from hypred import kernels as K
from hypred import polygon as P
from hypred import reduced as R
from hypred.errors import (CoverageGap, InvalidN, NotOrdinaryReduced,
                           ValidationFailure)


@pytest.fixture(scope="module")
def heptagon():
    return R.regular_reduced_ngon(7, 1.0)


@pytest.fixture(scope="module")
def sampled7():
    return R.sample_ordinary_reduced(7, 1.0, seed=42, amplitude=0.1)


class TestIndexing:
    @pytest.mark.parametrize("n", (3, 5, 7, 9, 11, 101))
    def test_partner_cycle_visits_all(self, n):
        k, seen, i = (n + 1) // 2, set(), 0
        for _ in range(n):
            seen.add(i)
            i = (i + k) % n
        assert len(seen) == n and i == 0

    def test_opposite_side_is_edge(self, heptagon):
        n = heptagon.n
        for i in range(n):
            j1, j2 = R.opposite_side(n, i)
            assert (j1 + 1) % n == j2

    def test_check_odd(self):
        for bad in (4, 2, 1, 0, -5):
            with pytest.raises(InvalidN):
                R.check_odd(bad)


class TestRegularConstruction:
    def test_crossing_angles_are_pi_over_n(self, heptagon):
        assert np.abs(heptagon.phis - math.pi / 7.0).max() <= 1e-9
        assert heptagon.phi_deficit == pytest.approx(0.0, abs=1e-9)

    def test_area_matches_formula(self, heptagon):
        kp = K.kernel_params(1.0)
        assert P.gauss_bonnet_area(heptagon.polygon) == pytest.approx(
            K.regular_ngon_area(kp, 7), abs=1e-9)

    def test_thickness_is_w(self, heptagon):
        val, _ = P.thickness(heptagon.polygon)
        assert val == pytest.approx(1.0, abs=1e-7)

    def test_vertex_side_distances(self, heptagon):
        poly = heptagon.polygon
        for i in range(poly.n):
            d = G.point_line_distance(poly.vertices[i], R.opposite_side_line(poly, i))
            assert abs(d) == pytest.approx(1.0, abs=1e-12)

    @pytest.mark.parametrize("n,w", ((3, 0.2), (5, 2.0), (15, 0.5), (9, 5.0)))
    def test_other_sizes(self, n, w):
        orp = R.regular_reduced_ngon(n, w)
        assert np.abs(orp.phis - math.pi / n).max() <= 1e-9

    def test_invalid_args(self):
        with pytest.raises(InvalidN):
            R.regular_reduced_ngon(4, 1.0)
        from hypred.errors import DomainError

        with pytest.raises(DomainError):
            R.regular_reduced_ngon(5, -1.0)


class TestExtraction:
    def test_regular_five_gon_symmetry(self):
        orp = R.regular_reduced_ngon(5, 1.0)
        bs = [bf.b for bf in orp.butterflies]
        assert max(bs) - min(bs) <= 1e-12
        assert np.abs(orp.phis - math.pi / 5.0).max() <= 1e-9

    def test_wrong_distance_rejected(self, heptagon):
        with pytest.raises(NotOrdinaryReduced):
            R.extract_butterflies(heptagon.polygon, 1.1)

    def test_even_n_rejected(self):
        pts = [G.from_poincare(0.5 * np.array([math.cos(t), math.sin(t)]))
               for t in np.linspace(0.0, 2.0 * math.pi, 6, endpoint=False)]
        square = P.make_polygon(pts)
        with pytest.raises(InvalidN):
            R.extract_butterflies(square, 1.0)

    def test_leg_split_and_crossing_relation(self, sampled7):
        for bf in sampled7.butterflies:
            assert abs(bf.c - (sampled7.w - bf.b)) <= 1e-9
            assert abs(math.cos(bf.phi) - math.tanh(bf.b) / math.tanh(bf.c)) <= 1e-8
            assert bf.alpha == pytest.approx(
                K.alpha_of_crossing(K.kernel_params(sampled7.w), bf.phi), abs=1e-10)

    def test_crossing_point_on_both_segments(self, sampled7):
        n = sampled7.n
        for bf in sampled7.butterflies:
            mate = sampled7.butterflies[R.partner(n, bf.index)]
            for a, b in ((bf.v, bf.t), (mate.v, mate.t)):
                gap = (G.distance(a, bf.p) + G.distance(bf.p, b) - G.distance(a, b))
                assert abs(gap) <= 1e-10


class TestSampler:
    def test_amplitude_zero_returns_regular(self, heptagon):
        orp = R.sample_ordinary_reduced(7, 1.0, seed=5, amplitude=0.0)
        for a, b in zip(orp.polygon.vertices, heptagon.polygon.vertices):
            assert G.distance(a, b) <= 1e-12

    def test_seed_determinism(self):
        a = R.sample_ordinary_reduced(7, 1.0, seed=11, amplitude=0.05)
        b = R.sample_ordinary_reduced(7, 1.0, seed=11, amplitude=0.05)
        for va, vb in zip(a.polygon.vertices, b.polygon.vertices):
            assert G.distance(va, vb) == 0.0

    def test_constraints_satisfied(self, sampled7):
        poly = sampled7.polygon
        for i in range(poly.n):
            d = G.point_line_distance(poly.vertices[i], R.opposite_side_line(poly, i))
            assert abs(abs(d) - 1.0) <= 1e-11

    def test_thickness_preserved(self, sampled7):
        val, _ = P.thickness(sampled7.polygon)
        assert val == pytest.approx(1.0, abs=1e-7)

    def test_genuinely_non_regular(self, sampled7):
        assert np.abs(sampled7.phis - math.pi / 7.0).max() > 1e-3

    def test_phi_sum_strictly_below_pi(self, sampled7):
        assert 0.0 < sampled7.phi_deficit < 1e-2

    def test_phi_deficit_shrinks_with_amplitude(self):
        deficits = [R.sample_ordinary_reduced(7, 1.0, seed=1, amplitude=a).phi_deficit
                    for a in (0.08, 0.04, 0.02)]
        assert deficits[0] > deficits[1] > deficits[2] > 0.0
        # roughly quadratic: each halving cuts the deficit by ~4
        assert deficits[0] / deficits[1] > 2.5
        assert deficits[1] / deficits[2] > 2.5

    def test_constraint_jacobian_rank(self, heptagon):
        # numerical Jacobian of the n distance constraints over all 2n
        # tangent coordinates at the regular configuration
        n, w = 7, 1.0
        verts = list(heptagon.polygon.vertices)
        frames = R._tangent_frames(verts)
        fd = 1e-6

        def constraints(vs):
            return R._constraint_residuals(vs, n, w)

        jac = np.empty((n, 2 * n))
        for i in range(n):
            for axis in range(2):
                col = 2 * i + axis
                basis = frames[i][axis]
                for sgn, store in ((1.0, "p"), (-1.0, "m")):
                    moved = list(verts)
                    moved[i] = G.exp_map(verts[i], sgn * fd * basis)
                    if sgn > 0:
                        rp = constraints(moved)
                    else:
                        rm = constraints(moved)
                jac[:, col] = (rp - rm) / (2.0 * fd)

        svals = np.linalg.svd(jac, compute_uv=False)
        assert (svals > 1e-8).sum() == n  # full row rank
        # the isometry generators lie in the constraint nullspace, so the
        # quotient manifold has dimension 2n - n - 3 after gauge fixing
        assert 2 * n - n - 3 == n - 3

        gens = []
        for gen_iso in (G.rotation_about(G.BASE_POINT, 1e-6),
                        G.translation_along(G.line_through(
                            G.BASE_POINT, G.hpoint(math.cosh(1), math.sinh(1), 0)), 1e-6),
                        G.translation_along(G.line_through(
                            G.BASE_POINT, G.hpoint(math.cosh(1), 0, math.sinh(1))), 1e-6)):
            vec = np.empty(2 * n)
            for i in range(n):
                delta = gen_iso.apply(verts[i]).coords - verts[i].coords
                vec[2 * i] = G.mdot(delta, frames[i][0])
                vec[2 * i + 1] = G.mdot(delta, frames[i][1])
            gens.append(vec / 1e-6)
        for vec in gens:
            assert np.linalg.norm(jac @ vec) <= 1e-4 * np.linalg.norm(vec)

    def test_too_wild_amplitude_rejected(self):
        with pytest.raises((ValidationFailure, Exception)):
            R.sample_ordinary_reduced(7, 1.0, seed=0, amplitude=0.45)


class TestCongruence:
    def test_regular_exact(self, heptagon):
        n = heptagon.n
        for i in range(n):
            res = R.congruence_residuals(heptagon.butterflies[i],
                                         heptagon.butterflies[R.partner(n, i)])
            assert res.max() <= 1e-10

    def test_sampled_nine_gons(self):
        polys, _ = R.sample_many(9, 1.0, 20, seed=7, amplitude=0.04)
        worst = 0.0
        for orp in polys:
            for i in range(orp.n):
                res = R.congruence_residuals(orp.butterflies[i],
                                             orp.butterflies[R.partner(orp.n, i)])
                worst = max(worst, float(res.max()))
        assert worst <= 1e-8

    def test_triangle_areas_equal(self, sampled7):
        n = sampled7.n
        for bf in sampled7.butterflies:
            mate = sampled7.butterflies[R.partner(n, bf.index)]
            t1 = (math.pi - G.angle(bf.p, bf.v, mate.t) - G.angle(bf.v, bf.p, mate.t)
                  - G.angle(bf.v, mate.t, bf.p))
            t2 = (math.pi - G.angle(bf.p, mate.v, bf.t) - G.angle(mate.v, bf.p, bf.t)
                  - G.angle(mate.v, bf.t, bf.p))
            assert abs(t1 - t2) <= 1e-9


class TestCovering:
    def test_regular_triangle_full_coverage(self):
        orp = R.regular_reduced_ngon(3, 1.0)
        report = R.covering_check(orp, samples=10_000, seed=2)
        assert report.passed

    def test_point_outside_consistency(self, heptagon):
        outside = G.hpoint(math.cosh(4.0), math.sinh(4.0), 0.0)
        tris = R.butterfly_triangles(heptagon)
        normals = R._triangle_inward_normals(tris)
        from hypred import _backend

        covered = _backend.covered_by_any(outside.coords.reshape(1, 3), normals, 1e-9)
        assert covered[0] == 0
        assert not P.contains(heptagon.polygon, outside)

    def test_sampled_instance_coverage(self, sampled7):
        assert R.covering_check(sampled7, samples=10_000, seed=3).passed

    def test_gap_detection_on_wrong_butterflies(self, heptagon, sampled7):
        # mismatched butterflies must leave visible gaps
        fake = R.OrdinaryReducedPolygon(sampled7.polygon, sampled7.w,
                                        heptagon.butterflies)
        with pytest.raises(CoverageGap) as err:
            R.covering_check(fake, samples=4000, seed=1)
        assert err.value.witness is not None


class TestClosure:
    def test_regular_five_gon(self):
        orp = R.regular_reduced_ngon(5, 1.0)
        iso = R.closure_isometry(orp)
        cls = G.classify(iso)
        assert cls.kind is G.IsometryClass.ELLIPTIC
        assert abs(abs(cls.angle) - math.pi) <= 1e-7
        assert G.distance(cls.fixed_point, orp.butterflies[0].p) <= 1e-7

    def test_half_turn_squares_to_identity(self, sampled7):
        iso = R.closure_isometry(sampled7)
        twice = iso @ iso
        assert np.abs(twice.matrix - np.eye(3)).max() <= 1e-6

    def test_sampled_sweep(self):
        polys, _ = R.sample_many(7, 1.0, 10, seed=19, amplitude=0.06)
        for orp in polys:
            R.closure_isometry(orp)  # raises on violation


class TestAreaFormula:
    def test_uniform_matches_regular(self):
        kp = K.kernel_params(1.0)
        val = R.area_from_crossing_angles(1.0, np.full(7, math.pi / 7.0))
        assert val == pytest.approx(K.regular_ngon_area(kp, 7), abs=1e-12)

    def test_extracted_angles_reproduce_geometric_area(self, sampled7):
        a_phi = R.area_from_crossing_angles(1.0, sampled7.phis)
        a_geo = P.gauss_bonnet_area(sampled7.polygon)
        assert a_phi == pytest.approx(a_geo, rel=1e-8)

    def test_formula_jensen_bound(self, rng):
        kp = K.kernel_params(1.0)
        regular = K.regular_ngon_area(kp, 7)
        for _ in range(30):
            raw = rng.uniform(0.2, 1.0, 7)
            phis = raw * (math.pi / raw.sum())
            if phis.max() >= math.pi / 2.0 - 1e-3:
                continue
            assert R.area_from_crossing_angles(1.0, phis) <= regular + 1e-12

    def test_interior_angle_sum_is_twice_alpha_sum(self, sampled7):
        lhs = float(sampled7.polygon.interior_angles.sum())
        rhs = 2.0 * sum(bf.alpha for bf in sampled7.butterflies)
        assert abs(lhs - rhs) <= 1e-8

    def test_rejects_bad_angles(self):
        from hypred.errors import DomainError

        with pytest.raises(DomainError):
            R.area_from_crossing_angles(1.0, [0.5, -0.1, 0.6])


class TestCrossingAngles:
    def test_valid(self):
        ca = R.CrossingAngles(np.full(5, math.pi / 5.0))
        assert len(ca) == 5

    def test_sum_enforced(self):
        with pytest.raises(ValueError):
            R.CrossingAngles(np.full(5, math.pi / 5.0 + 1e-3))

    def test_normalized(self):
        ca = R.CrossingAngles.normalized(np.full(5, math.pi / 5.0 + 1e-8))
        assert abs(float(ca.values.sum()) - math.pi) <= 1e-12

    def test_range_enforced(self):
        bad = np.array([1.6, 0.5, math.pi - 2.1])
        with pytest.raises(ValueError):
            R.CrossingAngles(bad)


class TestValidate:
    def test_regular_all_pass(self, heptagon):
        report = R.validate(heptagon.polygon, 1.0, covering_samples=2000)
        assert report.passed

    def test_pushed_vertex_fails_with_matching_residual(self, heptagon):
        verts = list(heptagon.polygon.vertices)
        push = 1e-3
        v0 = verts[0]
        away = G.tangent_toward(v0, G.BASE_POINT)
        verts[0] = G.exp_map(v0, -push * away)
        poly = P.ConvexPolygon(verts)
        report = R.validate(poly, 1.0, covering_samples=0)
        assert not report.passed
        assert not report["vertex_side_distance"].passed
        assert report["vertex_side_distance"].residual == pytest.approx(push, rel=0.05)

    def test_even_polygon_fails_immediately(self):
        pts = [G.from_poincare(0.5 * np.array([math.cos(t), math.sin(t)]))
               for t in np.linspace(0.0, 2.0 * math.pi, 4, endpoint=False)]
        report = R.validate(P.make_polygon(pts), 1.0)
        assert not report.passed
        assert not report["odd_vertex_count"].passed

    def test_diameter_window(self, sampled7):
        d = P.diameter(sampled7.polygon)
        assert 1.0 < d < K.diameter_bound(1.0)

    def test_reducedness_spot_check(self, sampled7):
        poly = sampled7.polygon
        for j in range(poly.n):
            rest = [v for i, v in enumerate(poly.vertices) if i != j]
            sub, _ = P.thickness(P.make_polygon(rest), samples_per_cone=128)
            assert sub < sampled7.w - 1e-9
