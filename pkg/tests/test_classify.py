import json
import math

import pytest
from hypothesis import given, settings, strategies as st

from cmcomplex import SimplicialComplex, join, mask_of
from cmcomplex.classify import (RouteDisagreement, bicm_bool, bicm_module_route, cm_bool,
                                cm_codim_route, cm_cohomology_route, cm_link_route,
                                conjecture_scan, is_ab_design, is_bicm, is_buchsbaum, is_cm,
                                is_conjecture_candidate, is_gorenstein_star, is_lcm,
                                is_lcm_design, is_orientable_homology_manifold, lcm_level,
                                submaximal_d_checks, classify)
from cmcomplex.complex import full_mask
from cmcomplex.enriched import girth
from cmcomplex.generators import (all_complexes, cycle, cyclic_polytope_boundary, fano,
                                  labeled_trees, path, points, rp2_six, simplex,
                                  simplex_skeleton, torus_seven)
from cmcomplex.linalg import GF2, QQ, FieldSpec

from conftest import complexes, face_sets
from oracles import brute_is_cm

TWO_EDGES = SimplicialComplex.from_facets(4, [(1, 2), (3, 4)])
BOWTIE = SimplicialComplex.from_facets(5, [(1, 2, 3), (3, 4, 5)])


class TestCM:
    @pytest.mark.parametrize("tree", list(labeled_trees(5))[:20], ids=repr)
    def test_trees(self, tree):
        assert is_cm(tree)

    def test_two_edges_witness(self):
        v = is_cm(TWO_EDGES)
        assert not v
        assert (v.witness, v.degree) == (0, 0)
        assert v.witness_json()["R"] == []

    def test_torus_over_q(self):
        v = is_cm(torus_seven())
        assert not v and v.witness == 0 and v.degree == 1

    def test_void_rejected(self):
        with pytest.raises(ValueError):
            is_cm(SimplicialComplex.void(3))

    def test_empty_simplex(self):
        assert is_cm(SimplicialComplex.empty_simplex(2))

    @given(complexes(max_n=6), st.sampled_from([QQ, GF2]))
    def test_matches_brute_force(self, cx, field):
        assert cm_bool(cx, field) == brute_is_cm(face_sets(cx), None if field == QQ else 2)


class TestLCM:
    @pytest.mark.parametrize("n", [3, 4, 5, 6, 7])
    def test_cycle_level_two(self, n):
        assert lcm_level(cycle(n)) == 2

    @pytest.mark.parametrize("n,l", [(4, 1), (4, 2), (5, 2), (5, 3), (6, 2), (6, 3), (6, 4)])
    def test_skeleton(self, n, l):
        assert is_lcm(simplex_skeleton(n, n - l - 1), l)

    def test_skeleton_level(self):
        # the (k)-skeleton on n vertices has level n - k - 1
        assert lcm_level(simplex_skeleton(6, 4)) == 2
        assert lcm_level(simplex_skeleton(6, 1)) == 5

    def test_tree_level_one(self):
        for tree in labeled_trees(5):
            assert lcm_level(tree) == 1

    def test_empty_simplex_level(self):
        e = SimplicialComplex.empty_simplex(3)
        assert lcm_level(e) == math.inf
        assert lcm_level(e, max_l=4) == 4

    def test_bad_l(self):
        with pytest.raises(ValueError):
            is_lcm(cycle(4), 0)

    def test_witness_of_cut_vertex(self):
        v = is_lcm(path(3), 2)
        assert not v and v.witness == mask_of([2])


class TestBuchsbaum:
    def test_torus(self):
        assert is_buchsbaum(torus_seven())

    def test_rp2_gf2(self):
        assert is_buchsbaum(rp2_six(), GF2)

    def test_bowtie(self):
        v = is_buchsbaum(BOWTIE)
        assert not v and v.witness == mask_of([3]) and v.degree == 0

    def test_cm_implies_buchsbaum_on_disconnected_points(self):
        # zero-dimensional complexes are always Buchsbaum
        assert is_buchsbaum(points(4))
        assert not is_cm(TWO_EDGES) and is_buchsbaum(TWO_EDGES)


class TestGorenstein:
    @pytest.mark.parametrize("n", [3, 4, 6])
    def test_cycle(self, n):
        assert is_gorenstein_star(cycle(n))

    @pytest.mark.parametrize("n", [2, 3, 4, 5])
    def test_simplex_boundary(self, n):
        assert is_gorenstein_star(simplex_skeleton(n, n - 2))

    def test_tree(self):
        assert not is_gorenstein_star(path(3))

    def test_cone_rejected(self):
        assert not is_gorenstein_star(simplex(3))

    def test_two_points(self):
        assert is_gorenstein_star(points(2))
        assert not is_gorenstein_star(points(3))


class TestManifold:
    def test_torus(self):
        assert is_orientable_homology_manifold(torus_seven())

    def test_rp2_depends_on_field(self):
        assert not is_orientable_homology_manifold(rp2_six(), QQ)
        assert is_orientable_homology_manifold(rp2_six(), GF2)
        assert not is_orientable_homology_manifold(rp2_six(), FieldSpec(3))

    def test_low_dimension(self):
        with pytest.raises(ValueError):
            is_orientable_homology_manifold(points(3))

    def test_disconnected(self):
        two = SimplicialComplex.from_facets(6, [(1, 2), (2, 3), (1, 3), (4, 5), (5, 6), (4, 6)])
        assert not is_orientable_homology_manifold(two)


class TestBiCM:
    def test_trees(self):
        for tree in labeled_trees(6):
            assert is_bicm(tree)

    @pytest.mark.parametrize("n", [4, 5, 6, 7])
    def test_long_cycles(self, n):
        assert not is_bicm(cycle(n))
        assert not bicm_module_route(cycle(n))

    def test_triangle_boundary_convention(self):
        # the dual is the empty simplex, which is CM; only H_1 is nonzero
        assert is_bicm(cycle(3))
        assert bicm_module_route(cycle(3))

    def test_full_simplex_convention(self):
        v = is_bicm(simplex(3))
        assert v and "full simplex" in v.reason

    def test_connected_graphs_tree_or_complete(self):
        # among connected graphs, the bi-CM ones are the trees and the complete graphs
        from cmcomplex.generators import all_graphs, is_forest_graph
        for n in range(1, 6):
            for g in all_graphs(n, connected=True):
                complete = len(g.facets) == n * (n - 1) // 2 and g.d == 2
                assert bicm_bool(g) == (is_forest_graph(g) or complete)

    def test_skeleta(self):
        for n in range(2, 7):
            for k in range(0, n):
                assert is_bicm(simplex_skeleton(n, k))


class TestDesigns:
    def test_cyclic_polytope(self):
        assert is_lcm_design(cyclic_polytope_boundary(8, 4), 2)

    def test_bicm_is_one_design(self):
        samples = list(labeled_trees(5))[:10] + [simplex(4), path(6)]
        for cx in samples:
            assert is_bicm(cx)
            assert is_lcm_design(cx, 1)

    def test_lower_skeleta_not_one_designs(self):
        # bi-CM, but excluded as the (n-p)-skeleton with p > 1
        sk = simplex_skeleton(5, 2)
        assert is_bicm(sk) and not is_lcm_design(sk, 1)

    def test_cycle_two_design(self):
        assert is_lcm_design(cycle(6), 2)

    def test_skeleton_excluded_above_its_level(self):
        # the 1-skeleton of the 5-simplex is 4-CM and of maximal girth for l = 4 only
        sk = simplex_skeleton(5, 1)
        assert is_lcm_design(sk, 4)
        assert not is_lcm_design(sk, 2)

    def test_l_range(self):
        with pytest.raises(ValueError):
            is_lcm_design(cycle(4), 0)
        with pytest.raises(ValueError):
            is_lcm_design(cycle(4), 5)

    def test_ab_examples(self):
        assert is_ab_design(rp2_six(), 1, 1, GF2)
        assert is_ab_design(rp2_six(), 1, 1, QQ)
        assert is_ab_design(torus_seven(), 1, 1)
        assert is_ab_design(fano(), 0, 2)

    def test_ab_failure(self):
        assert not is_ab_design(BOWTIE, 0, 1)

    def test_ab_range(self):
        with pytest.raises(ValueError):
            is_ab_design(cycle(4), 3, 2)


class TestSubmaximal:
    def test_fano_dual(self):
        r = submaximal_d_checks(fano().alexander_dual(), 3)
        assert r.holds and r.missing_face_unions and r.dual_facet_intersections
        assert r.maximal_girth and r.small_missing_faces and r.large_dual_facets

    def test_partition_dual(self):
        part = SimplicialComplex.from_facets(6, [(1, 2), (3, 4), (5, 6)])
        dual = part.alexander_dual()
        assert dual.d == 4
        r = submaximal_d_checks(dual, 2)
        assert r.holds and r.missing_face_unions and r.dual_facet_intersections

    @pytest.mark.parametrize("l", [1, 2, 3, 4])
    def test_simplex_boundary(self, l):
        r = submaximal_d_checks(simplex_skeleton(5, 3), l)
        if l == 1:
            assert r.holds
        else:
            assert not r.holds and not r.missing_face_unions and not r.dual_facet_intersections

    @given(complexes(max_n=6, allow_empty_simplex=False), st.integers(1, 6))
    def test_three_way_agreement(self, cx, l):
        if l <= cx.n:
            submaximal_d_checks(cx, l)


class TestConjectureScan:
    def test_small_corpus(self):
        stream = [cx for n in range(1, 5) for cx in all_complexes(n)]
        assert conjecture_scan(stream, 2) == []
        assert conjecture_scan(stream, 3) == []

    def test_skeleta_excluded(self):
        stream = [simplex_skeleton(n, k) for n in range(2, 7) for k in range(-1, n - 1)]
        for l in (2, 3, 4):
            assert conjecture_scan(stream, l) == []

    def test_bicm_stream_level_one(self):
        assert conjecture_scan(list(labeled_trees(5)) + [cycle(3)], 1) == []

    def test_candidate_needs_small_frame(self):
        assert not is_conjecture_candidate(cycle(5), 2)


class TestReport:
    def test_torus_report(self):
        r = classify(torus_seven())
        assert (r.is_buchsbaum, r.is_cm, r.is_orientable_homology_manifold) == (True, False, True)
        assert r.girth == 7 and r.lcm_level == 0
        assert r.witnesses["is_cm"]["R"] == []

    def test_json_roundtrip(self):
        js = json.loads(json.dumps(classify(cycle(5)).to_json()))
        assert js["is_gorenstein_star"] and js["lcm_level"] == 2 and js["girth"] == 5
        assert js["betti"]["1"] == 1

    def test_empty_simplex_report(self):
        js = classify(SimplicialComplex.empty_simplex(2)).to_json()
        assert js["lcm_level"] == "inf"
        json.dumps(js)

    def test_size_cap_skip(self):
        big = path(22)
        r = classify(big)
        assert r.is_bicm is None and r.skipped["is_bicm"] == "skipped: size cap"
        assert r.is_cm and r.girth == 23

    def test_witness_subsets_sorted(self):
        r = classify(BOWTIE)
        assert r.witnesses["is_buchsbaum"]["R"] == [3]

    @given(complexes(max_n=6, allow_empty_simplex=False), st.sampled_from([QQ, GF2]))
    def test_ladder_invariants(self, cx, field):
        r = classify(cx, field)
        assert r.is_cm == (r.lcm_level >= 1)
        if r.is_gorenstein_star:
            assert r.is_cm
        if r.is_cm:
            assert r.is_buchsbaum
            assert r.girth <= cx.n + 2 - r.lcm_level


class TestRouteAgreement:
    @given(complexes(max_n=7), st.sampled_from([QQ, GF2]))
    def test_cm_routes(self, cx, field):
        a = cm_link_route(cx, field).holds
        assert a == cm_cohomology_route(cx, field).holds == cm_codim_route(cx, field).holds

    @given(complexes(max_n=6, allow_empty_simplex=False), st.sampled_from([QQ, GF2]))
    def test_all_cross_checks_run(self, cx, field):
        for l in range(1, cx.n + 1):
            is_lcm(cx, l, field)
            is_lcm_design(cx, l, field)
        is_bicm(cx, field)
        lcm_level(cx, field)
        for a in range(0, 3):
            for b in range(0, 3):
                if a + b <= cx.n:
                    is_ab_design(cx, a, b, field)

    def test_disagreement_is_raised(self, monkeypatch):
        import sys
        mod = sys.modules["cmcomplex.classify"]
        monkeypatch.setattr(mod, "cm_codim_route", lambda cx, field=QQ: mod.Verdict(False))
        with pytest.raises(RouteDisagreement):
            mod.is_cm(cycle(4))


class TestStructural:
    @given(complexes(max_n=6, allow_empty_simplex=False), st.integers(1, 3))
    @settings(max_examples=40)
    def test_skeleton_promotion(self, cx, r):
        level = lcm_level(cx, cross_check=False)
        if level >= 1 and cx.dim - r >= 0:
            sk = cx.skeleton(cx.dim - r)
            assert is_lcm(sk, level + r, cross_check=False)

    @pytest.mark.parametrize("a,b", [(3, 3), (3, 4), (4, 2), (2, 2), (5, 3)])
    def test_join_closure(self, a, b):
        A, B = cycle(a) if a > 2 else points(a), points(b) if b < 3 else cycle(b)
        l = min(lcm_level(A), lcm_level(B))
        shifted = SimplicialComplex(full_mask(B.n) << A.n, [f << A.n for f in B.facets])
        J = join(SimplicialComplex(full_mask(A.n), A.facets), shifted)
        assert is_lcm(J, l)

    @given(complexes(max_n=7, allow_empty_simplex=False))
    def test_c_bound(self, cx):
        n, d, c = cx.n, cx.d, cx.c
        for l in range(1, n):
            if d != n - l or not is_lcm(cx, l, cross_check=False):
                continue
            if girth(cx) != n + 2 - l:
                continue
            assert c >= l - 1
            if l >= 3 and n >= 3 * l - 4:
                assert 2 * c >= n + 2 - l

    def test_c_bound_on_fano_dual(self):
        dual = fano().alexander_dual()
        assert (dual.n, dual.d, dual.c) == (7, 4, 3)
        assert is_lcm(dual, 3) and girth(dual) == 6
        assert 2 * dual.c >= dual.n + 2 - 3
