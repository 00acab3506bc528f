from fractions import Fraction
from itertools import combinations
from math import comb, prod

import pytest
from hypothesis import given, strategies as st

from cmcomplex import SimplicialComplex, mask_of
from cmcomplex.classify import bicm_bool, is_ab_design, is_lcm_design
from cmcomplex.designs import (NonIntegralError, ab_design_lambda, bicm_f_polynomial,
                               block_design_check, design_fvector, design_params, f_sharp,
                               f_shriek, f_shriek_inverse, lambda_by_counting,
                               lcm_design_lambda, link_fvector_by_exact_sequence,
                               link_fvector_prediction, link_from_sharp)
from cmcomplex.generators import (cycle, cyclic_polytope_boundary, fano, labeled_trees, path,
                                  random_complex, rp2_six, simplex, simplex_skeleton,
                                  torus_seven)
from cmcomplex.linalg import GF2, QQ

C84 = cyclic_polytope_boundary(8, 4)


class TestBiCMPolynomial:
    @pytest.mark.parametrize("n", [2, 3, 5, 9])
    def test_tree_profile(self, n):
        assert bicm_f_polynomial(n, 2, 1) == (1, n, n - 1)

    def test_complete_graph_on_four(self):
        assert bicm_f_polynomial(4, 2, 2) == (1, 4, 6)
        assert simplex_skeleton(4, 1).f_vector() == (1, 4, 6)

    def test_full_simplex(self):
        assert bicm_f_polynomial(3, 3, 3) == (1, 3, 3, 1)

    def test_range(self):
        with pytest.raises(ValueError):
            bicm_f_polynomial(3, 2, 3)

    def test_trees_match(self):
        for tree in labeled_trees(6):
            assert tree.f_vector() == bicm_f_polynomial(6, tree.d, tree.c)

    def test_random_bicm_match(self):
        import random
        rng = random.Random(7)
        hits = 0
        for _ in range(400):
            cx = random_complex(rng.randint(2, 6), rng)
            if cx.is_void or not bicm_bool(cx):
                continue
            hits += 1
            assert cx.f_vector() == bicm_f_polynomial(cx.n, cx.d, cx.c)
        assert hits > 20


class TestTransfers:
    @pytest.mark.parametrize("n", [4, 5, 8])
    def test_shriek_path_to_cycle(self, n):
        assert f_shriek((1, n - 1, n - 2), n) == (1, n, n) == cycle(n).f_vector()

    def test_sharp_hexagon_to_torus(self):
        assert f_sharp((1, 6, 6), 7) == (1, 7, 21, 14) == torus_seven().f_vector()

    def test_non_integral(self):
        with pytest.raises(NonIntegralError):
            f_shriek((1, 1), 3)
        with pytest.raises(NonIntegralError):
            f_sharp((1, 3), 3)

    def test_shriek_needs_room(self):
        with pytest.raises(ValueError):
            f_shriek((1, 2, 1), 2)

    def test_sharp_rp2(self):
        assert f_sharp((1, 5, 5), 6) == rp2_six().f_vector()

    @given(st.integers(3, 12), st.lists(st.integers(0, 40), min_size=1, max_size=4))
    def test_sharp_then_derivative(self, n, tail):
        f = (1, *tail)
        scaled = tuple(x * prod(range(1, len(f) + 1)) for x in f)
        assert link_from_sharp(f_sharp(scaled, n), n) == scaled

    @given(st.integers(5, 12), st.lists(st.integers(1, 40), min_size=1, max_size=3))
    def test_shriek_inverse_roundtrip(self, n, tail):
        f = (1, *tail)
        scaled = tuple(x * prod(n - i for i in range(len(f))) for x in f)
        g = f_shriek(scaled, n)
        assert f_shriek_inverse(g, n) == scaled
        assert f_shriek(f_shriek_inverse(g, n), n) == g


class TestLambda:
    def test_cyclic_8_4(self):
        assert lcm_design_lambda(8, 4, 2, 2) == 10
        assert block_design_check(C84, 1) == 10
        # independent count: 20 facets of size 4 over 8 vertices
        assert len(C84.facets) * 4 // 8 == 10

    def test_one_design_counts_facets(self):
        for n, d, c in [(5, 2, 1), (6, 3, 2), (7, 4, 2), (4, 2, 2)]:
            assert lcm_design_lambda(n, d, c, 1) == comb(n - d + c, c)
            assert len(bicm_f_polynomial(n, d, c)) == d + 1
            assert bicm_f_polynomial(n, d, c)[-1] == comb(n - d + c, c)

    def test_steiner_case(self):
        # a (0, b)-design with c = b has lambda = 1: a Steiner system S(b, d, n)
        for b in range(1, 5):
            for d in range(b + 1, 9):
                for n in range(d + 1, 12):
                    assert ab_design_lambda(n, d, b, 0, b) == 1

    def test_minimal_interesting_design(self):
        # c = l - 1 and d = l give (l-1)-(n, l, l) designs
        for l in range(2, 6):
            for n in range(l + 1, 15):
                assert lcm_design_lambda(n, l, l - 1, l) == l

    def test_fano_dual(self):
        dual = fano().alexander_dual()
        n, d, c = dual.n, dual.d, dual.c
        assert block_design_check(dual, 2) == lcm_design_lambda(n, d, c, 3)

    def test_counting_matches(self):
        for n in range(2, 16):
            for d in range(1, n + 1):
                for c in range(0, d + 1):
                    for l in range(1, min(6, n) + 1):
                        if n - d + 2 - l < 1 or c < l - 1:
                            continue
                        assert lcm_design_lambda(n, d, c, l) == lambda_by_counting(n, d, c, l)

    def test_zero_denominator(self):
        with pytest.raises(ZeroDivisionError):
            lcm_design_lambda(4, 4, 0, 2)

    def test_params(self):
        p = design_params(8, 4, 2, 2)
        assert p.is_integral and p.lam == 10
        q = design_params(9, 4, 0, 2)
        assert q.lam == Fraction(4, 5) and not q.is_integral


class TestBlockCheck:
    def test_fano(self):
        assert block_design_check(fano(), 2) == 1

    def test_cyclic(self):
        assert block_design_check(C84, 1) == 10

    def test_boundary_of_four(self):
        assert block_design_check(simplex_skeleton(4, 2), 2) == 2

    def test_not_balanced(self):
        assert block_design_check(path(4), 1) is None

    def test_impure(self):
        with pytest.raises(ValueError):
            block_design_check(SimplicialComplex.from_facets(3, [(1, 2), (3,)]), 1)

    def test_t_range(self):
        with pytest.raises(ValueError):
            block_design_check(fano(), 4)


def _design_samples():
    out = [(C84, 2), (cyclic_polytope_boundary(9, 4), 2), (cyclic_polytope_boundary(10, 6), 2),
           (fano().alexander_dual(), 3)]
    out += [(cycle(n), 2) for n in range(4, 9)]
    out += [(t, 1) for t in list(labeled_trees(5))[:6]]
    out += [(simplex_skeleton(n, n - l), l) for n in range(3, 8) for l in range(1, n)]
    return out


@pytest.mark.parametrize("cx,l", _design_samples(), ids=lambda x: repr(x)[:40])
def test_generated_designs(cx, l):
    for field in (QQ, GF2):
        assert is_lcm_design(cx, l, field)
    n, d, c = cx.n, cx.d, cx.c
    if l - 1 <= d:
        assert block_design_check(cx, l - 1) == lcm_design_lambda(n, d, c, l)
    else:
        assert lcm_design_lambda(n, d, c, l) == 0
    assert cx.f_vector() == design_fvector(n, d, c, l) == link_fvector_prediction(n, d, c, l, 0)
    for q in range(0, l):
        pred = link_fvector_prediction(n, d, c, l, q)
        assert pred == link_fvector_by_exact_sequence(n, d, c, l, q)
        for Q in combinations(range(1, n + 1), q):
            lk = cx.link(mask_of(Q))
            if not lk.is_void:
                assert lk.f_vector() == pred


class TestLinkPredictions:
    def test_cyclic_vertex_link(self):
        pred = link_fvector_prediction(8, 4, 2, 2, 1)
        assert pred == (1, 7, 15, 10)
        for v in range(1, 9):
            assert C84.link(mask_of([v])).f_vector() == pred

    def test_torus_hexagon(self):
        # a (1,1)-design: links of vertices form a 2-vertex-deletion-stable (1,0)-design
        t = torus_seven()
        n, d, c = t.n - 1, t.d - 1, t.c - 1
        assert link_fvector_prediction(n, d, c, 2, 0) == (1, 6, 6)
        assert all(t.link(mask_of([v])).f_vector() == (1, 6, 6) for v in range(1, 8))

    def test_q_range(self):
        with pytest.raises(ValueError):
            link_fvector_prediction(8, 4, 2, 2, 2)


class TestBranches:
    def test_agree_on_grid(self):
        for n in range(1, 31):
            for d in range(0, n + 1):
                for l in range(1, 7):
                    c = l - 1
                    if c > d:
                        continue
                    hi = Fraction(comb(n - d + c + 1 - l, c + 1 - l) * comb(d, l - 1),
                                  comb(c, l - 1))
                    lo = Fraction(comb(l - 1, c) * comb(d, l - 1), comb(n - d, l - 1 - c))
                    assert hi == lo == lcm_design_lambda(n, d, c, l)

    def test_integrality_filter(self):
        for n in range(2, 31):
            for d in range(1, n):
                for l in range(2, 7):
                    for c in range(0, min(d, l - 2) + 1):
                        if comb(n - d, l - 1 - c) == 0:
                            continue
                        lam = lcm_design_lambda(n, d, c, l)
                        if lam.denominator == 1:
                            num = prod(range(d + 2 - l, d + 1))
                            assert num % (n - d) == 0


class TestABDesigns:
    @pytest.mark.parametrize("cx,a,b,field", [(torus_seven(), 1, 1, QQ), (rp2_six(), 1, 1, GF2),
                                              (rp2_six(), 1, 1, QQ), (fano(), 0, 2, QQ),
                                              (C84, 1, 0, QQ)])
    def test_shared_fvectors(self, cx, a, b, field):
        assert is_ab_design(cx, a, b, field)
        verts = range(1, cx.n + 1)
        for q in range(0, a + b + 1):
            for r in range(0, a + b + 1 - q):
                seen = set()
                for Q in combinations(verts, q):
                    lk = cx.link(mask_of(Q))
                    if lk.is_void:
                        continue
                    rest = [v for v in verts if v not in Q]
                    for R in combinations(rest, r):
                        seen.add(lk.deletion(mask_of(R)).f_vector())
                assert len(seen) <= 1

    def test_fano_lambda(self):
        f = fano()
        assert ab_design_lambda(f.n, f.d, f.c, 0, 2) == 1
        assert block_design_check(f, 2) == 1

    def test_torus_lambda(self):
        t = torus_seven()
        # each edge of the torus lies in two triangles
        assert ab_design_lambda(t.n, t.d, t.c, 1, 1) == 2
        assert block_design_check(t, 2) == 2
