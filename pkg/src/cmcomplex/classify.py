"""Cohen-Macaulay style predicates, each evaluated along two independent routes.

Link criteria quantify over faces only, since links of non-faces are void
and have no homology.  Route cross-checks need full 2^n tables and are
skipped above the table size cap; if two routes disagree a
``RouteDisagreement`` is raised, never silently resolved.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field as dc_field
from functools import lru_cache
from itertools import combinations
from typing import Iterable, Iterator

from .complex import SimplicialComplex, canonical_key, subsets_of_size, vertices_of
from .enriched import (TABLE_CAP, enriched_cohomology, enriched_homology, girth,
                       h_minus_one_is_k, nonvanishing_modules)
from .homology import reduced_betti
from .linalg import QQ, FieldSpec


class RouteDisagreement(RuntimeError):
    """Two routes that must be equivalent gave different answers."""


@dataclass(frozen=True)
class Verdict:
    holds: bool
    witness: int | None = None     # subset, as a bit pattern
    degree: int | None = None
    reason: str = ""

    def __bool__(self):
        return self.holds

    def witness_json(self) -> dict | None:
        if self.holds:
            return None
        return {"R": None if self.witness is None else vertices_of(self.witness),
                "p": self.degree, "reason": self.reason}


OK = Verdict(True)


def _tables_ok(cx: SimplicialComplex) -> bool:
    return cx.n <= TABLE_CAP


def _agree(name: str, cx: SimplicialComplex, *answers: bool) -> None:
    if len(set(answers)) > 1:
        raise RouteDisagreement(f"{name}: routes disagree {answers} on {cx!r}")


def _from_key(key: tuple[int, ...]) -> SimplicialComplex:
    g = 0
    for f in key:
        g |= f
    return SimplicialComplex(g, key)


# -- Cohen-Macaulay ------------------------------------------------------------------

def _link_scan(cx: SimplicialComplex, field: FieldSpec, min_card: int) -> Verdict:
    dim = cx.dim
    for Q in cx.faces():
        r = Q.bit_count()
        if r < min_card or r >= dim + 1:
            continue
        b = reduced_betti(cx.link(Q), field)
        for p in range(-1, dim - r):
            if b[p]:
                return Verdict(False, Q, p, f"H~_{p}(lk R) != 0 with p + |R| < dim")
    return OK


def cm_link_route(cx: SimplicialComplex, field: FieldSpec = QQ) -> Verdict:
    _require_nonvoid(cx)
    return _link_scan(cx, field, 0)


def cm_cohomology_route(cx: SimplicialComplex, field: FieldSpec = QQ) -> Verdict:
    """All enriched cohomology below the top degree vanishes."""
    _require_nonvoid(cx)
    for p in range(-1, cx.dim):
        t = enriched_cohomology(cx, p, field)
        if not t.is_zero():
            R = min(t.dims, key=lambda s: (s.bit_count(), s))
            return Verdict(False, R, p, "enriched cohomology nonzero below top degree")
    return OK


def cm_codim_route(cx: SimplicialComplex, field: FieldSpec = QQ) -> Verdict:
    """Each H_{dim-i} has codimension >= i."""
    _require_nonvoid(cx)
    for i in range(1, cx.d + 1):
        p = cx.dim - i
        t = enriched_homology(cx, p, field)
        if t.codim < i:
            R = max(t.dims, key=lambda s: (s.bit_count(), -s))
            return Verdict(False, R, p, f"codim H_{p} < {i}")
    return OK


@lru_cache(maxsize=1 << 18)
def _cm_key(key: tuple[int, ...], field: FieldSpec) -> bool:
    if len({f.bit_count() for f in key}) > 1:
        return False  # CM complexes are pure
    return bool(_link_scan(_from_key(key), field, 0))


def cm_bool(cx: SimplicialComplex, field: FieldSpec = QQ) -> bool:
    """Cached link-criterion answer (independent of the ground set)."""
    _require_nonvoid(cx)
    return _cm_key(canonical_key(cx.facets), field)


def is_cm(cx: SimplicialComplex, field: FieldSpec = QQ, cross_check: bool = True) -> Verdict:
    v = cm_link_route(cx, field)
    if cross_check and _tables_ok(cx):
        _agree("CM (link / cohomology / codimension)", cx, v.holds,
               cm_cohomology_route(cx, field).holds, cm_codim_route(cx, field).holds)
    return v


def _require_nonvoid(cx: SimplicialComplex) -> None:
    if cx.is_void:
        raise ValueError("predicate undefined on the void complex")


# -- Buchsbaum -------------------------------------------------------------------------

def buchsbaum_link_route(cx: SimplicialComplex, field: FieldSpec = QQ) -> Verdict:
    _require_nonvoid(cx)
    return _link_scan(cx, field, 1)


def buchsbaum_cohomology_route(cx: SimplicialComplex, field: FieldSpec = QQ) -> Verdict:
    """Below the top degree, cohomology pieces live only at full support."""
    _require_nonvoid(cx)
    for p in range(-1, cx.dim):
        t = enriched_cohomology(cx, p, field)
        if not t.supported_only_at_full():
            R = min((s for s in t.dims if s != cx.ground), key=lambda s: (s.bit_count(), s))
            return Verdict(False, R, p, "cohomology piece away from full support")
    return OK


def is_buchsbaum(cx: SimplicialComplex, field: FieldSpec = QQ, cross_check: bool = True) -> Verdict:
    v = buchsbaum_link_route(cx, field)
    if cross_check and _tables_ok(cx):
        _agree("Buchsbaum (link / cohomology)", cx, v.holds,
               buchsbaum_cohomology_route(cx, field).holds)
    return v


# -- l-CM ------------------------------------------------------------------------------

def _deletion_failure(cx: SimplicialComplex, R: int, field: FieldSpec) -> Verdict | None:
    X = cx.deletion(R)
    if X.dim != cx.dim:
        return Verdict(False, R, X.dim, "deletion drops the dimension")
    if not cm_bool(X, field):
        w = cm_link_route(X, field)
        return Verdict(False, R, w.degree, "deletion is not CM")
    return None


def lcm_deletion_route(cx: SimplicialComplex, l: int, field: FieldSpec = QQ) -> Verdict:
    """cx minus any l-1 or fewer vertices is CM of the same dimension."""
    _require_nonvoid(cx)
    for size in range(0, min(l - 1, cx.n) + 1):
        for R in subsets_of_size(cx.ground, size):
            bad = _deletion_failure(cx, R, field)
            if bad is not None:
                return bad
    return OK


def lcm_codim_level(cx: SimplicialComplex, field: FieldSpec = QQ) -> float | int:
    """Largest l with codim H_{dim-i} >= (l-1) + i for all i >= 1 (0 if not CM)."""
    _require_nonvoid(cx)
    level = math.inf
    for i in range(1, cx.d + 1):
        t = enriched_homology(cx, cx.dim - i, field)
        level = min(level, t.codim - i + 1)
    return max(level, 0)


def lcm_codim_route(cx: SimplicialComplex, l: int, field: FieldSpec = QQ) -> Verdict:
    _require_nonvoid(cx)
    for i in range(1, cx.d + 1):
        p = cx.dim - i
        t = enriched_homology(cx, p, field)
        if t.codim < l - 1 + i:
            R = max(t.dims, key=lambda s: (s.bit_count(), -s))
            return Verdict(False, R, p, f"codim H_{p} < {l - 1 + i}")
    return OK


def is_lcm(cx: SimplicialComplex, l: int, field: FieldSpec = QQ, cross_check: bool = True) -> Verdict:
    if l < 1:
        raise ValueError("l must be >= 1")
    v = lcm_deletion_route(cx, l, field)
    if cross_check and _tables_ok(cx):
        _agree(f"{l}-CM (deletion / codimension)", cx, v.holds,
               lcm_codim_route(cx, l, field).holds)
    return v


def lcm_level(cx: SimplicialComplex, field: FieldSpec = QQ, max_l: int | None = None,
              cross_check: bool = True) -> float | int:
    """Largest l such that cx is l-CM; 0 when not CM.

    The empty simplex is l-CM for every l; its level is ``inf`` (or
    ``max_l`` when a cap is given).
    """
    _require_nonvoid(cx)
    cap = math.inf if max_l is None else max_l
    if cx.is_empty_simplex:
        level = math.inf
    else:
        level = 0
        size = 0
        while level < cap:
            # being (level+1)-CM adds the deletions of exactly `level` vertices
            size = level
            ok = all(_deletion_failure(cx, R, field) is None
                     for R in subsets_of_size(cx.ground, size)) if size <= cx.n else False
            if not ok:
                break
            level += 1
    if cross_check and _tables_ok(cx):
        other = lcm_codim_level(cx, field)
        _agree("l-CM level (deletion / codimension)", cx, min(level, cap), min(other, cap))
    return min(level, cap)


# -- Gorenstein* and manifolds ------------------------------------------------------------

def _gorenstein_top_scan(cx: SimplicialComplex, field: FieldSpec) -> Verdict:
    dim = cx.dim
    for Q in cx.faces():
        p = dim - Q.bit_count()
        b = reduced_betti(cx.link(Q), field)
        if b[p] != 1:
            return Verdict(False, Q, p, f"dim H~_{p}(lk R) = {b[p]}, expected 1")
    return OK


def is_gorenstein_star(cx: SimplicialComplex, field: FieldSpec = QQ,
                       cross_check: bool = True) -> Verdict:
    """CM and every face link has one-dimensional top reduced homology.

    Quantifying over the empty face as well rules out cones; the empty
    simplex passes (it is the (-1)-sphere, needed for links of facets).
    """
    cm = is_cm(cx, field, cross_check)
    if not cm:
        return Verdict(False, cm.witness, cm.degree, "not CM: " + cm.reason)
    v = _gorenstein_top_scan(cx, field)
    if v and cx.is_cone() is not None:
        raise RouteDisagreement(f"Gorenstein* criterion accepted a cone: {cx!r}")
    return v


@lru_cache(maxsize=1 << 16)
def _gorenstein_key(key: tuple[int, ...], field: FieldSpec) -> bool:
    cx = _from_key(key)
    return _cm_key(key, field) and bool(_gorenstein_top_scan(cx, field))


def gorenstein_bool(cx: SimplicialComplex, field: FieldSpec = QQ) -> bool:
    _require_nonvoid(cx)
    return _gorenstein_key(canonical_key(cx.facets), field)


def is_orientable_homology_manifold(cx: SimplicialComplex, field: FieldSpec = QQ) -> Verdict:
    """Connected, H~_top = k, and every nonempty face has a Gorenstein* link."""
    _require_nonvoid(cx)
    if cx.dim < 1:
        raise ValueError("homology manifold test needs dimension >= 1")
    if cx.connected_components() != 1:
        return Verdict(False, 0, 0, "not connected")
    top = reduced_betti(cx, field)[cx.dim]
    if top != 1:
        return Verdict(False, cx.ground, cx.dim, f"dim H~_top = {top}")
    for Q in cx.faces():
        if Q and not gorenstein_bool(cx.link(Q), field):
            return Verdict(False, Q, None, "link is not Gorenstein*")
    return OK


# -- bi-CM -----------------------------------------------------------------------------

def dual_is_cm(cx: SimplicialComplex, field: FieldSpec = QQ) -> bool:
    """CM-ness of the Alexander dual; a void dual (cx the full simplex) counts as CM."""
    dual = cx.alexander_dual()
    if dual.is_void:
        return True
    return cm_bool(dual, field)


def bicm_module_route(cx: SimplicialComplex, field: FieldSpec = QQ) -> Verdict:
    """At most one nonvanishing enriched homology module, H_{-1} = k excepted."""
    mods = nonvanishing_modules(cx, field)
    if len(mods) > 1:
        return Verdict(False, None, mods[1], f"nonvanishing homology modules in degrees {mods}")
    return OK


def is_bicm(cx: SimplicialComplex, field: FieldSpec = QQ, cross_check: bool = True) -> Verdict:
    """Both cx and its Alexander dual are CM.

    The full simplex is treated as bi-CM (void dual counted as CM); this is
    the reading under which complete skeleta qualify as designs.
    """
    _require_nonvoid(cx)
    cm = is_cm(cx, field, cross_check)
    dual_cm = dual_is_cm(cx, field)
    if cross_check and _tables_ok(cx):
        _agree("Alexander dual CM / single nonvanishing homology module", cx,
               dual_cm, bicm_module_route(cx, field).holds)
    if not cm:
        return Verdict(False, cm.witness, cm.degree, "not CM: " + cm.reason)
    if not dual_cm:
        return Verdict(False, None, None, "Alexander dual is not CM")
    if cx.is_full_simplex:
        return Verdict(True, reason="full simplex: void dual counted as CM")
    return OK


@lru_cache(maxsize=1 << 18)
def _bicm_key(m: int, key: tuple[int, ...], field: FieldSpec) -> bool:
    cx = SimplicialComplex((1 << m) - 1, key)
    return cm_bool(cx, field) and dual_is_cm(cx, field)


def bicm_bool(cx: SimplicialComplex, field: FieldSpec = QQ) -> bool:
    _require_nonvoid(cx)
    return _bicm_key(cx.n, canonical_key(cx.facets, cx.ground), field)


# -- designs ---------------------------------------------------------------------------

def lcm_design_definition_route(cx: SimplicialComplex, l: int, field: FieldSpec = QQ) -> Verdict:
    d, c, n = cx.d, cx.c, cx.n
    for R in subsets_of_size(cx.ground, l - 1):
        X = cx.deletion(R)
        if not bicm_bool(X, field):
            return Verdict(False, R, None, "deletion is not bi-CM")
        if X.d != d or X.c != c:
            return Verdict(False, R, None, "deletion changes dimension or frame dimension")
    if cx.is_complete_skeleton() and n - d + 1 > l:
        return Verdict(False, None, None, f"complete ({d - 1})-skeleton, excluded")
    return OK


def lcm_design_theorem_route(cx: SimplicialComplex, l: int, field: FieldSpec = QQ) -> Verdict:
    if not is_lcm(cx, l, field, cross_check=False):
        return Verdict(False, None, None, f"not {l}-CM")
    g = girth(cx, field)
    if g != cx.n + 2 - l:
        return Verdict(False, None, None, f"girth {g} is not maximal {cx.n + 2 - l}")
    mods = nonvanishing_modules(cx, field, below=cx.dim)
    if len(mods) > 1:
        return Verdict(False, None, mods[1], f"homology modules below top in degrees {mods}")
    return OK


def is_lcm_design(cx: SimplicialComplex, l: int, field: FieldSpec = QQ,
                  cross_check: bool = True) -> Verdict:
    _require_nonvoid(cx)
    if not 1 <= l <= cx.n:
        raise ValueError(f"need 1 <= l <= n, got l = {l}, n = {cx.n}")
    v = lcm_design_definition_route(cx, l, field)
    if cross_check and _tables_ok(cx):
        _agree(f"{l}-CM design (definition / girth-vanishing)", cx, v.holds,
               lcm_design_theorem_route(cx, l, field).holds)
    return v


def ab_design_route(cx: SimplicialComplex, a: int, b: int, field: FieldSpec = QQ) -> Verdict:
    d, c = cx.d, cx.c
    for B in subsets_of_size(cx.ground, b):
        L = cx.link(B)
        if L.is_void:
            return Verdict(False, B, None, "B is not a face")
        for A in subsets_of_size(L.ground, a):
            X = L.deletion(A)
            if not bicm_bool(X, field) or X.d != d - b or X.c != c - b:
                return Verdict(False, A | B, None,
                               f"(lk B)_-A fails for A = {vertices_of(A)}, B = {vertices_of(B)}")
    return OK


def ab_duality_applies(cx: SimplicialComplex, a: int, b: int) -> bool:
    """Whether the (a,b) <-> dual (b,a) equivalence is free of void/full-simplex pieces."""
    dual = cx.alexander_dual()
    if dual.is_void or cx.is_empty_simplex:
        return False
    return cx.d != cx.n - a and dual.d != cx.n - b


def is_ab_design(cx: SimplicialComplex, a: int, b: int, field: FieldSpec = QQ,
                 cross_check: bool = True) -> Verdict:
    _require_nonvoid(cx)
    if a < 0 or b < 0 or a + b > cx.n:
        raise ValueError("need a, b >= 0 and a + b <= n")
    v = ab_design_route(cx, a, b, field)
    if cross_check and ab_duality_applies(cx, a, b):
        w = ab_design_route(cx.alexander_dual(), b, a, field)
        _agree(f"({a},{b})-design / dual ({b},{a})-design", cx, v.holds, w.holds)
    return v


# -- submaximal dimension ------------------------------------------------------------------

@dataclass(frozen=True)
class SubmaximalReport:
    l: int
    lcm_with_submaximal_d: bool
    missing_face_unions: bool
    dual_facet_intersections: bool
    maximal_girth: bool | None = None
    small_missing_faces: bool | None = None
    large_dual_facets: bool | None = None

    @property
    def holds(self) -> bool:
        return self.lcm_with_submaximal_d


def submaximal_d_checks(cx: SimplicialComplex, l: int, field: FieldSpec = QQ) -> SubmaximalReport:
    """Three equivalent descriptions of l-CM complexes with d = n - l, plus the girth addendum."""
    _require_nonvoid(cx)
    n, d = cx.n, cx.d
    if not 1 <= l <= n:
        raise ValueError("need 1 <= l <= n")
    a = d == n - l and bool(is_lcm(cx, l, field, cross_check=False))
    mnf = cx.minimal_nonfaces()
    b = d == n - l and all((F | G).bit_count() >= n + 2 - l for F, G in combinations(mnf, 2))
    dual = cx.alexander_dual()
    if dual.is_void:
        c = False
    else:
        c = dual.c == l - 1 and all((F & G).bit_count() < l - 1
                                    for F, G in combinations(dual.facets, 2))
    _agree(f"submaximal d (l = {l})", cx, a, b, c)
    if not a:
        return SubmaximalReport(l, a, b, c)
    mg = girth(cx, field) == n + 2 - l
    small = all(F.bit_count() <= n - l for F in mnf)
    large = all(F.bit_count() >= l for F in dual.facets)
    _agree(f"maximal girth addendum (l = {l})", cx, mg, small, large)
    return SubmaximalReport(l, a, b, c, mg, small, large)


# -- conjecture scan -------------------------------------------------------------------------

def is_conjecture_candidate(cx: SimplicialComplex, l: int, field: FieldSpec = QQ) -> bool:
    """l-CM, maximal girth, not the (n-l)-skeleton, and c < l - 1."""
    if cx.is_void or cx.is_empty_simplex or l > cx.n:
        return False
    if cx.c >= l - 1:
        return False
    if cx.is_complete_skeleton() and cx.d == cx.n - l + 1:
        return False
    if not lcm_deletion_route(cx, l, field):
        return False
    return girth(cx, field) == cx.n + 2 - l


def conjecture_scan(stream: Iterable[SimplicialComplex], l: int,
                    field: FieldSpec = QQ) -> list[SimplicialComplex]:
    return [cx for cx in stream if is_conjecture_candidate(cx, l, field)]


# -- full report -------------------------------------------------------------------------------

def _num(x):
    return "inf" if x == math.inf else x


@dataclass
class ClassificationReport:
    field: FieldSpec
    n: int
    d: int
    c: int
    f_vector: tuple[int, ...]
    betti: dict[int, int]
    is_cm: bool
    lcm_level: float | int
    is_buchsbaum: bool
    is_gorenstein_star: bool
    is_orientable_homology_manifold: bool | None
    is_bicm: bool | None
    girth: int
    is_cone: int | None
    h_minus_one_is_k: bool
    witnesses: dict = dc_field(default_factory=dict)
    skipped: dict = dc_field(default_factory=dict)
    notes: list = dc_field(default_factory=list)

    def to_json(self) -> dict:
        return {
            "field": str(self.field), "n": self.n, "d": self.d, "c": self.c,
            "dim": self.d - 1, "f_vector": list(self.f_vector),
            "betti": {str(k): v for k, v in self.betti.items()},
            "is_cm": self.is_cm, "lcm_level": _num(self.lcm_level),
            "is_buchsbaum": self.is_buchsbaum,
            "is_gorenstein_star": self.is_gorenstein_star,
            "is_orientable_homology_manifold": self.is_orientable_homology_manifold,
            "is_bicm": self.is_bicm, "girth": self.girth, "is_cone": self.is_cone,
            "h_minus_one_is_k": self.h_minus_one_is_k,
            "witnesses": self.witnesses, "skipped": self.skipped, "notes": self.notes,
        }


def classify(cx: SimplicialComplex, field: FieldSpec = QQ, max_l: int | None = None,
             cross_check: bool = True) -> ClassificationReport:
    """Evaluate the whole ladder; raises RouteDisagreement on inconsistent routes."""
    _require_nonvoid(cx)
    witnesses: dict = {}
    skipped: dict = {}
    notes: list = []
    big = not _tables_ok(cx)
    if big:
        for k in ("cm_cross_check", "lcm_codim_route", "bicm_module_route", "buchsbaum_cross_check"):
            skipped[k] = "skipped: size cap"

    cm = is_cm(cx, field, cross_check)
    if not cm:
        witnesses["is_cm"] = cm.witness_json()
    level = lcm_level(cx, field, max_l, cross_check)
    bb = is_buchsbaum(cx, field, cross_check)
    if not bb:
        witnesses["is_buchsbaum"] = bb.witness_json()
    gor = is_gorenstein_star(cx, field, cross_check)
    if not gor:
        witnesses["is_gorenstein_star"] = gor.witness_json()
    if cx.dim >= 1:
        man = is_orientable_homology_manifold(cx, field)
        if not man:
            witnesses["is_orientable_homology_manifold"] = man.witness_json()
        manifold = man.holds
    else:
        manifold = None
        skipped["is_orientable_homology_manifold"] = "dimension < 1"
    if big:
        # the Alexander dual of a sparse complex on many vertices is enormous
        bicm = None
        skipped["is_bicm"] = "skipped: size cap"
    else:
        bi = is_bicm(cx, field, cross_check)
        bicm = bi.holds
        if not bi:
            witnesses["is_bicm"] = bi.witness_json()
        elif bi.reason:
            notes.append(bi.reason)
    if cx.is_empty_simplex:
        notes.append("empty simplex: l-CM for every l")
    g = girth(cx, field)
    if level >= 1 and not cx.is_empty_simplex and g > cx.n + 2 - level:
        raise RouteDisagreement("girth bound violated for an l-CM complex")
    return ClassificationReport(
        field=field, n=cx.n, d=cx.d, c=cx.c, f_vector=cx.f_vector(),
        betti=reduced_betti(cx, field).as_dict(), is_cm=cm.holds, lcm_level=level,
        is_buchsbaum=bb.holds, is_gorenstein_star=gor.holds,
        is_orientable_homology_manifold=manifold, is_bicm=bicm, girth=g,
        is_cone=cx.is_cone(), h_minus_one_is_k=h_minus_one_is_k(cx),
        witnesses=witnesses, skipped=skipped, notes=notes)
