"""Enriched homology and cohomology modules as squarefree dimension tables.

The multigraded piece of the enriched homology module in degree ``p`` at a
squarefree degree ``R`` is H~_p of the restriction to ``R``; the enriched
cohomology piece is H~^{p-q} of the link of the complement ``Q`` of ``R``.
Only these dimension tables are built, not module presentations.  (The
homology tables are the linear strands of the Stanley-Reisner resolution.)
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field as dc_field
from functools import lru_cache
from itertools import combinations
from typing import Literal

from .complex import SimplicialComplex, face_key, lex_key, submasks, vertices_of
from .homology import BettiVector, _boundary_columns, reduced_betti, reduced_cobetti
from .linalg import rank_columns
from .linalg import QQ, FieldSpec

TABLE_CAP = 20

Kind = Literal["homology", "cohomology"]


class SizeCapError(ValueError):
    """A full 2^n table was requested above the size cap."""


@dataclass(frozen=True)
class SquarefreeTable:
    ground: int
    p: int
    kind: Kind
    field: FieldSpec
    dims: dict = dc_field(default_factory=dict, hash=False)

    @property
    def n(self) -> int:
        return self.ground.bit_count()

    def __getitem__(self, R: int) -> int:
        return self.dims.get(R, 0)

    def is_zero(self) -> bool:
        return not self.dims

    @property
    def rank(self) -> int:
        return self.dims.get(self.ground, 0)

    @property
    def codim(self) -> float | int:
        """n minus the largest support with a nonzero piece; inf for the zero table."""
        if not self.dims:
            return math.inf
        return self.n - max(R.bit_count() for R in self.dims)

    @property
    def min_degree(self) -> float | int:
        if not self.dims:
            return math.inf
        return min(R.bit_count() for R in self.dims)

    def supported_only_at_full(self) -> bool:
        return all(R == self.ground for R in self.dims)

    def alexander_dual(self) -> "SquarefreeTable":
        g = self.ground
        return SquarefreeTable(g, self.p, self.kind, self.field,
                               {g & ~R: v for R, v in self.dims.items()})

    def to_json(self) -> dict:
        entries = sorted(self.dims.items(), key=lambda kv: lex_key(kv[0]))
        return {"p": self.p, "kind": self.kind, "field": str(self.field),
                "entries": [{"R": vertices_of(R), "dim": v} for R, v in entries]}


def table_alexander_dual(t: SquarefreeTable) -> SquarefreeTable:
    return t.alexander_dual()


def table_rank(t: SquarefreeTable) -> int:
    return t.rank


def table_codim(t: SquarefreeTable):
    return t.codim


def _check_cap(cx: SimplicialComplex) -> None:
    if cx.n > TABLE_CAP:
        raise SizeCapError(f"full tables need n <= {TABLE_CAP}, got n = {cx.n}")


@lru_cache(maxsize=256)
def restriction_bettis(cx: SimplicialComplex, field: FieldSpec = QQ) -> dict[int, BettiVector]:
    """Betti vectors of every restriction cx_R, R ranging over the ground set."""
    _check_cap(cx)
    return {R: reduced_betti(cx.restriction(R), field) for R in submasks(cx.ground)}


@lru_cache(maxsize=256)
def link_cobettis(cx: SimplicialComplex, field: FieldSpec = QQ) -> dict[int, BettiVector]:
    """Cohomology Betti vectors of lk Q for every face Q."""
    return {Q: reduced_cobetti(cx.link(Q), field) for Q in cx.faces()}


def enriched_homology(cx: SimplicialComplex, p: int, field: FieldSpec = QQ) -> SquarefreeTable:
    if cx.is_void:
        return SquarefreeTable(cx.ground, p, "homology", field, {})
    if not -1 <= p <= cx.dim:
        raise ValueError(f"degree {p} outside -1..{cx.dim}")
    data = restriction_bettis(cx, field)
    dims = {R: b[p] for R, b in data.items() if b[p]}
    return SquarefreeTable(cx.ground, p, "homology", field, dims)


def enriched_homology_all(cx: SimplicialComplex, field: FieldSpec = QQ) -> dict[int, SquarefreeTable]:
    if cx.is_void:
        return {}
    return {p: enriched_homology(cx, p, field) for p in range(-1, cx.dim + 1)}


def enriched_cohomology(cx: SimplicialComplex, p: int, field: FieldSpec = QQ) -> SquarefreeTable:
    """Piece at R is H~^{p-q}(lk Q), Q the complement of R; non-faces give zero."""
    if cx.is_void:
        return SquarefreeTable(cx.ground, p, "cohomology", field, {})
    if not -1 <= p <= cx.dim:
        raise ValueError(f"degree {p} outside -1..{cx.dim}")
    _check_cap(cx)
    data = link_cobettis(cx, field)
    dims = {}
    for Q, b in data.items():
        v = b[p - Q.bit_count()]
        if v:
            dims[cx.ground & ~Q] = v
    return SquarefreeTable(cx.ground, p, "cohomology", field, dims)


def h_minus_one_is_k(cx: SimplicialComplex) -> bool:
    """The (-1)-st homology module is one copy of k exactly when every vertex is used."""
    return not cx.is_void and cx.vertex_mask == cx.ground


def girth(cx: SimplicialComplex, field: FieldSpec = QQ) -> int:
    """Smallest |R| with H~_{dim}(cx_R) != 0, else n + 1.

    No 2^n table is built: subsets are searched by size from both ends and
    the search stops as soon as the answer is pinned down.
    """
    if cx.is_void:
        raise ValueError("girth of the void complex")
    p = cx.dim
    n = cx.n
    if p == -1:
        return 0
    d = p + 1
    top = [f for f in cx.facets if f.bit_count() == d]

    def good(R: int) -> bool:
        return _has_top_cycle(_peel([f for f in top if f & ~R == 0]), field)

    # vertices outside the peeled core never carry a top cycle
    core = _peel(top)
    if not _has_top_cycle(core, field):
        return n + 1
    support = 0
    for f in core:
        support |= f
    verts = [1 << (v - 1) for v in vertices_of(support)]
    m = len(verts)

    # Sets with a top cycle are closed upwards.  Search alternately from the
    # bottom (all sets of a size) and from the top (shrinking the good sets)
    # and expand whichever side is cheaper.
    lo, hi = d + 1, m
    frontier = {support}
    while lo < hi:
        if math.comb(m, lo) <= len(frontier) * hi:
            for combo in combinations(verts, lo):
                R = 0
                for b in combo:
                    R |= b
                inner = [f for f in top if f & ~R == 0]
                if len(inner) < d + 1:
                    continue
                # a minimal R is covered by the faces surviving the peel
                live = _peel(inner)
                cover = 0
                for f in live:
                    cover |= f
                if cover == R and _has_top_cycle(live, field):
                    return lo
            lo += 1
        else:
            nxt = set()
            for R in frontier:
                rest = R
                while rest:
                    b = rest & -rest
                    rest ^= b
                    S = R ^ b
                    if S not in nxt and good(S):
                        nxt.add(S)
            if not nxt:
                return hi
            frontier = nxt
            hi -= 1
    return hi


def _peel(faces: list[int]) -> list[int]:
    """Drop faces having a boundary face shared with no other face, repeatedly."""
    live = list(faces)
    while live:
        count: dict[int, int] = {}
        for f in live:
            rest = f
            while rest:
                b = rest & -rest
                rest ^= b
                count[f ^ b] = count.get(f ^ b, 0) + 1
        keep = []
        for f in live:
            rest = f
            ok = True
            while rest:
                b = rest & -rest
                rest ^= b
                if count[f ^ b] == 1:
                    ok = False
                    break
            if ok:
                keep.append(f)
        if len(keep) == len(live):
            break
        live = keep
    return live


def _has_top_cycle(faces: list[int], field: FieldSpec) -> bool:
    if not faces:
        return False
    index: dict[int, int] = {}
    for f in faces:
        rest = f
        while rest:
            b = rest & -rest
            rest ^= b
            index.setdefault(f ^ b, len(index))
    return rank_columns(_boundary_columns(faces, index), field) < len(faces)


def nonvanishing_modules(cx: SimplicialComplex, field: FieldSpec = QQ,
                         below: int | None = None) -> list[int]:
    """Degrees p (< below, if given) whose enriched homology module is nonzero.

    The degree -1 module is skipped when it is just k (all vertices present).
    """
    tables = enriched_homology_all(cx, field)
    skip_minus_one = h_minus_one_is_k(cx)
    out = []
    for p, t in tables.items():
        if below is not None and p >= below:
            continue
        if p == -1 and skip_minus_one:
            continue
        if not t.is_zero():
            out.append(p)
    return out
