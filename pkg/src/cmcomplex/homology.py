"""Reduced simplicial homology and cohomology over a field.

Incidence sign: removing the j-th smallest vertex (0-indexed) of a face
contributes ``(-1)**j``.  The augmentation sends every vertex to the empty
face with coefficient +1.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from .complex import SimplicialComplex, canonical_key, face_key, lex_key, maximal_sets, submasks
from .linalg import QQ, ExactMatrix, FieldSpec, kernel_basis, rank_columns, solve, \
    column_space_basis


@dataclass(frozen=True)
class BettiVector:
    """dims[k] is dim H~_{k-1}; indexing by ``vec[p]`` uses the degree p."""

    field: FieldSpec
    dims: tuple[int, ...]

    def __getitem__(self, p: int) -> int:
        k = p + 1
        if 0 <= k < len(self.dims):
            return self.dims[k]
        return 0

    @property
    def top(self) -> int:
        return len(self.dims) - 2

    def as_dict(self) -> dict[int, int]:
        return {k - 1: v for k, v in enumerate(self.dims)}

    def __iter__(self):
        return iter(self.dims)

    def euler_characteristic(self) -> int:
        """Reduced Euler characteristic sum_p (-1)^p dim H~_p."""
        return sum((-1) ** (k - 1) * v for k, v in enumerate(self.dims))

    def is_acyclic(self) -> bool:
        return not any(self.dims)


def _faces_by_card(facets: tuple[int, ...]) -> list[list[int]]:
    if not facets:
        return []
    seen: set[int] = set()
    for f in facets:
        seen.update(submasks(f))
    d = max(f.bit_count() for f in facets)
    groups: list[list[int]] = [[] for _ in range(d + 1)]
    for s in seen:
        groups[s.bit_count()].append(s)
    for g in groups:
        g.sort(key=lex_key)
    return groups


def _boundary_columns(cells: list[int], index: dict[int, int]) -> list[dict]:
    cols = []
    for F in cells:
        col = {}
        sign = 1
        rest = F
        while rest:
            b = rest & -rest
            rest ^= b
            col[index[F ^ b]] = sign
            sign = -sign
        cols.append(col)
    return cols


def boundary_matrix(cx: SimplicialComplex, i: int, field: FieldSpec = QQ) -> ExactMatrix:
    """Matrix of d_i from i-faces (columns) to (i-1)-faces (rows).

    Both bases are the faces in canonical (lexicographic) order.  ``d_{-1}``
    is the 0 x 1 map out of the empty face.
    """
    if cx.is_void:
        raise ValueError("boundary of the void complex")
    if not -1 <= i <= cx.dim:
        raise ValueError(f"boundary index {i} outside -1..{cx.dim}")
    cells = list(cx.faces(i + 1))
    if i == -1:
        return ExactMatrix(0, 1, ({},))
    rows = list(cx.faces(i))
    index = {F: k for k, F in enumerate(rows)}
    cols = _boundary_columns(cells, index)
    if field.p is not None:
        cols = [{r: field.elem(v) for r, v in c.items()} for c in cols]
    return ExactMatrix(len(rows), len(cells), tuple(cols))


def _components(vertices: list[int], edges: list[int]) -> int:
    parent = {v: v for v in vertices}

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    count = len(vertices)
    for e in edges:
        a = find(e & -e)
        b = find(e & (e - 1))
        if a != b:
            parent[a] = b
            count -= 1
    return count


def _ranks(groups: list[list[int]], field: FieldSpec) -> list[int]:
    """ranks[k] = rank of the boundary from cardinality k to k-1 (ranks[0] = 0)."""
    ranks = [0]
    if len(groups) > 1:
        ranks.append(1 if groups[1] else 0)
    if len(groups) > 2:
        # edges -> vertices has rank #vertices - #components over every field
        ranks.append(len(groups[1]) - _components(groups[1], groups[2]))
    for k in range(len(ranks), len(groups)):
        index = {F: t for t, F in enumerate(groups[k - 1])}
        ranks.append(rank_columns(_boundary_columns(groups[k], index), field))
    return ranks


@lru_cache(maxsize=1 << 18)
def _betti_of_key(key: tuple[int, ...], field: FieldSpec) -> tuple[int, ...]:
    if not key:
        return ()
    if key == (0,):
        return (1,)
    common = key[0]
    for f in key:
        common &= f
    groups = _faces_by_card(key)
    if common or len(key) == 1:
        # cones (in particular simplices) are acyclic
        return (0,) * len(groups)
    ranks = _ranks(groups, field) + [0]
    return tuple(len(groups[k]) - ranks[k] - ranks[k + 1] for k in range(len(groups)))


def reduced_betti(cx: SimplicialComplex, field: FieldSpec = QQ) -> BettiVector:
    """dim H~_p for p = -1 .. dim; all zeros (empty tuple) for the void complex."""
    return BettiVector(field, _betti_of_key(canonical_key(cx.facets), field))


def betti_of_facets(facets, field: FieldSpec = QQ) -> BettiVector:
    return BettiVector(field, _betti_of_key(canonical_key(maximal_sets(facets)), field))


def top_betti(cx: SimplicialComplex, degree: int, field: FieldSpec = QQ) -> int:
    """dim H~_degree, cheap when ``degree`` is the top dimension of ``cx``."""
    if cx.is_void:
        return 0
    p = cx.dim
    if degree > p:
        return 0
    if degree < p:
        return reduced_betti(cx, field)[degree]
    top = [f for f in cx.facets if f.bit_count() == p + 1]
    # a nonzero top cycle needs at least d + 1 top faces
    if p >= 0 and len(top) < p + 2:
        return 0
    return reduced_betti(cx, field)[degree]


@lru_cache(maxsize=1 << 16)
def _cobetti_of_key(key: tuple[int, ...], field: FieldSpec) -> tuple[int, ...]:
    if not key:
        return ()
    groups = _faces_by_card(key)
    # coboundary from cardinality k to k+1 is the transpose of the boundary k+1 -> k
    corank = []
    for k in range(len(groups)):
        if k + 1 < len(groups):
            index = {F: t for t, F in enumerate(groups[k])}
            bd = ExactMatrix(len(groups[k]), len(groups[k + 1]),
                             tuple(_boundary_columns(groups[k + 1], index)))
            corank.append(rank_columns(bd.transpose().columns, field))
        else:
            corank.append(0)
    dims = []
    for k in range(len(groups)):
        below = corank[k - 1] if k > 0 else 0
        dims.append(len(groups[k]) - corank[k] - below)
    return tuple(dims)


def reduced_cobetti(cx: SimplicialComplex, field: FieldSpec = QQ) -> BettiVector:
    """dim H~^p via ranks of the transposed (coboundary) matrices."""
    return BettiVector(field, _cobetti_of_key(canonical_key(cx.facets), field))


def clear_caches() -> None:
    _betti_of_key.cache_clear()
    _cobetti_of_key.cache_clear()


# -- induced maps on homology ---------------------------------------------------

@dataclass(frozen=True)
class HomologyBasis:
    """Cycle representatives, as coefficient lists over ``cells``."""

    cells: tuple[int, ...]
    cycles: tuple[tuple, ...]
    boundaries: tuple[tuple, ...]

    @property
    def dim(self) -> int:
        return len(self.cycles)


def homology_basis(cx: SimplicialComplex, p: int, field: FieldSpec = QQ) -> HomologyBasis:
    """Representatives of a basis of H~_p: kernel vectors completed against the image."""
    if cx.is_void or p > cx.dim or p < -1:
        return HomologyBasis((), (), ())
    cells = tuple(cx.faces(p + 1))
    dp = boundary_matrix(cx, p, field)
    Z = kernel_basis(dp, field)
    if p + 1 <= cx.dim:
        dq = boundary_matrix(cx, p + 1, field)
        imgs = [[field.elem(x) for x in row] for row in zip(*dq.to_dense())] if dq.cols else []
        imgs = [list(c) for c in imgs]
        B = [imgs[j] for j in column_space_basis(imgs, field)]
    else:
        B = []
    chosen = column_space_basis(B + Z, field)
    reps = [tuple(Z[j - len(B)]) for j in chosen if j >= len(B)]
    return HomologyBasis(cells, tuple(reps), tuple(tuple(b) for b in B))


@dataclass(frozen=True)
class InducedMap:
    matrix: ExactMatrix
    source: HomologyBasis
    target: HomologyBasis


def inclusion_induced_map(cx: SimplicialComplex, R: int, i: int, p: int,
                          field: FieldSpec = QQ) -> InducedMap:
    """H~_p(cx_R) -> H~_p(cx_{R+i}) in the bases chosen by ``homology_basis``."""
    bit = 1 << (i - 1)
    if R & ~cx.ground or not bit & cx.ground:
        raise ValueError("R and i must lie in the ground set")
    if R & bit:
        raise ValueError(f"vertex {i} already in R")
    src = homology_basis(cx.restriction(R), p, field)
    tgt = homology_basis(cx.restriction(R | bit), p, field)
    pos = {F: k for k, F in enumerate(tgt.cells)}
    basis = list(tgt.boundaries) + list(tgt.cycles)
    cols = []
    zero = field.elem(0)
    for z in src.cycles:
        v = [zero] * len(tgt.cells)
        for F, x in zip(src.cells, z):
            v[pos[F]] = x
        if tgt.dim == 0:
            cols.append({})
            continue
        coef = solve(basis, v, field)
        if coef is None:
            raise ArithmeticError("image of a cycle is not a cycle")
        h = coef[len(tgt.boundaries):]
        cols.append({r: x for r, x in enumerate(h) if x != 0})
    M = ExactMatrix(tgt.dim, src.dim, tuple(cols))
    return InducedMap(M, src, tgt)
