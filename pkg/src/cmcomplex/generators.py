"""Named complexes and small corpora (exhaustive and random)."""
from __future__ import annotations

import random
from itertools import combinations, product
from math import isclose, sqrt
from typing import Iterator, Sequence

from .complex import SimplicialComplex, full_mask, join, mask_of, subsets_of_size, vertices_of
from .homology import reduced_betti
from .linalg import GF2, QQ


def simplex_skeleton(n: int, k: int) -> SimplicialComplex:
    """All subsets of [n] with at most k + 1 elements."""
    if n < 1 or not -1 <= k <= n - 1:
        raise ValueError(f"need n >= 1 and -1 <= k <= n-1, got n={n}, k={k}")
    g = full_mask(n)
    return SimplicialComplex(g, subsets_of_size(g, k + 1))


def simplex(n: int) -> SimplicialComplex:
    return SimplicialComplex.simplex(full_mask(n))


def cycle(n: int) -> SimplicialComplex:
    if n < 3:
        raise ValueError("a cycle needs n >= 3")
    return SimplicialComplex.from_facets(n, [(i, i % n + 1) for i in range(1, n + 1)])


def path(n: int) -> SimplicialComplex:
    if n < 1:
        raise ValueError("a path needs n >= 1")
    if n == 1:
        return SimplicialComplex.from_facets(1, [(1,)])
    return SimplicialComplex.from_facets(n, [(i, i + 1) for i in range(1, n)])


def points(n: int) -> SimplicialComplex:
    return SimplicialComplex.from_facets(n, [(i,) for i in range(1, n + 1)])


def gale_evenness(S: Sequence[int], n: int) -> bool:
    """Every two non-members of S are separated by an even number of members."""
    inside = set(S)
    outside = [v for v in range(1, n + 1) if v not in inside]
    for a, b in zip(outside, outside[1:]):
        if sum(1 for s in S if a < s < b) % 2:
            return False
    return True


def cyclic_polytope_boundary(n: int, dd: int) -> SimplicialComplex:
    """Boundary of the cyclic dd-polytope on n vertices (dd even, n >= dd + 2)."""
    if dd < 2 or dd % 2 or n < dd + 2:
        raise ValueError("need even dd >= 2 and n >= dd + 2")
    facets = [S for S in combinations(range(1, n + 1), dd) if gale_evenness(S, n)]
    return SimplicialComplex.from_facets(n, facets)


def torus_seven() -> SimplicialComplex:
    """The 7-vertex torus: triangles {i, i+1, i+3} and {i, i+2, i+3} mod 7."""
    tri = []
    for i in range(7):
        tri.append([(i + s) % 7 + 1 for s in (0, 1, 3)])
        tri.append([(i + s) % 7 + 1 for s in (0, 2, 3)])
    cx = SimplicialComplex.from_facets(7, tri)
    _verify_surface(cx, (1, 7, 21, 14), 6)
    return cx


def icosahedron() -> tuple[list[tuple[float, float, float]], list[tuple[int, int, int]]]:
    """Vertex coordinates and the 20 triangles (0-indexed) of a regular icosahedron."""
    phi = (1 + sqrt(5)) / 2
    verts = []
    for s1, s2 in product((1, -1), repeat=2):
        verts += [(0, s1, s2 * phi), (s1, s2 * phi, 0), (s2 * phi, 0, s1)]

    def dist2(a, b):
        return sum((x - y) ** 2 for x, y in zip(a, b))

    edge = min(dist2(verts[0], v) for v in verts[1:])
    adj = {(i, j) for i in range(12) for j in range(12)
           if i != j and isclose(dist2(verts[i], verts[j]), edge)}
    tris = [t for t in combinations(range(12), 3)
            if (t[0], t[1]) in adj and (t[1], t[2]) in adj and (t[0], t[2]) in adj]
    return verts, tris


def rp2_six() -> SimplicialComplex:
    """6-vertex real projective plane: the icosahedron modulo the antipodal map."""
    verts, tris = icosahedron()
    label: dict[int, int] = {}
    nxt = 1
    for i, v in enumerate(verts):
        if i in label:
            continue
        j = next(j for j, w in enumerate(verts)
                 if all(isclose(a, -b, abs_tol=1e-12) for a, b in zip(v, w)))
        label[i] = label[j] = nxt
        nxt += 1
    cx = SimplicialComplex.from_facets(6, [[label[i] for i in t] for t in tris])
    _verify_rp2(cx)
    return cx


def _verify_surface(cx: SimplicialComplex, fvec: tuple, link_len: int) -> None:
    """f-vector, two triangles per edge, every vertex link a single cycle."""
    if cx.f_vector() != fvec:
        raise AssertionError(f"f-vector {cx.f_vector()}, expected {fvec}")
    for e in cx.faces(2):
        if sum(1 for f in cx.facets if e & ~f == 0) != 2:
            raise AssertionError(f"edge {vertices_of(e)} is not in exactly two triangles")
    for v in cx.vertices:
        lk = cx.link(mask_of([v]))
        if lk.f_vector() != (1, link_len, link_len) or lk.connected_components() != 1:
            raise AssertionError(f"link of {v} is not a {link_len}-cycle")


def _verify_rp2(cx: SimplicialComplex) -> None:
    _verify_surface(cx, (1, 6, 15, 10), 5)
    if tuple(reduced_betti(cx, QQ)) != (0, 0, 0, 0) or tuple(reduced_betti(cx, GF2)) != (0, 0, 1, 1):
        raise AssertionError("RP^2 homology check failed")


def fano_blocks() -> list[list[int]]:
    """The 7 lines of the Fano plane, translates of {1, 2, 4} mod 7."""
    return [sorted((i + s) % 7 + 1 for s in (0, 1, 3)) for i in range(7)]


def steiner_complex(blocks: Sequence[Sequence[int]], n: int) -> SimplicialComplex:
    sizes = {len(set(b)) for b in blocks}
    if len(sizes) > 1:
        raise ValueError("blocks must all have the same size")
    return SimplicialComplex.from_facets(n, blocks)


def fano() -> SimplicialComplex:
    return steiner_complex(fano_blocks(), 7)


def _shift(cx: SimplicialComplex, k: int) -> SimplicialComplex:
    return SimplicialComplex(cx.ground << k, (f << k for f in cx.facets))


def disjoint_join(a: SimplicialComplex, b: SimplicialComplex) -> SimplicialComplex:
    """Join after shifting the labels of ``b`` past those of ``a``."""
    return join(a, _shift(b, a.ground.bit_length()))


def cone(cx: SimplicialComplex) -> SimplicialComplex:
    apex = cx.ground.bit_length()
    return join(cx, SimplicialComplex(1 << apex, (1 << apex,)))


def suspension(cx: SimplicialComplex, l_points: int = 2) -> SimplicialComplex:
    """Join with ``l_points`` isolated new vertices."""
    k = cx.ground.bit_length()
    pts = SimplicialComplex(((1 << l_points) - 1) << k, ((1 << i) << k for i in range(l_points)))
    return join(cx, pts)


# -- corpora ---------------------------------------------------------------------------

def all_complexes(n: int) -> Iterator[SimplicialComplex]:
    """Every non-void simplicial complex on the ground set [n] (raw, labeled).

    Enumerates antichains of nonempty subsets; the empty antichain gives the
    empty simplex.
    """
    g = full_mask(n)
    subsets = sorted(range(1, g + 1), key=lambda s: (-s.bit_count(), s))

    def rec(i: int, chosen: list[int], covered: set[int]):
        if i == len(subsets):
            yield SimplicialComplex(g, chosen or [0])
            return
        s = subsets[i]
        yield from rec(i + 1, chosen, covered)
        if s not in covered:
            new = set(covered)
            t = s
            while True:
                new.add(t)
                if t == 0:
                    break
                t = (t - 1) & s
            chosen.append(s)
            yield from rec(i + 1, chosen, new)
            chosen.pop()

    yield from rec(0, [], set())


def all_graphs(n: int, connected: bool = False) -> Iterator[SimplicialComplex]:
    """All labeled graphs using every vertex of [n] (isolated vertices allowed)."""
    edges = list(combinations(range(1, n + 1), 2))
    for bits in range(1 << len(edges)):
        es = [e for k, e in enumerate(edges) if bits >> k & 1]
        facets = es + [(v,) for v in range(1, n + 1)]
        cx = SimplicialComplex.from_facets(n, facets)
        if connected and cx.connected_components() != 1:
            continue
        yield cx


def is_forest_graph(cx: SimplicialComplex) -> bool:
    edges = len(cx.faces(2))
    return edges == len(cx.vertices) - cx.connected_components()


def labeled_trees(n: int) -> Iterator[SimplicialComplex]:
    """All n^(n-2) labeled trees on [n], from Pruefer sequences."""
    if n == 1:
        yield path(1)
        return
    if n == 2:
        yield path(2)
        return
    for seq in product(range(1, n + 1), repeat=n - 2):
        degree = [1] * (n + 1)
        for x in seq:
            degree[x] += 1
        edges = []
        for x in seq:
            leaf = next(v for v in range(1, n + 1) if degree[v] == 1)
            edges.append((leaf, x))
            degree[leaf] -= 1
            degree[x] -= 1
        u, w = [v for v in range(1, n + 1) if degree[v] == 1]
        edges.append((u, w))
        yield SimplicialComplex.from_facets(n, edges)


def random_complex(n: int, rng: random.Random, n_facets: int | None = None,
                   sizes: Sequence[int] | None = None) -> SimplicialComplex:
    """Uniform facet sampler: random subsets of [n] of the allowed sizes."""
    if n_facets is None:
        n_facets = rng.randint(1, max(1, 2 * n))
    if sizes is None:
        top = rng.randint(1, n)
        sizes = range(1, top + 1)
    sizes = list(sizes)
    facets = [rng.sample(range(1, n + 1), rng.choice(sizes)) for _ in range(n_facets)]
    return SimplicialComplex.from_facets(n, facets)


def random_pure_complex(n: int, k: int, rng: random.Random, n_facets: int) -> SimplicialComplex:
    return random_complex(n, rng, n_facets, [k])


def named(name: str, *params: int) -> SimplicialComplex:
    """Look up a generator by its CLI name."""
    table = {
        "torus7": lambda: torus_seven(),
        "rp2_6": lambda: rp2_six(),
        "fano": lambda: fano(),
        "cycle": lambda n: cycle(n),
        "path": lambda n: path(n),
        "points": lambda n: points(n),
        "simplex": lambda n: simplex(n),
        "skeleton": lambda n, k: simplex_skeleton(n, k),
        "cyclic": lambda n, dd: cyclic_polytope_boundary(n, dd),
        "boundary": lambda n: simplex_skeleton(n, n - 2),
    }
    if name not in table:
        raise ValueError(f"unknown generator {name!r}; known: {sorted(table)}")
    try:
        return table[name](*params)
    except TypeError:
        raise ValueError(f"wrong number of parameters for generator {name!r}") from None


GENERATOR_NAMES = ("torus7", "rp2_6", "fano", "cycle:<n>", "path:<n>", "points:<n>",
                   "simplex:<n>", "skeleton:<n>:<k>", "cyclic:<n>:<dd>", "boundary:<n>")
