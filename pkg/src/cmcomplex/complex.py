"""Simplicial complexes on a finite ground set, stored by facets.

Vertices are positive integers 1..63; a vertex set is an ``int`` bit pattern
with vertex ``v`` at bit ``v - 1``.  A complex remembers its ground set, so
restrictions and links keep the original vertex labels and Alexander duality
and frame dimension are always taken relative to that ground set.

Two degenerate complexes are distinct values:

* the *void* complex has no faces at all (``facets == ()``);
* the *empty simplex* has only the empty face (``facets == (0,)``).
"""
from __future__ import annotations

from functools import cached_property, lru_cache
from itertools import combinations
from math import comb
from typing import Iterable, Iterator, Sequence

MAX_VERTEX = 63


class VoidComplexError(ValueError):
    """Raised when a query has no meaning on the void complex."""


# -- bit pattern helpers -------------------------------------------------

def mask_of(vertices: Iterable[int]) -> int:
    m = 0
    for v in vertices:
        v = int(v)
        if not 1 <= v <= MAX_VERTEX:
            raise ValueError(f"vertex {v} out of range 1..{MAX_VERTEX}")
        m |= 1 << (v - 1)
    return m


def vertices_of(mask: int) -> list[int]:
    out = []
    v = 1
    while mask:
        if mask & 1:
            out.append(v)
        mask >>= 1
        v += 1
    return out


def popcount(mask: int) -> int:
    return mask.bit_count()


def full_mask(n: int) -> int:
    return (1 << n) - 1


def submasks(mask: int) -> Iterator[int]:
    """All subsets of ``mask``, from ``mask`` itself down to 0."""
    s = mask
    while True:
        yield s
        if s == 0:
            return
        s = (s - 1) & mask


def subsets_of_size(mask: int, k: int) -> Iterator[int]:
    bits = [1 << (v - 1) for v in vertices_of(mask)]
    for combo in combinations(bits, k):
        s = 0
        for b in combo:
            s |= b
        yield s


def face_key(mask: int) -> tuple[int, ...]:
    """Sort key: lexicographic on the increasing vertex list."""
    return tuple(vertices_of(mask))


@lru_cache(maxsize=1 << 20)
def lex_key(mask: int) -> tuple[int, int]:
    """(cardinality, lex) order without building vertex lists.

    Among equal-size sets, A precedes B iff the least element of A ^ B is in A,
    i.e. iff the bit-reversal of A is larger.
    """
    return mask.bit_count(), -int(format(mask, "064b")[::-1], 2)


def maximal_sets(sets: Iterable[int]) -> tuple[int, ...]:
    """Inclusion-maximal members, duplicates removed, in canonical order."""
    uniq = sorted(set(sets), key=lambda s: -s.bit_count())
    kept: list[int] = []
    for s in uniq:
        if not any(s & ~k == 0 for k in kept):
            kept.append(s)
    return tuple(sorted(kept, key=lex_key))


# -- the complex -----------------------------------------------------------

class SimplicialComplex:
    """An immutable simplicial complex given by its facets on a ground set.

    ``ground`` and every facet are bit patterns; facets must lie inside the
    ground set.  Construction normalizes the generating sets down to the
    inclusion-maximal ones.
    """

    __slots__ = ("ground", "facets", "__dict__")

    def __init__(self, ground: int, facets: Iterable[int] = ()):
        facets = list(facets)
        for f in facets:
            if f & ~ground:
                raise ValueError(
                    f"face {vertices_of(f)} not inside ground set {vertices_of(ground)}")
        object.__setattr__(self, "ground", ground)
        object.__setattr__(self, "facets", maximal_sets(facets))

    @classmethod
    def _trusted(cls, ground: int, facets: tuple[int, ...]) -> "SimplicialComplex":
        """Skip validation: ``facets`` is already a canonical antichain inside ground."""
        obj = cls.__new__(cls)
        object.__setattr__(obj, "ground", ground)
        object.__setattr__(obj, "facets", facets)
        return obj

    def __setattr__(self, name, value):
        if name in ("ground", "facets"):
            raise AttributeError("SimplicialComplex is immutable")
        object.__setattr__(self, name, value)

    # -- constructors --

    @classmethod
    def from_facets(cls, n: int, facets: Iterable[Iterable[int]]) -> "SimplicialComplex":
        """Complex on [n] generated by the given vertex lists."""
        if n < 1:
            raise ValueError("ground set size n must be >= 1")
        if n > MAX_VERTEX:
            raise ValueError(f"n must be <= {MAX_VERTEX}")
        masks = []
        for f in facets:
            f = list(f)
            bad = [v for v in f if not 1 <= int(v) <= n]
            if bad:
                raise ValueError(f"vertex {bad[0]} out of range 1..{n}")
            masks.append(mask_of(f))
        return cls(full_mask(n), masks)

    @classmethod
    def void(cls, ground: int) -> "SimplicialComplex":
        return cls(ground, ())

    @classmethod
    def empty_simplex(cls, ground: int) -> "SimplicialComplex":
        return cls(ground, (0,))

    @classmethod
    def simplex(cls, ground: int) -> "SimplicialComplex":
        return cls(ground, (ground,))

    # -- dunder --

    def __eq__(self, other):
        if not isinstance(other, SimplicialComplex):
            return NotImplemented
        return self.ground == other.ground and self.facets == other.facets

    def __hash__(self):
        return hash((self.ground, self.facets))

    def __repr__(self):
        fs = ", ".join("{" + ",".join(map(str, vertices_of(f))) + "}" for f in self.facets)
        return f"SimplicialComplex(ground={vertices_of(self.ground)}, facets=[{fs}])"

    def __contains__(self, face) -> bool:
        if not isinstance(face, int):
            face = mask_of(face)
        return self.is_face(face)

    # -- basic predicates --

    @property
    def n(self) -> int:
        return self.ground.bit_count()

    @property
    def is_void(self) -> bool:
        return not self.facets

    @property
    def is_empty_simplex(self) -> bool:
        return self.facets == (0,)

    @property
    def is_full_simplex(self) -> bool:
        return self.facets == (self.ground,)

    @cached_property
    def vertex_mask(self) -> int:
        m = 0
        for f in self.facets:
            m |= f
        return m

    @property
    def vertices(self) -> list[int]:
        return vertices_of(self.vertex_mask)

    def is_face(self, face: int) -> bool:
        if face & ~self.ground:
            return False
        for f in self.facets:
            if face & ~f == 0:
                return True
        return False

    # -- faces and counts --

    @cached_property
    def faces_by_card(self) -> tuple[tuple[int, ...], ...]:
        """Faces grouped by cardinality, each group in canonical order."""
        if self.is_void:
            return ()
        seen: set[int] = set()
        for f in self.facets:
            seen.update(submasks(f))
        groups: list[list[int]] = [[] for _ in range(self.d + 1)]
        for s in seen:
            groups[s.bit_count()].append(s)
        return tuple(tuple(sorted(g, key=lex_key)) for g in groups)

    @cached_property
    def face_set(self) -> frozenset[int]:
        return frozenset(s for g in self.faces_by_card for s in g)

    def faces(self, card: int | None = None) -> tuple[int, ...]:
        """Faces of the given cardinality, or all faces."""
        if card is None:
            return tuple(s for g in self.faces_by_card for s in g)
        if 0 <= card < len(self.faces_by_card):
            return self.faces_by_card[card]
        return ()

    def f_vector(self) -> tuple[int, ...]:
        """(f_{-1}, f_0, ..., f_{d-1}); empty tuple for the void complex."""
        return tuple(len(g) for g in self.faces_by_card)

    @property
    def d(self) -> int:
        """Maximal facet cardinality."""
        if self.is_void:
            raise VoidComplexError("the void complex has no faces")
        return self.facets[-1].bit_count()

    cardinality_d = d

    @property
    def dim(self) -> int:
        return self.d - 1

    def dimension(self) -> int:
        return self.d - 1

    @cached_property
    def c(self) -> int:
        """Largest i such that every i-subset of the ground set is a face."""
        if self.is_void:
            raise VoidComplexError("frame dimension of the void complex is undefined")
        n = self.n
        fv = self.f_vector()
        c = 0
        while c < n and c + 1 < len(fv) and fv[c + 1] == comb(n, c + 1):
            c += 1
        return c

    @property
    def frame_c(self) -> int:
        return self.c

    @property
    def is_pure(self) -> bool:
        return len({f.bit_count() for f in self.facets}) <= 1

    # -- constructions --

    def restriction(self, R: int) -> "SimplicialComplex":
        """Faces contained in R; lives on ground set ``ground & R``."""
        R &= self.ground
        if self.is_void:
            return SimplicialComplex(R, ())
        return SimplicialComplex(R, (f & R for f in self.facets))

    def deletion(self, R: int) -> "SimplicialComplex":
        return self.restriction(self.ground & ~R)

    def link(self, Q: int) -> "SimplicialComplex":
        """lk Q on ``ground \\ Q``; void when Q is not a face."""
        rest = self.ground & ~Q
        if not self.is_face(Q):
            return SimplicialComplex(rest, ())
        # removing a common subset keeps the facets an antichain, in order
        return SimplicialComplex._trusted(rest, tuple(f & ~Q for f in self.facets if Q & ~f == 0))

    def minimal_nonfaces(self) -> tuple[int, ...]:
        if self.is_void:
            return (0,)
        fs = self.face_set
        found = set()
        for F in fs:
            free = self.ground & ~F
            while free:
                b = free & -free
                free ^= b
                N = F | b
                if N in fs or N in found:
                    continue
                if all((N & ~(1 << (v - 1))) in fs for v in vertices_of(N)):
                    found.add(N)
        return tuple(sorted(found, key=lex_key))

    def alexander_dual(self) -> "SimplicialComplex":
        """{F in ground : ground \\ F is not a face}; void for the full simplex."""
        return SimplicialComplex(self.ground,
                                 (self.ground & ~N for N in self.minimal_nonfaces()))

    def skeleton(self, k: int) -> "SimplicialComplex":
        """Faces of cardinality <= k + 1."""
        if self.is_void:
            raise VoidComplexError("skeleton of the void complex")
        if not -1 <= k <= self.dim:
            raise ValueError(f"skeleton index {k} outside -1..{self.dim}")
        gens: list[int] = []
        for f in self.facets:
            if f.bit_count() <= k + 1:
                gens.append(f)
            else:
                gens.extend(subsets_of_size(f, k + 1))
        return SimplicialComplex(self.ground, gens)

    def is_cone(self) -> int | None:
        """A vertex lying in every facet, if any."""
        if self.is_void:
            return None
        common = self.ground
        for f in self.facets:
            common &= f
        if not common:
            return None
        return vertices_of(common & -common)[0]

    def connected_components(self) -> int:
        parent: dict[int, int] = {}

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for v in self.vertices:
            parent[v] = v
        for f in self.facets:
            vs = vertices_of(f)
            for w in vs[1:]:
                a, b = find(vs[0]), find(w)
                if a != b:
                    parent[b] = a
        return len({find(v) for v in parent})

    def is_complete_skeleton(self) -> bool:
        """True when the complex is the (d-1)-skeleton of the simplex on its ground."""
        return not self.is_void and self.c == self.d

    def relabeled(self, mapping: dict[int, int], ground: Sequence[int] | None = None
                  ) -> "SimplicialComplex":
        """Apply a vertex map to ground and facets."""
        new_ground = mask_of(mapping[v] for v in vertices_of(self.ground)) \
            if ground is None else mask_of(ground)
        return SimplicialComplex(
            new_ground, (mask_of(mapping[v] for v in vertices_of(f)) for f in self.facets))

    def facet_lists(self) -> list[list[int]]:
        return [vertices_of(f) for f in self.facets]


def from_facets(n: int, facets: Iterable[Iterable[int]]) -> SimplicialComplex:
    return SimplicialComplex.from_facets(n, facets)


def join(a: SimplicialComplex, b: SimplicialComplex) -> SimplicialComplex:
    """Faces F1 | F2; the ground sets must be disjoint."""
    if a.ground & b.ground:
        raise ValueError("join needs disjoint ground sets; relabel first")
    return SimplicialComplex(a.ground | b.ground,
                             (f | g for f in a.facets for g in b.facets))


def canonical_key(facets: Sequence[int], ground: int | None = None) -> tuple[int, ...]:
    """Order-preserving relabeling of the used vertices (or of ``ground``) to 0..m-1.

    Homology is invariant under relabeling, so this key lets caches share
    results between restrictions and links sitting on different vertex sets.
    """
    support = ground
    if support is None:
        support = 0
        for f in facets:
            support |= f
    if support == (1 << support.bit_length()) - 1:
        return tuple(facets)
    pos = {}
    i = 0
    s = support
    while s:
        b = s & -s
        pos[b] = 1 << i
        i += 1
        s ^= b
    out = []
    for f in facets:
        m = 0
        while f:
            b = f & -f
            m |= pos[b]
            f ^= b
        out.append(m)
    return tuple(out)
