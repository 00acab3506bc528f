"""Closed-form f-vector and block design arithmetic, exact throughout.

f-vectors are tuples ``(f_{-1}, f_0, ..., f_{d-1})``, i.e. the coefficient
lists of the f-polynomial sum f_{i-1} t^i.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import comb
from typing import Sequence

from .complex import SimplicialComplex, subsets_of_size


class NonIntegralError(ValueError):
    """A transferred f-vector or design count came out fractional."""


@dataclass(frozen=True)
class DesignParams:
    n: int
    d: int
    c: int
    l: int
    lam: Fraction

    @property
    def is_integral(self) -> bool:
        return self.lam.denominator == 1


def _integral(coeffs: Sequence[Fraction], what: str) -> tuple[int, ...]:
    out = []
    for i, x in enumerate(coeffs):
        x = Fraction(x)
        if x.denominator != 1:
            raise NonIntegralError(f"{what}: coefficient of t^{i} is {x}")
        out.append(int(x))
    return tuple(out)


def _poly_mul(a: Sequence[int], b: Sequence[int]) -> list[int]:
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            out[i + j] += x * y
    return out


def bicm_f_polynomial(n: int, d: int, c: int) -> tuple[int, ...]:
    """(1+t)^(d-c) * sum_{j<=c} C(n-d+c, j) t^j.

    Also valid at c = 0 (d-simplex on an ambient ground set) and
    c = d = n (the full simplex).
    """
    if not 0 <= c <= d <= n:
        raise ValueError(f"need 0 <= c <= d <= n, got n={n}, d={d}, c={c}")
    head = [comb(n - d + c, j) for j in range(c + 1)]
    return tuple(_poly_mul([comb(d - c, j) for j in range(d - c + 1)], head))


def f_shriek(f: Sequence[int], n: int) -> tuple[int, ...]:
    """f-vector of a complex on n vertices whose vertex deletions all have f-vector ``f``."""
    if len(f) - 1 >= n:
        raise ValueError("faces of the deletions cannot have n vertices")
    return _integral([Fraction(n, n - i) * f[i] for i in range(len(f))], "f_shriek")


def f_shriek_inverse(f: Sequence[int], n: int) -> tuple[int, ...]:
    """Common f-vector of the vertex deletions, given the f-vector on n vertices."""
    out = [Fraction(n - i, n) * f[i] for i in range(len(f))]
    while len(out) > 1 and out[-1] == 0:
        out.pop()
    return _integral(out, "f_shriek_inverse")


def f_sharp(f: Sequence[int], n: int) -> tuple[int, ...]:
    """f-vector of a complex on n vertices whose vertex links all have f-vector ``f``."""
    return _integral([Fraction(1)] + [Fraction(n * f[i], i + 1) for i in range(len(f))],
                     "f_sharp")


def link_from_sharp(f: Sequence[int], n: int) -> tuple[int, ...]:
    """Derivative of the f-polynomial divided by n: the common vertex-link f-vector."""
    return _integral([Fraction(i * f[i], n) for i in range(1, len(f))], "derivative / n")


def lcm_design_lambda(n: int, d: int, c: int, l: int) -> Fraction:
    """Number of facets through each (l-1)-set of an l-CM design with invariants n, d, c.

    Both closed forms are evaluated where they apply and must agree at c = l - 1.
    """
    if l < 1 or not 0 <= c <= d <= n:
        raise ValueError("parameters out of range")
    hi = lo = None
    if c >= l - 1:
        hi = Fraction(comb(n - d + c + 1 - l, c + 1 - l) * comb(d, l - 1), comb(c, l - 1))
    if c <= l - 1:
        base = comb(n - d, l - 1 - c)
        if base == 0:
            raise ZeroDivisionError(f"C({n - d}, {l - 1 - c}) vanishes")
        lo = Fraction(comb(l - 1, c) * comb(d, l - 1), base)
    if hi is not None and lo is not None and hi != lo:
        raise ArithmeticError(f"lambda branches disagree at c = l - 1: {hi} vs {lo}")
    return hi if hi is not None else lo


def lambda_by_counting(n: int, d: int, c: int, l: int) -> Fraction:
    """The same number reached step by step: facets of the bi-CM deletion, then
    vertex re-insertions, then links of l - 1 points."""
    lam = Fraction(comb(n - d + c + 1 - l, c))
    for i in range(2, l + 1):
        lam *= Fraction(n + i - l, n - d + i - l)
    for i in range(2, l + 1):
        lam *= Fraction(d + i - l, n + i - l)
    return lam


def design_params(n: int, d: int, c: int, l: int) -> DesignParams:
    return DesignParams(n, d, c, l, lcm_design_lambda(n, d, c, l))


def block_design_check(cx: SimplicialComplex, t: int) -> int | None:
    """lambda if every t-subset of the ground set lies in the same number of facets."""
    if not cx.is_pure:
        raise ValueError("block design check needs a pure complex")
    if cx.is_void:
        return None
    if not 0 <= t <= cx.d:
        raise ValueError(f"t must be in 0..{cx.d}")
    lam = None
    for T in subsets_of_size(cx.ground, t):
        k = sum(1 for F in cx.facets if T & ~F == 0)
        if lam is None:
            lam = k
        elif k != lam:
            return None
    return lam


def design_fvector(n: int, d: int, c: int, l: int) -> tuple[int, ...]:
    """f-vector of an l-CM design: the bi-CM deletion profile re-inflated l - 1 times."""
    f = bicm_f_polynomial(n + 1 - l, d, c)
    for m in range(n + 2 - l, n + 1):
        f = f_shriek(f, m)
    return f


def link_fvector_prediction(n: int, d: int, c: int, l: int, q: int) -> tuple[int, ...]:
    """f-vector of lk Q, |Q| = q <= l - 1, in an l-CM design with invariants n, d, c.

    Deletions first (back up to the full ground set), then q link steps, each
    the derivative-over-vertex-count relation on a ground set one smaller.
    """
    if not 0 <= q <= l - 1:
        raise ValueError("need 0 <= q <= l - 1")
    f = design_fvector(n, d, c, l)
    for k in range(q):
        f = link_from_sharp(f, n - k)
    return f


def link_fvector_by_exact_sequence(n: int, d: int, c: int, l: int, q: int) -> tuple[int, ...]:
    """Same prediction via f(lk Q) t = f(lk Q') - f(lk_{deletion of x} Q'), Q = Q' + x."""
    if q == 0:
        return design_fvector(n, d, c, l)
    whole = link_fvector_by_exact_sequence(n, d, c, l, q - 1)
    if not whole:
        return ()  # q exceeds d: the links are void
    part = link_fvector_by_exact_sequence(n - 1, d, c, l - 1, q - 1)
    diff = [x - (part[i] if i < len(part) else 0) for i, x in enumerate(whole)]
    if diff[0] != 0:
        raise ArithmeticError("constant term must cancel")
    diff = diff[1:]
    while len(diff) > 1 and diff[-1] == 0:
        diff.pop()
    return tuple(diff)


def ab_design_lambda(n: int, d: int, c: int, a: int, b: int) -> Fraction:
    """Blocks through each (a+b)-set of an (a,b)-design: the (a,0)-design link count."""
    return lcm_design_lambda(n - b, d - b, c - b, a + 1)
