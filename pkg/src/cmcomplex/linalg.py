"""Exact rank and kernel computations over the rationals and prime fields.

Matrices are sparse: a list of columns, each a ``{row: value}`` dict.
Rank over Q runs a fraction-free elimination on integer columns (entries are
scaled to integers first, rows are kept primitive by dividing out the gcd).
Rank over GF(2) packs columns into Python ints and eliminates with XOR.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd, isqrt, lcm
from typing import Iterable, Sequence


def _is_prime(p: int) -> bool:
    if p < 2:
        return False
    for q in (2, 3, 5, 7, 11, 13):
        if p % q == 0:
            return p == q
    for q in range(17, isqrt(p) + 1, 2):
        if p % q == 0:
            return False
    return True


@dataclass(frozen=True)
class FieldSpec:
    """Coefficient field: the rationals (``p is None``) or GF(p)."""

    p: int | None = None

    def __post_init__(self):
        if self.p is not None:
            if not isinstance(self.p, int) or not _is_prime(self.p) or self.p >= 2**31:
                raise ValueError(f"GF({self.p}): modulus must be a prime below 2^31")

    @classmethod
    def rationals(cls) -> "FieldSpec":
        return cls(None)

    @classmethod
    def gf(cls, p: int) -> "FieldSpec":
        return cls(p)

    @classmethod
    def parse(cls, text: str) -> "FieldSpec":
        """Accepts ``q`` or ``gf:<p>``."""
        t = text.strip().lower()
        if t in ("q", "qq", "rationals"):
            return cls(None)
        if t.startswith("gf:"):
            try:
                p = int(t[3:])
            except ValueError:
                raise ValueError(f"bad field spec {text!r}") from None
            return cls(p)
        raise ValueError(f"bad field spec {text!r}; use 'q' or 'gf:<p>'")

    @property
    def is_rational(self) -> bool:
        return self.p is None

    def __str__(self):
        return "q" if self.p is None else f"gf:{self.p}"

    # element arithmetic used by the dense routines
    def elem(self, x):
        if self.p is None:
            return Fraction(x)
        if isinstance(x, Fraction):
            return x.numerator * pow(x.denominator, -1, self.p) % self.p
        return int(x) % self.p

    def inv(self, x):
        if self.p is None:
            return 1 / Fraction(x)
        return pow(int(x), self.p - 2, self.p)

    def reduce(self, x):
        return x if self.p is None else x % self.p


QQ = FieldSpec(None)
GF2 = FieldSpec(2)


@dataclass(frozen=True)
class ExactMatrix:
    """Sparse matrix with exact entries (ints, Fractions or residues)."""

    rows: int
    cols: int
    columns: tuple[dict, ...] = field(repr=False)

    def __post_init__(self):
        if len(self.columns) != self.cols:
            raise ValueError("column count mismatch")
        for c in self.columns:
            for r in c:
                if not 0 <= r < self.rows:
                    raise ValueError(f"row index {r} out of range")

    @classmethod
    def from_dense(cls, data: Sequence[Sequence], rows: int | None = None) -> "ExactMatrix":
        data = [list(r) for r in data]
        nrows = len(data) if rows is None else rows
        ncols = len(data[0]) if data else 0
        cols = tuple({i: data[i][j] for i in range(nrows) if data[i][j] != 0}
                     for j in range(ncols))
        return cls(nrows, ncols, cols)

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "ExactMatrix":
        return cls(rows, cols, tuple({} for _ in range(cols)))

    @classmethod
    def identity(cls, n: int) -> "ExactMatrix":
        return cls(n, n, tuple({i: 1} for i in range(n)))

    def to_dense(self) -> list[list]:
        out = [[0] * self.cols for _ in range(self.rows)]
        for j, c in enumerate(self.columns):
            for i, v in c.items():
                out[i][j] = v
        return out

    def transpose(self) -> "ExactMatrix":
        cols: list[dict] = [{} for _ in range(self.rows)]
        for j, c in enumerate(self.columns):
            for i, v in c.items():
                cols[i][j] = v
        return ExactMatrix(self.cols, self.rows, tuple(cols))

    @property
    def shape(self) -> tuple[int, int]:
        return (self.rows, self.cols)

    def __matmul__(self, other: "ExactMatrix") -> "ExactMatrix":
        if self.cols != other.rows:
            raise ValueError("shape mismatch")
        cols = []
        for oc in other.columns:
            acc: dict = {}
            for k, w in oc.items():
                for i, v in self.columns[k].items():
                    acc[i] = acc.get(i, 0) + v * w
            cols.append({i: v for i, v in acc.items() if v != 0})
        return ExactMatrix(self.rows, other.cols, tuple(cols))


# -- rank ------------------------------------------------------------------

def _rank_gf2(columns: Iterable[dict]) -> int:
    pivots: dict[int, int] = {}
    r = 0
    for c in columns:
        v = 0
        for i, x in c.items():
            if x & 1:
                v |= 1 << i
        while v:
            top = v.bit_length() - 1
            p = pivots.get(top)
            if p is None:
                pivots[top] = v
                r += 1
                break
            v ^= p
    return r


def _rank_gfp(columns: Iterable[dict], p: int) -> int:
    pivots: dict[int, dict] = {}
    r = 0
    for c in columns:
        col = {i: x % p for i, x in c.items() if x % p}
        while col:
            top = max(col)
            piv = pivots.get(top)
            if piv is None:
                inv = pow(col[top], p - 2, p)
                pivots[top] = {i: x * inv % p for i, x in col.items()}
                r += 1
                break
            f = col[top]
            for i, x in piv.items():
                y = (col.get(i, 0) - f * x) % p
                if y:
                    col[i] = y
                else:
                    col.pop(i, None)
    return r


def _integer_column(c: dict) -> dict:
    """Scale a rational column to a primitive integer column."""
    dens = [v.denominator for v in c.values() if isinstance(v, Fraction)]
    m = lcm(*dens) if dens else 1
    col = {}
    for i, v in c.items():
        w = v * m
        w = int(w.numerator if isinstance(w, Fraction) else w)
        if w:
            col[i] = w
    return _primitive(col)


def _primitive(col: dict) -> dict:
    g = 0
    for x in col.values():
        g = gcd(g, x)
        if g == 1:
            return col
    if g > 1:
        return {i: x // g for i, x in col.items()}
    return col


def _rank_q(columns: Iterable[dict]) -> int:
    # pivot column stored by its lowest row; elimination is a*col - b*piv
    pivots: dict[int, dict] = {}
    r = 0
    for c in columns:
        col = _integer_column(c)
        while col:
            top = max(col)
            piv = pivots.get(top)
            if piv is None:
                pivots[top] = col
                r += 1
                break
            a, b = piv[top], col[top]
            g = gcd(a, b)
            a, b = a // g, b // g
            new = {i: a * x for i, x in col.items()}
            for i, x in piv.items():
                y = new.get(i, 0) - b * x
                if y:
                    new[i] = y
                else:
                    new.pop(i, None)
            col = _primitive(new)
    return r


def rank_columns(columns: Iterable[dict], field: FieldSpec) -> int:
    if field.p is None:
        return _rank_q(columns)
    if field.p == 2:
        return _rank_gf2(columns)
    return _rank_gfp(columns, field.p)


def rank(M: ExactMatrix, field: FieldSpec = QQ) -> int:
    """Exact rank of ``M`` over ``field``."""
    return rank_columns(M.columns, field)


# -- dense elimination for kernels and coordinates ---------------------------

def _rref(rows: list[list], field: FieldSpec, ncols: int) -> tuple[list[list], list[int]]:
    """Reduced row echelon form in place; returns (rows, pivot columns)."""
    pivots: list[int] = []
    r = 0
    nrows = len(rows)
    for j in range(ncols):
        if r == nrows:
            break
        k = next((i for i in range(r, nrows) if rows[i][j] != 0), None)
        if k is None:
            continue
        rows[r], rows[k] = rows[k], rows[r]
        inv = field.inv(rows[r][j])
        rows[r] = [field.reduce(x * inv) for x in rows[r]]
        for i in range(nrows):
            if i != r and rows[i][j] != 0:
                f = rows[i][j]
                ri, rr = rows[i], rows[r]
                rows[i] = [field.reduce(ri[t] - f * rr[t]) for t in range(len(ri))]
        pivots.append(j)
        r += 1
    return rows, pivots


def _dense(M: ExactMatrix, field: FieldSpec) -> list[list]:
    return [[field.elem(x) for x in row] for row in M.to_dense()]


def kernel_basis(M: ExactMatrix, field: FieldSpec = QQ) -> list[list]:
    """Basis of the null space {x : M x = 0}, as lists of field elements."""
    rows, piv = _rref(_dense(M, field), field, M.cols)
    free = [j for j in range(M.cols) if j not in set(piv)]
    basis = []
    zero, one = field.elem(0), field.elem(1)
    for fj in free:
        v = [zero] * M.cols
        v[fj] = one
        for i, pj in enumerate(piv):
            v[pj] = field.reduce(-rows[i][fj])
        basis.append(v)
    return basis


def column_space_basis(vectors: Sequence[Sequence], field: FieldSpec) -> list[int]:
    """Indices of a maximal independent prefix-greedy subset of ``vectors``."""
    chosen: list[int] = []
    pivots: dict[int, list] = {}
    for idx, vec in enumerate(vectors):
        v = [field.elem(x) for x in vec]
        for j in sorted(pivots):
            if v[j] != 0:
                f = v[j]
                pv = pivots[j]
                v = [field.reduce(a - f * b) for a, b in zip(v, pv)]
        lead = next((j for j, x in enumerate(v) if x != 0), None)
        if lead is None:
            continue
        inv = field.inv(v[lead])
        v = [field.reduce(x * inv) for x in v]
        for j in list(pivots):
            pv = pivots[j]
            if pv[lead] != 0:
                f = pv[lead]
                pivots[j] = [field.reduce(a - f * b) for a, b in zip(pv, v)]
        pivots[lead] = v
        chosen.append(idx)
    return chosen


def solve(A_cols: Sequence[Sequence], b: Sequence, field: FieldSpec) -> list | None:
    """Coefficients x with sum x_j A_cols[j] = b, or None if b is outside the span.

    ``A_cols`` must be linearly independent, so the solution is unique.
    """
    m = len(b)
    k = len(A_cols)
    rows = [[field.elem(A_cols[j][i]) for j in range(k)] + [field.elem(b[i])]
            for i in range(m)]
    rows, piv = _rref(rows, field, k + 1)
    if k in piv:
        return None
    x = [field.elem(0)] * k
    for i, pj in enumerate(piv):
        x[pj] = rows[i][k]
    return x
