"""Facet text / JSON formats and generator specs."""
from __future__ import annotations

import json
import re
from pathlib import Path

from .complex import SimplicialComplex
from .generators import named


class ParseError(ValueError):
    def __init__(self, message: str, line: int | None = None):
        self.line = line
        super().__init__(f"line {line}: {message}" if line is not None else message)


_HEADER = re.compile(r"^\s*n\s*=\s*(\S+)\s*$")


def parse_facet_text(text: str) -> SimplicialComplex:
    """One facet per line, integers separated by commas and/or whitespace.

    An optional ``n=<int>`` header fixes the ground set; otherwise it is the
    largest vertex seen.  Blank lines and ``#`` comments are ignored.  An empty
    facet is written as ``{}`` or ``()``.
    """
    n = None
    facets: list[list[int]] = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        m = _HEADER.match(line)
        if m:
            if n is not None or facets:
                raise ParseError("the n= header must come first, once", lineno)
            try:
                n = int(m.group(1))
            except ValueError:
                raise ParseError(f"bad vertex count {m.group(1)!r}", lineno) from None
            if n < 1:
                raise ParseError("n must be positive", lineno)
            continue
        if line in ("{}", "()", "[]"):
            facets.append([])
            continue
        verts = []
        for tok in re.split(r"[,\s]+", line.strip("{}()[] ")):
            if not tok:
                continue
            try:
                v = int(tok)
            except ValueError:
                raise ParseError(f"not an integer: {tok!r}", lineno) from None
            if v < 1:
                raise ParseError(f"vertices must be positive, got {v}", lineno)
            if n is not None and v > n:
                raise ParseError(f"vertex {v} exceeds n = {n}", lineno)
            verts.append(v)
        facets.append(verts)
    if n is None:
        if not any(facets):
            raise ParseError("cannot infer n without vertices; add an n= header")
        n = max(max(f) for f in facets if f)
    try:
        return SimplicialComplex.from_facets(n, facets)
    except ValueError as e:
        raise ParseError(str(e)) from None


def complex_from_json(obj) -> SimplicialComplex:
    if not isinstance(obj, dict) or "facets" not in obj:
        raise ParseError('expected an object {"n": int, "facets": [[int, ...], ...]}')
    facets = obj["facets"]
    if not isinstance(facets, list) or not all(isinstance(f, list) for f in facets):
        raise ParseError("facets must be a list of lists")
    for f in facets:
        for v in f:
            if not isinstance(v, int) or isinstance(v, bool) or v < 1:
                raise ParseError(f"bad vertex {v!r}")
    n = obj.get("n")
    if n is None:
        if not any(facets):
            raise ParseError("cannot infer n without vertices")
        n = max(max(f) for f in facets if f)
    if not isinstance(n, int) or isinstance(n, bool):
        raise ParseError(f"bad n {n!r}")
    try:
        return SimplicialComplex.from_facets(n, facets)
    except ValueError as e:
        raise ParseError(str(e)) from None


def parse_complex_json(text: str) -> SimplicialComplex:
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as e:
        raise ParseError(f"invalid JSON: {e.msg}", e.lineno) from None
    return complex_from_json(obj)


def complex_to_json(cx: SimplicialComplex) -> dict:
    return {"n": cx.n, "facets": cx.facet_lists()}


def complex_to_text(cx: SimplicialComplex) -> str:
    lines = [f"n={cx.n}"]
    for f in cx.facet_lists():
        lines.append(" ".join(map(str, f)) if f else "{}")
    return "\n".join(lines) + "\n"


def parse_generator(spec: str) -> SimplicialComplex:
    """``gen:<name>[:<int>...]``, e.g. gen:cyclic:8:4."""
    parts = spec.split(":")
    if parts[0] != "gen" or len(parts) < 2:
        raise ParseError(f"not a generator spec: {spec!r}")
    try:
        params = [int(x) for x in parts[2:]]
    except ValueError:
        raise ParseError(f"generator parameters must be integers: {spec!r}") from None
    try:
        return named(parts[1], *params)
    except (KeyError, ValueError) as e:
        raise ParseError(str(e).strip("'\"")) from None


def load_complex(source: str) -> SimplicialComplex:
    """A generator spec, a JSON file, a facet text file, or ``-`` for stdin text."""
    if source.startswith("gen:"):
        return parse_generator(source)
    if source == "-":
        import sys
        text = sys.stdin.read()
    else:
        try:
            text = Path(source).read_text()
        except OSError as e:
            raise ParseError(f"cannot read {source}: {e.strerror}") from None
    head = text.lstrip()
    if head.startswith("{") and not head.startswith("{}"):
        return parse_complex_json(text)
    return parse_facet_text(text)
