"""Command-line entry point.  Every command prints JSON on stdout.

Exit codes: 0 success, 2 parse/usage error, 3 equivalent routes disagreed.
"""
from __future__ import annotations

import argparse
import json
import sys
from concurrent.futures import ProcessPoolExecutor
from typing import Sequence

from .classify import (TABLE_CAP, RouteDisagreement, _require_nonvoid, ab_design_route,
                       ab_duality_applies, classify, is_conjecture_candidate,
                       lcm_design_definition_route, lcm_design_theorem_route)
from .complex import SimplicialComplex, mask_of, vertices_of
from .designs import ab_design_lambda, block_design_check, lcm_design_lambda
from .enriched import SizeCapError, enriched_cohomology, enriched_homology, girth
from .io import ParseError, complex_from_json, complex_to_json, complex_to_text, load_complex
from .linalg import FieldSpec

EXIT_OK, EXIT_PARSE, EXIT_DISAGREE = 0, 2, 3


def _field(text: str) -> FieldSpec:
    try:
        return FieldSpec.parse(text)
    except ValueError as e:
        raise argparse.ArgumentTypeError(str(e)) from None


def _vertex_list(text: str) -> list[int]:
    text = text.strip()
    if not text:
        return []
    try:
        return [int(t) for t in text.replace(",", " ").split()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}") from None


def _subset(cx: SimplicialComplex, verts: list[int]) -> int:
    m = mask_of(verts)
    if m & ~cx.ground:
        raise ParseError(f"vertices {verts} not in the ground set 1..{cx.n}")
    return m


def _emit(obj) -> None:
    sys.stdout.write(json.dumps(obj, sort_keys=False) + "\n")


def _lam(x):
    if x is None:
        return None
    return int(x) if x.denominator == 1 else str(x)


# -- commands ------------------------------------------------------------------------

def cmd_classify(args) -> int:
    cx = load_complex(args.input)
    _emit(classify(cx, args.field, args.max_l).to_json())
    return EXIT_OK


def cmd_enriched(args) -> int:
    cx = load_complex(args.input)
    fn = enriched_homology if args.kind == "homology" else enriched_cohomology
    if args.p is None:
        degrees = range(-1, cx.dim + 1) if not cx.is_void else range(0)
        _emit([fn(cx, p, args.field).to_json() for p in degrees])
    else:
        _emit(fn(cx, args.p, args.field).to_json())
    return EXIT_OK


def cmd_girth(args) -> int:
    _emit(girth(load_complex(args.input), args.field))
    return EXIT_OK


def cmd_fvector(args) -> int:
    _emit(list(load_complex(args.input).f_vector()))
    return EXIT_OK


def _print_complex(cx: SimplicialComplex, fmt: str) -> None:
    if fmt == "text":
        sys.stdout.write(complex_to_text(cx))
    else:
        _emit(complex_to_json(cx))


def cmd_dual(args) -> int:
    _print_complex(load_complex(args.input).alexander_dual(), args.format)
    return EXIT_OK


def cmd_link(args) -> int:
    cx = load_complex(args.input)
    _print_complex(cx.link(_subset(cx, args.face)), args.format)
    return EXIT_OK


def cmd_restrict(args) -> int:
    cx = load_complex(args.input)
    _print_complex(cx.restriction(_subset(cx, args.set)), args.format)
    return EXIT_OK


def cmd_gen(args) -> int:
    spec = args.spec if args.spec.startswith("gen:") else "gen:" + args.spec
    _print_complex(load_complex(spec), args.format)
    return EXIT_OK


def _parse_check(text: str) -> tuple[str, tuple[int, ...]]:
    kind, _, rest = text.partition(":")
    try:
        vals = tuple(int(x) for x in rest.split(","))
    except ValueError:
        raise ParseError(f"bad --check value {text!r}") from None
    want = {"lcm": 1, "ab": 2, "block": 1}
    if kind not in want or len(vals) != want[kind]:
        raise ParseError("--check must be lcm:<l>, ab:<a>,<b> or block:<t>")
    return kind, vals


def design_verdict(cx: SimplicialComplex, check: str, field: FieldSpec) -> tuple[dict, bool]:
    """JSON verdict and whether the routes agreed."""
    kind, vals = _parse_check(check)
    out: dict = {"check": check, "field": str(field), "n": cx.n}
    agree = True
    if kind == "block":
        (t,) = vals
        lam = block_design_check(cx, t)
        out.update(holds=lam is not None, t=t, **{"lambda": lam})
        return out, agree
    _require_nonvoid(cx)
    if kind == "lcm":
        (l,) = vals
        if not 1 <= l <= cx.n:
            raise ParseError(f"need 1 <= l <= n = {cx.n}")
        v = lcm_design_definition_route(cx, l, field)
        routes = {"definition": v.holds}
        if cx.n <= TABLE_CAP:
            routes["girth_vanishing"] = lcm_design_theorem_route(cx, l, field).holds
        else:
            routes["girth_vanishing"] = "skipped: size cap"
        t = l - 1
        lam = lcm_design_lambda(cx.n, cx.d, cx.c, l) if v.holds else None
    else:
        a, b = vals
        if a < 0 or b < 0 or a + b > cx.n:
            raise ParseError("need a, b >= 0 and a + b <= n")
        v = ab_design_route(cx, a, b, field)
        routes = {"direct": v.holds}
        if ab_duality_applies(cx, a, b):
            routes["dual"] = ab_design_route(cx.alexander_dual(), b, a, field).holds
        else:
            routes["dual"] = "skipped: degenerate dual"
        t = a + b
        lam = ab_design_lambda(cx.n, cx.d, cx.c, a, b) if v.holds else None
    bools = [x for x in routes.values() if isinstance(x, bool)]
    agree = len(set(bools)) <= 1
    counted = block_design_check(cx, t) if cx.is_pure and t <= cx.d else None
    out.update(holds=v.holds, routes=routes, agree=agree, t=t,
               **{"lambda": _lam(lam), "lambda_counted": counted},
               witness=v.witness_json())
    if v.holds and lam is not None and counted != lam:
        agree = False
        out["agree"] = False
    return out, agree


def cmd_design(args) -> int:
    cx = load_complex(args.input)
    out, agree = design_verdict(cx, args.check, args.field)
    _emit(out)
    return EXIT_OK if agree else EXIT_DISAGREE


# -- batch ---------------------------------------------------------------------------

def _batch_one(job: tuple[int, str, str, int | None, int | None]) -> dict:
    lineno, line, field_text, max_l, conj = job
    rec: dict = {"line": lineno}
    try:
        field = FieldSpec.parse(field_text)
        try:
            obj = json.loads(line)
        except json.JSONDecodeError as e:
            raise ParseError(f"invalid JSON: {e.msg}") from None
        cx = complex_from_json(obj)
        if conj is not None:
            rec["candidate"] = is_conjecture_candidate(cx, conj, field)
        else:
            rec["report"] = classify(cx, field, max_l).to_json()
    except RouteDisagreement as e:
        rec["error"] = f"route disagreement: {e}"
        rec["disagreement"] = True
    except (ValueError, SizeCapError) as e:
        rec["error"] = str(e)
    return rec


def run_batch(lines: Sequence[str], field: FieldSpec, max_l=None, conjecture=None,
              jobs: int = 1) -> list[dict]:
    jobs_in = [(i, ln, str(field), max_l, conjecture)
               for i, ln in enumerate(lines, 1) if ln.strip()]
    if jobs <= 1:
        return [_batch_one(j) for j in jobs_in]
    with ProcessPoolExecutor(max_workers=jobs) as ex:
        return list(ex.map(_batch_one, jobs_in, chunksize=max(1, len(jobs_in) // (8 * jobs))))


def cmd_batch(args) -> int:
    try:
        with open(args.corpus) as fh:
            lines = fh.read().splitlines()
    except OSError as e:
        raise ParseError(f"cannot read {args.corpus}: {e.strerror}") from None
    records = run_batch(lines, args.field, args.max_l, args.conjecture, args.jobs)
    out = open(args.output, "w") if args.output else sys.stdout
    try:
        for r in records:
            out.write(json.dumps(r) + "\n")
        if args.conjecture is not None:
            cands = [r["line"] for r in records if r.get("candidate")]
            out.write(json.dumps({"conjecture": {"l": args.conjecture, "candidates": cands}}) + "\n")
    finally:
        if out is not sys.stdout:
            out.close()
    return EXIT_DISAGREE if any(r.get("disagreement") for r in records) else EXIT_OK


# -- parser --------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="cmcomplex",
                                 description="Cohen-Macaulay classification of simplicial complexes")
    sub = ap.add_subparsers(dest="command", required=True)

    def add(name, fn, help_, inp=True):
        p = sub.add_parser(name, help=help_)
        if inp:
            p.add_argument("input", help="facet file, JSON file, '-' or gen:<name>[:<params>]")
        p.add_argument("--field", type=_field, default=FieldSpec(), help="q (default) or gf:<p>")
        p.set_defaults(func=fn)
        return p

    p = add("classify", cmd_classify, "full classification report")
    p.add_argument("--max-l", type=int, default=None)
    p = add("enriched", cmd_enriched, "enriched (co)homology dimension table")
    p.add_argument("--p", type=int, default=None, help="degree; all degrees if omitted")
    p.add_argument("--kind", choices=("homology", "cohomology"), default="homology")
    add("girth", cmd_girth, "girth")
    add("fvector", cmd_fvector, "f-vector")
    for name, fn, extra in (("dual", cmd_dual, None), ("link", cmd_link, "face"),
                            ("restrict", cmd_restrict, "set")):
        p = add(name, fn, f"{name} of the complex")
        if extra:
            p.add_argument(f"--{extra}", type=_vertex_list, required=True,
                           help="comma-separated vertices")
        p.add_argument("--format", choices=("json", "text"), default="json")
    p = add("design", cmd_design, "design checks with lambda")
    p.add_argument("--check", required=True, help="lcm:<l> | ab:<a>,<b> | block:<t>")
    p = add("batch", cmd_batch, "classify a JSONL corpus", inp=False)
    p.add_argument("corpus")
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--max-l", type=int, default=None)
    p.add_argument("--conjecture", type=int, default=None, metavar="L",
                   help="only flag conjecture candidates for this l")
    p.add_argument("--output", default=None)
    p = add("gen", cmd_gen, "print a named complex", inp=False)
    p.add_argument("spec", help="e.g. torus7, cyclic:8:4")
    p.add_argument("--format", choices=("json", "text"), default="json")
    return ap


def main(argv: Sequence[str] | None = None) -> int:
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as e:
        return EXIT_PARSE if e.code else EXIT_OK
    try:
        return args.func(args)
    except ParseError as e:
        sys.stderr.write(json.dumps({"error": "parse", "message": str(e), "line": e.line}) + "\n")
        return EXIT_PARSE
    except RouteDisagreement as e:
        sys.stderr.write(json.dumps({"error": "route disagreement", "message": str(e)}) + "\n")
        return EXIT_DISAGREE
    except (ValueError, SizeCapError) as e:
        sys.stderr.write(json.dumps({"error": "invalid input", "message": str(e)}) + "\n")
        return EXIT_PARSE


if __name__ == "__main__":
    sys.exit(main())
