import sys
from pathlib import Path

from hypothesis import settings, strategies as st

sys.path.insert(0, str(Path(__file__).parent))

from cmcomplex import SimplicialComplex  # noqa: E402

settings.register_profile("default", max_examples=60, deadline=None)
settings.load_profile("default")


@st.composite
def complexes(draw, max_n=6, min_n=1, allow_empty_simplex=True):
    """Non-void complexes on [n] built from random facet lists."""
    n = draw(st.integers(min_n, max_n))
    facet = st.sets(st.integers(1, n), min_size=0 if allow_empty_simplex else 1, max_size=n)
    facets = draw(st.lists(facet, min_size=1, max_size=8))
    return SimplicialComplex.from_facets(n, facets)


def face_sets(cx):
    """The faces of ``cx`` as frozensets of vertex labels."""
    return {frozenset(v for v in range(1, 64) if F >> (v - 1) & 1) for F in cx.faces()}


def masks_to_sets(masks):
    return {frozenset(v for v in range(1, 64) if F >> (v - 1) & 1) for F in masks}


# -- acceptance summary: one PASS/FAIL line per numbered criterion --------------------------

_criteria: dict[int, list[tuple[str, bool, float]]] = {}


def pytest_runtest_logreport(report):
    if "test_criterion_" not in report.nodeid:
        return
    if report.when == "call" or (report.when == "setup" and report.failed):
        name = report.nodeid.split("::")[-1]
        num = int(name.split("_")[2])
        _criteria.setdefault(num, []).append((name, report.passed, report.duration))


def pytest_terminal_summary(terminalreporter):
    if not _criteria:
        return
    terminalreporter.section("acceptance criteria")
    for num in sorted(_criteria):
        runs = _criteria[num]
        ok = all(passed for _, passed, _ in runs)
        secs = sum(d for _, _, d in runs)
        label = runs[0][0].split("[")[0].split("_", 3)[3].replace("_", " ")
        terminalreporter.write_line(f"criterion {num:2d}: {'PASS' if ok else 'FAIL'}  "
                                    f"({secs:.2f}s)  {label}")
