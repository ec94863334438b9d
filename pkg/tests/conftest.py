"""Shared fixtures.

The expensive searches (Pg for n = 3..12, the round-trip corpus) run once per
session and are reused by the unit and acceptance tests.
"""

from __future__ import annotations

import contextlib
import re

import pytest

from pentagulation import pg_search
from pentagulation.generator import DegreeSpec, enumerate_triangulations
from pentagulation.plane_graph import canonical_code

# The two triangulations with degree sequence (6,6,6,6), letters a..p.
ASCII_GRAPH_1 = (
    "bcdef,afghc,abhijd,acjke,adklmf,aemgb,bfmnoh,bgoic,chopj,cipkd,"
    "djple,ekpnm,elngf,gmlpo,gnpih,ionlkj;"
)
ASCII_GRAPH_2 = (
    "bcdef,afghc,abhid,acijke,adklmf,aemgb,bfmnh,bgnoic,chojd,diopk,"
    "djple,ekpnm,elngf,gmlpoh,hnpji,jonlk."
)

PG_TABLE = {3: 15, 4: 14, 5: 11, 6: 16, 7: 19, 8: 18, 9: 21, 10: 22, 11: 23, 12: 24}
CLASS_TABLE = {3: 3, 4: 1, 5: 1, 6: 1, 7: 3, 8: 1, 9: 4, 10: 3, 11: 1, 12: 1}

_CRITERIA_KEY = pytest.StashKey[dict]()


def pytest_addoption(parser):
    parser.addoption(
        "--extended", action="store_true", default=False,
        help="also run long searches (Pg(13) with surplus up to 3)",
    )


def pytest_configure(config):
    config.stash[_CRITERIA_KEY] = {}


def pytest_collection_modifyitems(config, items):
    if config.getoption("--extended"):
        return
    skip = pytest.mark.skip(reason="needs --extended")
    store = config.stash[_CRITERIA_KEY]
    for item in items:
        if "extended" in item.keywords:
            item.add_marker(skip)
            m = re.match(r"test_criterion_(\d+)", item.name)
            if m:
                store[m.group(1)] = f"criterion {m.group(1)}: SKIP (run with --extended)"


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    lines = config.stash[_CRITERIA_KEY]
    if not lines:
        return
    terminalreporter.section("acceptance criteria")
    for key in sorted(lines):
        terminalreporter.write_line(lines[key])


@pytest.fixture
def criterion(request):
    """Context manager recording one PASS/FAIL line for an acceptance criterion."""
    store = request.config.stash[_CRITERIA_KEY]

    @contextlib.contextmanager
    def record(key: str, title: str):
        try:
            yield
        except BaseException as exc:
            if isinstance(exc, pytest.skip.Exception):
                store[key] = f"criterion {key}: SKIP {title}"
            else:
                store[key] = f"criterion {key}: FAIL {title} ({type(exc).__name__})"
            print(store[key])
            raise
        store[key] = f"criterion {key}: PASS {title}"
        print(store[key])

    return record


class TriangulationPool:
    """Distinct triangulations seen by the acceptance searches."""

    def __init__(self):
        self.graphs: dict[bytes, object] = {}

    def add(self, g) -> None:
        self.graphs.setdefault(canonical_code(g), g)

    def extend(self, graphs) -> None:
        for g in graphs:
            self.add(g)

    def __len__(self) -> int:
        return len(self.graphs)

    def __iter__(self):
        return iter(self.graphs.values())


@pytest.fixture(scope="session")
def pool() -> TriangulationPool:
    return TriangulationPool()


@pytest.fixture(scope="session")
def pg_results(pool):
    """compute_pg(n, 3) for n = 3..12, feeding every triangulation into ``pool``."""
    return {n: pg_search.compute_pg(n, 3, on_triangulation=pool.add) for n in range(3, 13)}


@pytest.fixture(scope="session")
def roundtrip_corpus():
    """Generator output with at most 14 vertices, over 10^4 graphs.

    All triangulations on 4..12 vertices, plus those with minimum degree 4
    on 13 and 14 vertices.
    """
    graphs = []
    for v in range(4, 13):
        graphs += enumerate_triangulations(DegreeSpec.unconstrained(v))
    for v in (13, 14):
        graphs += enumerate_triangulations(DegreeSpec.unconstrained(v, min_degree=4))
    return graphs
