"""Minimal pentagulations of an n-gon: exhaustive search and explicit construction.

``compute_pg`` walks the surplus ``d = 0, 1, 2, ...``; for every admissible
degree specification it enumerates triangulations, deletes every normalizing
edge set and keeps the duals that are valid pentagulations.  The first ``d``
with a survivor fixes the minimum ``p = n + 6 + 2d``.
"""

from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass, field
from typing import Callable, Iterable

from .generator import DegreeSpec, enumerate_triangulations
from .patterns import (
    PentagulationRecord,
    derive_all,
    find_pattern_occurrences,
    pattern_catalog,
)
from .plane_graph import PlaneGraph, PlaneGraphError, is_three_connected

__all__ = [
    "SearchLogEntry",
    "PgResult",
    "PatternTally",
    "NoDecomposition",
    "ConstructionInvalid",
    "feasible_degree_specs",
    "search_spec",
    "compute_pg",
    "classify_minimal",
    "pattern_table",
    "decompose_5k3l",
    "construct_gn",
    "pg_upper_bound",
]


class NoDecomposition(ValueError):
    pass


class ConstructionInvalid(RuntimeError):
    pass


# -- degree specifications ---------------------------------------------------

def _partitions(total: int, largest: int | None = None) -> Iterable[tuple[int, ...]]:
    largest = total if largest is None else largest
    if total == 0:
        yield ()
        return
    for first in range(min(total, largest), 0, -1):
        for rest in _partitions(total - first, first):
            yield (first,) + rest


def _is_graphic(seq: tuple[int, ...]) -> bool:
    """Erdos-Gallai test for a non-increasing sequence."""
    if sum(seq) % 2:
        return False
    for k in range(1, len(seq) + 1):
        lhs = sum(seq[:k])
        rhs = k * (k - 1) + sum(min(x, k) for x in seq[k:])
        if lhs > rhs:
            return False
    return True


def feasible_degree_specs(n: int, d: int) -> list[DegreeSpec]:
    """Degree specifications of triangulations that can host surplus ``d``.

    The removed edges form a simple graph with ``d`` edges; its degree
    sequence is added on top of {n, 5, 5, ...}, either touching the n-vertex
    or not.  Only graphic excess sequences are kept.
    """
    if n < 3 or d < 0:
        raise ValueError("need n >= 3 and d >= 0")
    total = n + 7 + 2 * d
    seen: dict[tuple, DegreeSpec] = {}
    for part in _partitions(2 * d):
        if not _is_graphic(part):
            continue
        for a0 in sorted({0, *part}):
            rest = list(part)
            if a0:
                rest.remove(a0)
            degs = Counter({n + a0: 1})
            for a in rest:
                degs[5 + a] += 1
            spec = DegreeSpec.of(total, dict(degs))
            seen.setdefault(spec.exceptional, spec)
    return sorted(seen.values(), key=lambda s: s.exceptional)


# -- search --------------------------------------------------------------------

@dataclass(frozen=True)
class SearchLogEntry:
    d: int
    spec: DegreeSpec
    triangulations: int
    containing: int
    occurrences: int
    accepted: int

    def __str__(self) -> str:
        return (
            f"d={self.d} spec={self.spec} triangulations={self.triangulations} "
            f"containing={self.containing} occurrences={self.occurrences} accepted={self.accepted}"
        )


@dataclass
class PgResult:
    """Outcome of the minimal-pentagulation search for one ``n``.

    ``pg_value`` is None when nothing was found up to ``max_surplus``; then
    ``lower_bound`` holds the smallest pentagon count not yet excluded.
    """

    n: int
    pg_value: int | None
    surplus: int | None
    classes: list[PentagulationRecord]
    log: list[SearchLogEntry] = field(default_factory=list)
    lower_bound: int | None = None

    @property
    def exact(self) -> bool:
        return self.pg_value is not None

    def __str__(self) -> str:
        if self.exact:
            return f"Pg({self.n})={self.pg_value}, classes={len(self.classes)}"
        return f"Pg({self.n})>={self.lower_bound}"


TriangulationHook = Callable[[PlaneGraph], None]


def search_spec(
    n: int, d: int, spec: DegreeSpec, workers: int = 1, on_triangulation: TriangulationHook | None = None
) -> tuple[SearchLogEntry, dict[bytes, PentagulationRecord]]:
    """Run one degree specification; return its log line and accepted classes."""
    tris = enumerate_triangulations(spec, workers=workers)
    containing = occurrences = accepted = 0
    found: dict[bytes, PentagulationRecord] = {}
    for h in tris:
        if on_triangulation:
            on_triangulation(h)
        sets, results = derive_all(h, n)
        if sets:
            containing += 1
            occurrences += len(sets)
        for r in results:
            if isinstance(r, PentagulationRecord):
                accepted += 1
                found.setdefault(r.code, r)
    entry = SearchLogEntry(d, spec, len(tris), containing, occurrences, accepted)
    return entry, found


def _search_level(
    n: int,
    d: int,
    workers: int,
    on_entry: Callable[[SearchLogEntry], None] | None,
    on_triangulation: TriangulationHook | None = None,
) -> tuple[list[SearchLogEntry], list[PentagulationRecord]]:
    log, found = [], {}
    for spec in feasible_degree_specs(n, d):
        entry, recs = search_spec(n, d, spec, workers, on_triangulation)
        log.append(entry)
        if on_entry:
            on_entry(entry)
        for code, r in recs.items():
            found.setdefault(code, r)
    return log, [found[c] for c in sorted(found)]


def compute_pg(
    n: int,
    max_surplus: int = 3,
    workers: int = 1,
    on_entry: Callable[[SearchLogEntry], None] | None = None,
    on_triangulation: TriangulationHook | None = None,
) -> PgResult:
    """Minimum pentagon count over 3-connected pentagulations of an n-gon.

    Surplus levels are searched in order and the search stops at the first
    level with a valid pentagulation.  ``on_entry`` receives each log line,
    ``on_triangulation`` every triangulation examined.
    """
    if n < 3:
        raise ValueError("n must be at least 3")
    log: list[SearchLogEntry] = []
    for d in range(max_surplus + 1):
        entries, classes = _search_level(n, d, workers, on_entry, on_triangulation)
        log += entries
        if classes:
            return PgResult(n, n + 6 + 2 * d, d, classes, log)
    return PgResult(n, None, None, [], log, lower_bound=n + 8 + 2 * max_surplus)


def classify_minimal(n: int, d: int, workers: int = 1) -> list[PentagulationRecord]:
    """All pentagulations of surplus exactly ``d``, up to isomorphism."""
    return _search_level(n, d, workers, None)[1]


# -- per-pattern tallies ---------------------------------------------------------

@dataclass(frozen=True)
class PatternTally:
    """Triangulations with the pattern's degree set, and how many of them
    contain at least one occurrence of the pattern."""

    pattern_id: str
    n: int
    triangulations: int
    containing: int

    def __str__(self) -> str:
        if self.triangulations == 0:
            return "0"
        return f"{self.triangulations}({self.containing})"


def pattern_table(n: int, surplus: int, workers: int = 1) -> list[PatternTally]:
    """Tally every catalog pattern at ``n`` against the generated triangulations."""
    out = []
    for pat in pattern_catalog(surplus, n):
        total = n + 7 + 2 * surplus
        spec = DegreeSpec.of(total, dict(pat.degree_multiset))
        tris = enumerate_triangulations(spec, workers=workers)
        hit = sum(1 for h in tris if find_pattern_occurrences(h, pat))
        out.append(PatternTally(pat.id, n, len(tris), hit))
    return out


# -- explicit family -------------------------------------------------------------

def decompose_5k3l(n: int) -> tuple[int, int]:
    """Write ``n = 5k + 3l`` with ``l`` as small as possible."""
    for l in range(5):
        if n - 3 * l >= 0 and (n - 3 * l) % 5 == 0:
            return (n - 3 * l) // 5, l
    raise NoDecomposition(f"{n} is not of the form 5k+3l")


def _gn_layout(n: int, k: int) -> tuple[dict[tuple, int], dict[int, tuple[float, float]]]:
    missing_u = {5 * j for j in range(k)}
    idx: dict[tuple, int] = {}
    pos: dict[int, tuple[float, float]] = {}

    def add(key, radius, angle_steps):
        idx[key] = len(idx)
        t = 2 * math.pi * angle_steps / n
        pos[idx[key]] = (radius * math.cos(t), radius * math.sin(t))

    for i in range(n):
        add(("x", i), 4.0, i)
    for i in range(n):
        add(("y", i), 3.0, i)
    for i in range(n):
        add(("z", i), 2.5, i + 0.5)
    for i in range(n):
        if i not in missing_u:
            add(("u", i), 1.5, i + 0.5)
    add(("v",), 0.0, 0)
    return idx, pos


def _gn_edges(n: int, k: int, l: int) -> set[tuple[tuple, tuple]]:
    """Edge families of the construction, indices mod n."""
    hubs = {5 * j for j in range(k)}
    e: set[tuple[tuple, tuple]] = set()
    for i in range(n):
        j = (i + 1) % n
        e |= {(("x", i), ("x", j)), (("y", i), ("z", i)), (("z", i), ("y", j)), (("x", i), ("y", i))}
        if i not in hubs:
            e.add((("u", i), ("z", i)))
        if i not in hubs and (i + 1) % n not in hubs:
            e.add((("u", i), ("u", j)))
    for i in hubs:
        e |= {(("v",), ("z", i)), (("v",), ("u", (i + 1) % n)), (("v",), ("u", (i - 1) % n))}
    for j in range(1, l + 1):
        e.add((("v",), ("u", (5 * (k - 1) + 3 * j + 1) % n)))
    return e


def construct_gn(n: int) -> PlaneGraph:
    """Explicit 3-connected pentagulation of an n-gon, for ``n >= 13``.

    Built from an annular layout (outer n-cycle, two rings of connectors, an
    inner ring and a hub) whose straight-line drawing fixes the rotation
    system.
    """
    if n < 13:
        raise ValueError("the explicit family is defined for n >= 13")
    k, l = decompose_5k3l(n)
    idx, pos = _gn_layout(n, k)
    nbrs: dict[int, set[int]] = {i: set() for i in idx.values()}
    for a, b in _gn_edges(n, k, l):
        nbrs[idx[a]].add(idx[b])
        nbrs[idx[b]].add(idx[a])
    rot = []
    for v in range(len(idx)):
        x0, y0 = pos[v]
        ws = sorted(nbrs[v], key=lambda w: -math.atan2(pos[w][1] - y0, pos[w][0] - x0))
        rot.append(tuple(ws))
    try:
        g = PlaneGraph(rot)
    except PlaneGraphError as exc:
        raise ConstructionInvalid(str(exc)) from exc
    sizes = Counter(g.face_sizes)
    expected = Counter({5: 2 * n + k + l})
    expected[n] += 1
    if (
        g.vertex_count != 4 * n - k + 1
        or g.edge_count != 6 * n + l
        or sizes != expected
        or not is_three_connected(g)
    ):
        raise ConstructionInvalid(
            f"n={n}: V={g.vertex_count} E={g.edge_count} faces={dict(sizes)}"
        )
    return g


def pg_upper_bound(n: int) -> int:
    """Pentagon count of the explicit construction: ``2n + k + l``."""
    if n < 13:
        raise ValueError("the explicit family is defined for n >= 13")
    k, l = decompose_5k3l(n)
    return 2 * n + k + l
