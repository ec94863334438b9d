"""Surplus patterns and the triangulation -> pentagulation transformation.

A pentagulation of an n-gon with degree surplus ``d`` has a dual in which
every vertex has degree 5 except one of degree ``n``, with ``d`` extra
"missing" edges inside non-triangular faces.  Re-inserting those chords gives
a triangulation on ``n + 7 + 2d`` vertices whose exceptional vertices form one
of a small number of labelled subgraphs (the catalog below).  Going the other
way, deleting the subgraph's edges and dualising yields a candidate
pentagulation, which still has to be validated.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from itertools import combinations
from typing import Iterable

from .plane_graph import (
    CanonicalCode,
    PlaneGraph,
    PlaneGraphError,
    canonical_code,
    dual,
    is_three_connected,
    remove_edges,
)

__all__ = [
    "SurplusPattern",
    "UnsupportedSurplus",
    "DegreeInfeasible",
    "PreconditionViolated",
    "PentagulationRecord",
    "Rejection",
    "pattern_catalog",
    "find_pattern_occurrences",
    "find_normalizing_edge_sets",
    "derive_pentagulation",
    "derive_all",
]

Edge = tuple[int, int]
EdgeSet = tuple[Edge, ...]


class UnsupportedSurplus(ValueError):
    pass


class DegreeInfeasible(ValueError):
    pass


class PreconditionViolated(ValueError):
    pass


# -- catalog ------------------------------------------------------------------

# A degree is an int or ("n", k) meaning n + k.
N0, N1, N2, N3 = ("n", 0), ("n", 1), ("n", 2), ("n", 3)


def _path(*degs):
    return ("path", degs)


def _claw(center, *leaves):
    return ("claw", (center,) + leaves)


def _triangle(*degs):
    return ("triangle", degs)


def _vertex(deg):
    return ("vertex", (deg,))


_CATALOG = {
    1: [
        ("P1.i", [_path(6, 6), _vertex(N0)]),
        ("P1.ii", [_path(N1, 6)]),
    ],
    2: [
        ("T2.i", [_path(6, 6), _path(6, 6), _vertex(N0)]),
        ("T2.ii", [_path(6, 7, 6), _vertex(N0)]),
        ("T2.iii", [_path(6, 6), _path(6, N1)]),
        ("T2.iv", [_path(6, 7, N1)]),
        ("T2.v", [_path(6, N2, 6)]),
    ],
    3: [
        ("T3.1i", [_path(6, 7, 7, 6), _vertex(N0)]),
        ("T3.1ii", [_path(N1, 7, 7, 6)]),
        ("T3.1iii", [_path(6, N2, 7, 6)]),
        ("T3.2i", [_path(6, 7, 6), _path(6, 6), _vertex(N0)]),
        ("T3.2ii", [_path(N1, 7, 6), _path(6, 6)]),
        ("T3.2iii", [_path(6, N2, 6), _path(6, 6)]),
        ("T3.2iv", [_path(6, 7, 6), _path(N1, 6)]),
        ("T3.3i", [_path(6, 6), _path(6, 6), _path(6, 6), _vertex(N0)]),
        ("T3.3ii", [_path(N1, 6), _path(6, 6), _path(6, 6)]),
        ("T3.4i", [_claw(8, 6, 6, 6), _vertex(N0)]),
        ("T3.4ii", [_claw(8, N1, 6, 6)]),
        ("T3.4iii", [_claw(N3, 6, 6, 6)]),
        ("T3.5i", [_triangle(7, 7, 7), _vertex(N0)]),
        ("T3.5ii", [_triangle(7, 7, N2)]),
    ],
}


def _eval(deg, n: int) -> int:
    return n + deg[1] if isinstance(deg, tuple) else deg


def _expr(deg) -> str:
    if isinstance(deg, tuple):
        return "n" if deg[1] == 0 else f"n+{deg[1]}"
    return str(deg)


@dataclass(frozen=True)
class SurplusPattern:
    """One labelled subgraph type, instantiated at a particular ``n``.

    Nodes are labelled ``a, b, c, ...`` in catalog order.  ``components``
    lists the node labels of each vertex-disjoint part; occurrences map nodes
    to distinct vertices, which makes the parts disjoint automatically.
    """

    id: str
    n: int
    surplus: int
    nodes: tuple[tuple[str, int], ...]
    degree_exprs: tuple[str, ...]
    edges_to_remove: tuple[tuple[str, str], ...]
    components: tuple[tuple[str, ...], ...]
    collides_with: tuple[str, ...] = ()

    @property
    def degree_multiset(self) -> Counter:
        """Non-5 degrees a host triangulation must have (all others are 5)."""
        return Counter(d for _, d in self.nodes if d != 5)

    @property
    def degenerate_nodes(self) -> tuple[str, ...]:
        """Nodes whose required degree is 5, hence not told apart by degree."""
        return tuple(lab for lab, d in self.nodes if d == 5)

    def describe(self) -> str:
        exprs = dict(zip((lab for lab, _ in self.nodes), self.degree_exprs))
        parts = ["-".join(exprs[lab] for lab in comp) for comp in self.components]
        return f"{self.id}: " + " + ".join(parts)


def _instantiate(pid: str, comps, n: int, surplus: int) -> SurplusPattern:
    nodes, exprs, edges, components = [], [], [], []
    for kind, degs in comps:
        labels = []
        for d in degs:
            lab = chr(ord("a") + len(nodes))
            nodes.append((lab, _eval(d, n)))
            exprs.append(_expr(d))
            labels.append(lab)
        if kind == "path":
            edges += list(zip(labels, labels[1:]))
        elif kind == "claw":
            edges += [(labels[0], leaf) for leaf in labels[1:]]
        elif kind == "triangle":
            edges += [(labels[0], labels[1]), (labels[1], labels[2]), (labels[2], labels[0])]
        components.append(tuple(labels))
    return SurplusPattern(
        id=pid,
        n=n,
        surplus=surplus,
        nodes=tuple(nodes),
        degree_exprs=tuple(exprs),
        edges_to_remove=tuple(edges),
        components=tuple(components),
    )


def _check_pattern(p: SurplusPattern) -> None:
    removed = Counter()
    for u, v in p.edges_to_remove:
        removed[u] += 1
        removed[v] += 1
    after = [d - removed[lab] for lab, d in p.nodes]
    assert len(p.edges_to_remove) == p.surplus, p.id
    assert all(x in (5, p.n) for x in after), p.id
    assert after.count(p.n) >= 1 or p.n == 5, p.id


def pattern_catalog(surplus: int, n: int) -> list[SurplusPattern]:
    """The 2 / 5 / 14 subgraph types for surplus 1 / 2 / 3 at a given ``n``.

    Entries whose degree multisets coincide at this ``n`` are kept separate
    and cross-referenced in ``collides_with``.
    """
    if surplus not in _CATALOG:
        raise UnsupportedSurplus(f"no catalog for surplus {surplus}")
    if n < 3:
        raise ValueError("n must be at least 3")
    pats = [_instantiate(pid, comps, n, surplus) for pid, comps in _CATALOG[surplus]]
    for p in pats:
        _check_pattern(p)
    keyed = [(p, sorted(p.degree_multiset.elements())) for p in pats]
    out = []
    for p, key in keyed:
        others = tuple(q.id for q, k in keyed if q.id != p.id and k == key)
        out.append(SurplusPattern(**{**p.__dict__, "collides_with": others}))
    return out


# -- occurrences -------------------------------------------------------------

def _norm_edge(u: int, v: int) -> Edge:
    return (u, v) if u < v else (v, u)


def _exceptional(g: PlaneGraph) -> Counter:
    return Counter(d for d in g.degrees if d != 5)


def find_pattern_occurrences(h: PlaneGraph, pattern: SurplusPattern) -> list[EdgeSet]:
    """All occurrences of ``pattern`` in ``h``, as distinct removable edge sets.

    An occurrence maps the pattern nodes injectively to vertices of exactly
    the required degrees such that every pattern edge is an edge of ``h``;
    ``h`` must carry no other non-5 vertices.
    """
    if _exceptional(h) != pattern.degree_multiset:
        return []
    labels = [lab for lab, _ in pattern.nodes]
    want = dict(pattern.nodes)
    adj_req: dict[str, list[str]] = {lab: [] for lab in labels}
    for u, v in pattern.edges_to_remove:
        adj_req[u].append(v)
        adj_req[v].append(u)
    by_degree: dict[int, list[int]] = {}
    for v, d in enumerate(h.degrees):
        by_degree.setdefault(d, []).append(v)

    found: set[EdgeSet] = set()
    assign: dict[str, int] = {}
    used: set[int] = set()

    def rec(k: int) -> None:
        if k == len(labels):
            es = tuple(sorted(_norm_edge(assign[u], assign[v]) for u, v in pattern.edges_to_remove))
            found.add(es)
            return
        lab = labels[k]
        placed = [assign[o] for o in adj_req[lab] if o in assign]
        if placed:
            cands = [w for w in h.neighbors(placed[0]) if h.degree(w) == want[lab]]
        else:
            cands = by_degree.get(want[lab], [])
        for w in cands:
            if w in used or any(not h.has_edge(w, p) for p in placed):
                continue
            assign[lab] = w
            used.add(w)
            rec(k + 1)
            used.discard(w)
            del assign[lab]

    rec(0)
    return sorted(found)


def _special_candidates(h: PlaneGraph, n: int) -> list[tuple[int, int]]:
    """(special vertex, surplus) pairs compatible with degrees {5,...,5,n}."""
    degs = h.degrees
    if n == 5:
        if min(degs) < 5:
            return []
        total = sum(d - 5 for d in degs)
        return [(-1, total // 2)] if total % 2 == 0 else []
    low = [v for v, d in enumerate(degs) if d < 5]
    out = []
    for s, ds in enumerate(degs):
        if ds < n or any(v != s for v in low):
            continue
        total = sum(d - 5 for d in degs) - (ds - 5) + (ds - n)
        if total % 2 == 0:
            out.append((s, total // 2))
    return out


def find_normalizing_edge_sets(h: PlaneGraph, n: int) -> list[EdgeSet]:
    """Every edge set whose deletion leaves degree 5 everywhere except one
    vertex of degree ``n`` (for ``n == 5``: degree 5 everywhere)."""
    cands = _special_candidates(h, n)
    if not cands:
        raise DegreeInfeasible(f"degrees of h cannot be reduced to 5s and one {n}")
    degs = h.degrees
    found: set[EdgeSet] = set()
    for s, d in cands:
        excess = [deg - 5 for deg in degs]
        if s >= 0:
            excess[s] = degs[s] - n
        active = [v for v in range(len(degs)) if excess[v] > 0]
        if sum(excess[v] for v in active) != 2 * d:
            continue
        chosen: list[Edge] = []

        # Saturate the first vertex with remaining excess by a combination of
        # its still-open neighbours; each edge set is produced exactly once.
        def rec() -> None:
            v = next((u for u in active if excess[u] > 0), None)
            if v is None:
                found.add(tuple(sorted(chosen)))
                return
            need = excess[v]
            open_nbrs = [w for w in h.neighbors(v) if excess[w] > 0]
            excess[v] = 0
            for combo in combinations(open_nbrs, need):
                for w in combo:
                    excess[w] -= 1
                    chosen.append(_norm_edge(v, w))
                rec()
                for w in combo:
                    excess[w] += 1
                    chosen.pop()
            excess[v] = need

        rec()
    return sorted(found)


# -- pentagulations ------------------------------------------------------------

@dataclass(frozen=True)
class PentagulationRecord:
    """A validated 3-connected pentagulation of an n-gon.

    ``outer_face`` indexes ``graph.faces``; for ``n == 5`` it is the marked
    pentagon and ``code`` is rooted at it.
    """

    graph: PlaneGraph
    n: int
    p: int
    surplus: int
    outer_face: int
    code: CanonicalCode
    source_code: CanonicalCode
    removed_edges: EdgeSet

    def check_arithmetic(self) -> None:
        """Raise ValueError unless the edge, vertex and surplus identities hold."""
        g, n, p = self.graph, self.n, self.p
        checks = {
            "2E=5p+n": 2 * g.edge_count == 5 * p + n,
            "2V=3p+n+2": 2 * g.vertex_count == 3 * p + n + 2,
            "p-n=2(d+3)": p - n == 2 * (self.surplus + 3),
            "sum(deg-3)=d": sum(d - 3 for d in g.degrees) == self.surplus,
        }
        failed = [k for k, ok in checks.items() if not ok]
        if failed:
            raise ValueError(f"pentagulation arithmetic fails: {', '.join(failed)}")


@dataclass(frozen=True)
class Rejection:
    """Why a normalizing edge set did not yield a valid pentagulation."""

    reason: str
    removed_edges: EdgeSet


def _face_of_vertex(dg: PlaneGraph, f: PlaneGraph, v: int) -> int:
    """Index of the face of ``dg = dual(f)`` that surrounds vertex ``v`` of ``f``."""
    around = {f.face_of_dart(v, w) for w in f.neighbors(v)}
    for i, face in enumerate(dg.faces):
        if set(face) == around:
            return i
    raise AssertionError("dual face not found")


def derive_pentagulation(
    h: PlaneGraph, edges: Iterable[Edge], n: int, special: int | None = None
) -> PentagulationRecord | Rejection:
    """Delete ``edges`` from ``h`` and dualise; validate the result.

    ``special`` picks the vertex whose dual face is the n-gon; it is only
    needed for ``n == 5``, where every vertex qualifies.
    """
    es = tuple(sorted(_norm_edge(*e) for e in edges))
    removed = Counter()
    for u, v in es:
        removed[u] += 1
        removed[v] += 1
    after = [d - removed[v] for v, d in enumerate(h.degrees)]
    odd = [v for v, d in enumerate(after) if d != 5]
    if n == 5:
        if odd:
            raise PreconditionViolated("edge set does not normalise degrees to 5")
        if special is None:
            special = 0
    else:
        if len(odd) != 1 or after[odd[0]] != n:
            raise PreconditionViolated(f"edge set does not leave exactly one vertex of degree {n}")
        special = odd[0]
    try:
        f = remove_edges(h, es)
    except PlaneGraphError as exc:
        return Rejection(f"removal: {exc}", es)
    try:
        g = dual(f)
    except PlaneGraphError as exc:
        return Rejection(f"dual: {exc}", es)
    if not is_three_connected(g):
        return Rejection("dual is not 3-connected", es)
    outer = _face_of_vertex(g, f, special)
    sizes = g.face_sizes
    if sizes[outer] != n or any(s != 5 for i, s in enumerate(sizes) if i != outer):
        return Rejection("face sizes are not all 5 except one n-gon", es)
    p = g.face_count - 1
    if p != n + 6 + 2 * len(es):
        return Rejection("pentagon count mismatch", es)
    code = canonical_code(g, root_face=outer if n == 5 else None)
    rec = PentagulationRecord(
        graph=g,
        n=n,
        p=p,
        surplus=len(es),
        outer_face=outer,
        code=code,
        source_code=canonical_code(h),
        removed_edges=es,
    )
    rec.check_arithmetic()
    return rec


def derive_all(h: PlaneGraph, n: int) -> tuple[list[EdgeSet], list[PentagulationRecord | Rejection]]:
    """Normalizing sets of ``h`` and the outcome of each (all markings for n=5)."""
    try:
        sets = find_normalizing_edge_sets(h, n)
    except DegreeInfeasible:
        return [], []
    results: list = []
    for es in sets:
        if n == 5:
            for v in range(h.vertex_count):
                results.append(derive_pentagulation(h, es, n, special=v))
        else:
            results.append(derive_pentagulation(h, es, n))
    return sets, results
