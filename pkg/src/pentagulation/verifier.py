"""Computational checks of the structural lemmas behind the search.

Every check returns a :class:`LemmaReport` with the quantities it looked at
and one of three verdicts.  A sub-claim whose hypotheses are not met is
recorded as ``None`` rather than evaluated, so a report is "violated" only
when an applicable claim is false.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from enum import Enum
from typing import Iterable, Sequence

import networkx as nx

from .generator import DegreeSpec, count_triangulations
from .plane_graph import PlaneGraph, canonical_code, delete_vertex

__all__ = [
    "Verdict",
    "LemmaReport",
    "PreconditionsNotMet",
    "NoValidChordSet",
    "check_interior_count",
    "triangulate_face",
    "apply_chords",
    "check_cycle_bounds",
    "check_no_chords",
    "verify_unique_degree_theorem",
    "enumerate_disc_triangulations",
    "count_pentagon_fillings",
    "sweep_triangulation",
    "sweep",
]


class PreconditionsNotMet(ValueError):
    pass


class NoValidChordSet(RuntimeError):
    pass


class Verdict(str, Enum):
    HOLDS = "holds"
    VIOLATED = "violated"
    PRECONDITIONS_NOT_MET = "preconditions-not-met"


@dataclass
class LemmaReport:
    lemma: str
    instance: str
    quantities: dict = field(default_factory=dict)
    claims: dict = field(default_factory=dict)
    note: str = ""

    @property
    def verdict(self) -> Verdict:
        applicable = [v for v in self.claims.values() if v is not None]
        if not applicable:
            return Verdict.PRECONDITIONS_NOT_MET
        return Verdict.HOLDS if all(applicable) else Verdict.VIOLATED

    def line(self) -> str:
        q = " ".join(f"{k}={v}" for k, v in self.quantities.items())
        c = " ".join(f"{k}={'n/a' if v is None else ('ok' if v else 'FAIL')}" for k, v in self.claims.items())
        return f"lemma={self.lemma} verdict={self.verdict.value} {self.instance} {q} {c}".rstrip()


def _instance(g: PlaneGraph, **extra) -> str:
    parts = [f"code={canonical_code(g).hex()[:16]}"]
    parts += [f"{k}={v}" for k, v in extra.items()]
    return " ".join(parts)


# -- interior points ---------------------------------------------------------------

def _is_induced_cycle(g: PlaneGraph, cyc: Sequence[int]) -> bool:
    m = len(cyc)
    if len(set(cyc)) != m:
        return False
    for i in range(m):
        for j in range(i + 2, m):
            if (i, j) != (0, m - 1) and g.has_edge(cyc[i], cyc[j]):
                return False
    return True


def check_interior_count(g: PlaneGraph, v: int, strict: bool = False) -> LemmaReport:
    """Vertices strictly inside the link of ``v`` number ``p_v + 6``.

    ``p_v`` is the total excess over 5 of the vertices other than ``v``.
    """
    link = g.neighbors(v)
    rep = LemmaReport("interior-count", _instance(g, v=v))
    if not g.is_triangulation() or not _is_induced_cycle(g, link):
        if strict:
            raise PreconditionsNotMet("link of v is not an induced cycle")
        rep.claims["I=p+6"] = None
        return rep
    inside = g.vertex_count - 1 - len(link)
    p_v = sum(d - 5 for x, d in enumerate(g.degrees) if x != v)
    rep.quantities.update(n=len(link), I=inside, p_v=p_v)
    rep.claims["I=p+6"] = inside == p_v + 6
    rep.note = "p_v is the sum of (deg - 5) over vertices other than v"
    return rep


# -- chords of a face ----------------------------------------------------------------

def triangulate_face(g: PlaneGraph, f: int) -> list[tuple[int, int]]:
    """``m - 3`` non-crossing chords splitting face ``f`` into triangles.

    Cut off ``x1 x2 x3`` with the chord ``x1 x3`` when it is not already an
    edge; otherwise that edge runs outside the face, shielding ``x2``, and
    a fan from ``x2`` finishes the job.
    """
    poly = list(g.faces[f])
    if len(poly) < 3 or len(set(poly)) != len(poly):
        raise NoValidChordSet("face is not a simple cycle")
    chords: list[tuple[int, int]] = []
    added: set[frozenset] = set()

    def adjacent(a, b):
        return g.has_edge(a, b) or frozenset((a, b)) in added

    while len(poly) > 3:
        x1, x2, x3 = poly[0], poly[1], poly[2]
        if not adjacent(x1, x3):
            chords.append((x1, x3))
            added.add(frozenset((x1, x3)))
            poly = [x1] + poly[2:]
            continue
        fan = poly[3:]
        if any(adjacent(x2, y) for y in fan):
            raise NoValidChordSet(f"both {x1}{x3} and a fan edge from {x2} are blocked")
        chords += [(x2, y) for y in fan]
        break
    if len(chords) != len(g.faces[f]) - 3:
        raise NoValidChordSet("wrong number of chords")
    return chords


def apply_chords(g: PlaneGraph, f: int, chords: Iterable[tuple[int, int]]) -> PlaneGraph:
    """Insert chords of face ``f`` one at a time and check the face split."""
    m = len(g.faces[f])
    target = set(g.faces[f])
    faces_before = g.face_count
    h = g
    for a, b in chords:
        # the face still holding both ends inside the original polygon
        idx = next(
            i for i, face in enumerate(h.faces)
            if a in face and b in face and set(face) <= target and len(face) > 3
        )
        face = h.faces[idx]
        rots = [list(r) for r in h.rotations]
        i, j = face.index(a), face.index(b)
        k = len(face)
        rots[a].insert(rots[a].index(face[(i - 1) % k]) + 1, b)
        rots[b].insert(rots[b].index(face[(j - 1) % k]) + 1, a)
        h = PlaneGraph(rots, validate=True)
    if h.face_count != faces_before + m - 3:
        raise NoValidChordSet("chords did not split the face into triangles")
    return h


# -- triangulations of a cycle -------------------------------------------------------

def _disc_parts(h: PlaneGraph, c: Sequence[int]):
    cset = set(c)
    inner = [v for v in range(h.vertex_count) if v not in cset]
    return cset, inner


def check_cycle_bounds(h: PlaneGraph, c: Sequence[int]) -> LemmaReport:
    """Edge count and lower bounds on the interior size of a triangulated n-cycle.

    ``h`` is a plane graph whose faces are triangles except one face bounded
    by the cycle ``c``; every other vertex lies inside ``c``.
    """
    n = len(c)
    cset, inner = _disc_parts(h, c)
    k = len(inner)
    rep = LemmaReport("cycle-bounds", _instance(h))
    sizes = sorted(h.face_sizes)
    if n < 3 or sizes.count(3) != len(sizes) - (n != 3) or not any(set(f) == cset for f in h.faces):
        rep.claims["E=3k+2n-3"] = None
        return rep
    s = sum(h.degree(x) for x in c)
    inner_ok = all(h.degree(x) >= 5 for x in inner)
    inner_set = set(inner)
    t = sum(1 for u in inner for w in h.neighbors(u) if w in inner_set and u < w)
    not_sphere_tri = k >= 3 and t < 3 * k - 6
    rep.quantities.update(n=n, k=k, s=s, E=h.edge_count, t=t)
    rep.claims["E=3k+2n-3"] = h.edge_count == 3 * k + 2 * n - 3
    rep.claims["k>=s-4n+6"] = (k >= s - 4 * n + 6) if inner_ok else None
    weak_hyp = inner_ok and ((n in (3, 4) and k >= 1) or (n == 5 and k >= 2))
    rep.claims["k>=9-n"] = (k >= 9 - n) if weak_hyp else None
    rep.claims["k>=10-n"] = (k >= 10 - n) if weak_hyp and not_sphere_tri else None
    strong = None
    if inner_ok and ((n == 3 and k > 0) or (n == 4 and k > 0) or (n == 5 and k > 1)):
        strong = k >= {3: 9, 4: 8, 5: 6}[n]
    rep.claims["reinforced"] = strong
    rep.quantities["k>=9-n(raw)"] = k >= 9 - n
    return rep


def _boundary_apexes(h: PlaneGraph, c: Sequence[int]) -> list[int]:
    """Third vertex of the inner triangle on each boundary edge of ``c``."""
    cyc = list(c)
    outer = next(f for f in h.faces if set(f) == set(cyc) and len(f) == len(cyc))
    apexes = []
    m = len(outer)
    for i in range(m):
        a, b = outer[i], outer[(i + 1) % m]
        tri = h.faces[h.face_of_dart(b, a)]
        apexes.append(next(x for x in tri if x not in (a, b)))
    return apexes


def check_no_chords(h: PlaneGraph, c: Sequence[int]) -> LemmaReport:
    """No chord of ``c`` is an edge; no two boundary triangles share an
    interior apex.  Each claim is evaluated only under its own hypotheses."""
    n = len(c)
    cset, inner = _disc_parts(h, c)
    rep = LemmaReport("no-chords", _instance(h))
    cdeg = [h.degree(x) for x in c]
    ideg = Counter(h.degree(x) for x in inner)
    fives = [i for i, d in enumerate(cdeg) if d == 5]
    rest_four = all(d in (4, 5) for d in cdeg)
    all_inner_5 = set(ideg) <= {5}

    hyp_i = rest_four and len(fives) <= 1
    two_adjacent = len(fives) == 2 and (fives[1] - fives[0]) % n in (1, n - 1)
    hyp_ii = rest_four and two_adjacent and all_inner_5

    pos = {x: i for i, x in enumerate(c)}
    chords = [
        (a, b) for a, b in h.edges
        if a in cset and b in cset and (pos[a] - pos[b]) % n not in (1, n - 1)
    ]
    rep.quantities.update(n=n, k=len(inner), chords=len(chords))
    rep.claims["no-chord"] = (not chords) if (hyp_i or hyp_ii) else None

    c_i = all_inner_5 and rest_four and (len(fives) <= 1 or two_adjacent)
    c_ii = set(ideg) <= {5, 6} and ideg[6] <= 1 and rest_four and len(fives) <= 1
    c_iii = set(ideg) <= {5, 6} and ideg[6] <= 2 and all(d == 4 for d in cdeg)
    if c_i or c_ii or c_iii:
        inner_apexes = [x for x in _boundary_apexes(h, c) if x not in cset]
        rep.claims["no-common-apex"] = len(inner_apexes) == len(set(inner_apexes))
    else:
        rep.claims["no-common-apex"] = None
    return rep


# -- theorem and uniqueness checks ---------------------------------------------------

def verify_unique_degree_theorem(n: int) -> int:
    """Triangulations with one vertex of degree ``n`` and all others 5."""
    if not 3 <= n <= 9:
        raise ValueError("supported for 3 <= n <= 9")
    return count_triangulations(DegreeSpec.of(n + 7, {n: 1}))


def enumerate_disc_triangulations(m: int, k: int, min_inner_degree: int = 5) -> list[nx.Graph]:
    """Simple triangulations of an m-gon with ``k`` interior vertices, all of
    degree at least ``min_inner_degree``, one per isomorphism class.

    Boundary vertices are ``0..m-1``; classes are taken up to the dihedral
    symmetry of the polygon (networkx isomorphism with boundary marking).
    Pure recursion: the triangle on the first edge of the first open polygon
    either has a new interior apex or an apex on that polygon.
    """
    found: list[nx.Graph] = []
    edges: set[frozenset] = {frozenset((i, (i + 1) % m)) for i in range(m)}
    deg = Counter({i: 2 for i in range(m)})
    state = {"next": m}

    def add_edge(a, b):
        edges.add(frozenset((a, b)))
        deg[a] += 1
        deg[b] += 1

    def drop_edge(a, b):
        edges.discard(frozenset((a, b)))
        deg[a] -= 1
        deg[b] -= 1

    def closed_ok(open_polys):
        alive = {v for poly, _ in open_polys for v in poly}
        return all(deg[v] >= min_inner_degree for v in range(m, state["next"]) if v not in alive)

    def rec(open_polys):
        if not closed_ok(open_polys):
            return
        if not open_polys:
            if state["next"] == m + k:
                g = nx.Graph([tuple(e) for e in edges])
                for v in g:
                    g.nodes[v]["b"] = v < m
                found.append(g)
            return
        (poly, budget), rest = open_polys[0], open_polys[1:]
        if len(poly) == 3 and budget == 0:
            rec(rest)
            return
        a, b = poly[0], poly[1]
        if budget > 0:
            w = state["next"]
            state["next"] += 1
            add_edge(a, w)
            add_edge(b, w)
            rec([([a, w] + poly[1:], budget - 1)] + rest)
            drop_edge(a, w)
            drop_edge(b, w)
            state["next"] -= 1
        for j in range(2, len(poly)):
            cvert = poly[j]
            new = [e for e in ((a, cvert), (b, cvert)) if frozenset(e) not in edges]
            # an existing a-c or b-c edge is only allowed when it bounds this polygon
            if j != len(poly) - 1 and (a, cvert) not in new:
                continue
            if j != 2 and (b, cvert) not in new:
                continue
            left = poly[1:j + 1]
            right = [a] + poly[j:]
            for x in range(budget + 1):
                parts = []
                if len(left) > 2:
                    parts.append((left, x))
                elif x:
                    continue
                if len(right) > 2:
                    parts.append((right, budget - x))
                elif budget - x:
                    continue
                for e in new:
                    add_edge(*e)
                rec(parts + rest)
                for e in new:
                    drop_edge(*e)

    rec([(list(range(m)), k)])
    classes: list[nx.Graph] = []
    match = nx.algorithms.isomorphism.categorical_node_match("b", False)
    for g in found:
        if not any(nx.is_isomorphic(g, h, node_match=match) for h in classes):
            classes.append(g)
    return classes


def count_pentagon_fillings(k: int = 6) -> int:
    """Classes of pentagon triangulations with ``k`` interior vertices of
    degree at least 5."""
    return len(enumerate_disc_triangulations(5, k))


# -- sweeps --------------------------------------------------------------------------

def sweep_triangulation(g: PlaneGraph) -> list[LemmaReport]:
    """All vertex-local checks on one triangulation.

    For every vertex ``v`` the link is the boundary of ``g - v``; that disc is
    checked for the edge count, interior bounds and chord lemmas.
    """
    reports = []
    for v in range(g.vertex_count):
        reports.append(check_interior_count(g, v))
        h, relabel = delete_vertex(g, v)
        c = [relabel[w] for w in reversed(g.neighbors(v))]
        reports.append(check_cycle_bounds(h, c))
        reports.append(check_no_chords(h, c))
    return reports


def sweep(graphs: Iterable[PlaneGraph]) -> tuple[Counter, list[LemmaReport]]:
    """Verdict tally per lemma, plus every violated report."""
    tally: Counter = Counter()
    bad = []
    for g in graphs:
        for rep in sweep_triangulation(g):
            tally[(rep.lemma, rep.verdict.value)] += 1
            if rep.verdict is Verdict.VIOLATED:
                bad.append(rep)
    return tally, bad
