"""Isomorph-free generation of plane triangulations with a prescribed degree multiset.

The search grows a triangulated region outward from a start vertex.  The
unfilled part of the sphere is kept as a list of *holes*, each a simple
boundary cycle ``h`` listed so that the hole lies to the right of every edge
``h[i] -> h[i+1]``.  One step picks the boundary vertex ``x`` with the least
remaining degree and glues a triangle onto the boundary edge ``x -> succ(x)``.
The third corner of that triangle is either a fresh vertex, whose final
degree is fixed on creation, or a vertex already on the same hole (which may
split the hole in two).  Every vertex therefore has a known target degree
from birth, and a vertex that leaves all holes must have met it exactly.

Any triangulation containing the current region has *some* triangle on the
chosen edge, so the branching is exhaustive.  Duplicate outputs (different
start positions in the same graph) are removed with :func:`canonical_code`.

:func:`oracle_enumerate` is an unrelated method (vertex splitting from the
tetrahedron, plantri-style) kept for cross-checking small vertex counts.
"""

from __future__ import annotations

import logging
import re
from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from typing import Callable, Iterator

from .plane_graph import PlaneGraph, canonical_code, from_faces, tetrahedron

__all__ = [
    "DegreeSpec",
    "InfeasibleSpec",
    "parse_spec",
    "enumerate_triangulations",
    "count_triangulations",
    "iter_triangulations",
    "oracle_enumerate",
]

log = logging.getLogger(__name__)


class InfeasibleSpec(ValueError):
    pass


@dataclass(frozen=True)
class DegreeSpec:
    """Target degree multiset: explicit non-5 degrees, the rest are 5.

    ``exceptional`` is a sorted tuple of ``(degree, count)`` pairs.  With
    ``constrained=False`` any degree sequence on ``total_vertices`` vertices
    is allowed (used for oracle comparisons).
    """

    total_vertices: int
    exceptional: tuple[tuple[int, int], ...] = ()
    constrained: bool = True
    min_degree: int = 3

    @classmethod
    def of(cls, total_vertices: int, degrees: dict[int, int] | None = None) -> "DegreeSpec":
        counts = Counter()
        for d, c in (degrees or {}).items():
            if d != 5 and c:
                counts[d] += c
        return cls(total_vertices, tuple(sorted(counts.items())))

    @classmethod
    def from_degrees(cls, degrees) -> "DegreeSpec":
        """Spec matching an explicit degree list (e.g. a graph's degrees)."""
        degrees = list(degrees)
        return cls.of(len(degrees), Counter(d for d in degrees if d != 5))

    @classmethod
    def unconstrained(cls, total_vertices: int, min_degree: int = 3) -> "DegreeSpec":
        """Any degree sequence, optionally with a minimum degree of 4 or 5."""
        if min_degree not in (3, 4, 5):
            raise InfeasibleSpec("minimum degree must be 3, 4 or 5")
        return cls(total_vertices, (), constrained=False, min_degree=min_degree)

    @property
    def fives(self) -> int:
        return self.total_vertices - sum(c for _, c in self.exceptional)

    def counts(self) -> Counter:
        """Full degree multiset including the degree-5 vertices."""
        out = Counter(dict(self.exceptional))
        if self.fives:
            out[5] += self.fives
        return out

    def check(self) -> None:
        v = self.total_vertices
        if v < 4:
            raise InfeasibleSpec("a triangulation needs at least 4 vertices")
        if not self.constrained:
            return
        if self.fives < 0:
            raise InfeasibleSpec(f"{self}: more exceptional vertices than vertices")
        for d, c in self.exceptional:
            if c < 0 or d < 3 or d > v - 1:
                raise InfeasibleSpec(f"{self}: degree {d} impossible on {v} vertices")
        total = sum(d * c for d, c in self.counts().items())
        if total != 6 * v - 12:
            raise InfeasibleSpec(f"{self}: degree sum {total} != 6V-12 = {6 * v - 12}")

    def __str__(self) -> str:
        if not self.constrained:
            suffix = "" if self.min_degree == 3 else f"min{self.min_degree}"
            return f"{self.total_vertices}:any{suffix}"
        parts = ",".join(f"{d}x{c}" for d, c in self.exceptional)
        return f"{self.total_vertices}:{parts}"


_SPEC_RE = re.compile(r"^\s*(\d+)\s*:\s*(.*?)\s*$")


def parse_spec(text: str) -> DegreeSpec:
    """Parse ``"18:6x2,7x2"`` (18 vertices, two of degree 6, two of 7, rest 5).

    ``"12:"`` is the all-5 spec, ``"9:any"`` the unconstrained one and
    ``"14:anymin4"`` the unconstrained one with minimum degree 4.
    """
    m = _SPEC_RE.match(text)
    if not m:
        raise ValueError(f"bad degree spec {text!r}")
    v = int(m.group(1))
    body = m.group(2)
    if body.startswith("any"):
        rest = body[3:]
        if rest and not re.fullmatch(r"min[345]", rest):
            raise ValueError(f"bad degree spec {text!r}")
        return DegreeSpec.unconstrained(v, int(rest[3:]) if rest else 3)
    counts: Counter = Counter()
    for part in filter(None, (p.strip() for p in body.split(","))):
        if "x" in part:
            d, c = part.split("x")
            counts[int(d)] += int(c)
        else:
            counts[int(part)] += 1
    return DegreeSpec.of(v, counts)


# -- the hole-filling search ------------------------------------------------

def _bracelets(pool: dict[int, int], length: int) -> Iterator[tuple[int, ...]]:
    """Sequences drawn from a multiset, one per rotation/reflection class."""
    values = sorted(pool)
    seq: list[int] = []
    left = dict(pool)

    def canonical(s):
        n = len(s)
        r = s[::-1]
        for k in range(n):
            if s[k:] + s[:k] < s or r[k:] + r[:k] < s:
                return False
        return True

    def rec():
        if len(seq) == length:
            t = tuple(seq)
            if canonical(t):
                yield t
            return
        for d in values:
            if left[d]:
                left[d] -= 1
                seq.append(d)
                yield from rec()
                seq.pop()
                left[d] += 1

    yield from rec()


class _HoleSearch:
    """Depth-first hole filling for one start configuration.

    ``target[v] is None`` marks lazy vertices (unconstrained mode), whose
    degree is only fixed when they leave the last hole.
    """

    def __init__(self, spec: DegreeSpec, emit: Callable[[list], None], prune: bool = True):
        self.V = spec.total_vertices
        self.constrained = spec.constrained
        self.emit = emit
        self.prune = prune and spec.constrained
        n = self.V
        self.target: list = [None] * n
        self.cur = [0] * n
        self.nbrs: list[set] = [set() for _ in range(n)]
        self.onh = [0] * n
        self.faces: list[tuple[int, int, int]] = []
        self.created = 0
        self.pool: dict[int, int] = {}
        self.nodes = 0
        self.min_degree = 3

    # state helpers
    def _new_vertex(self, t) -> int:
        w = self.created
        self.created += 1
        self.target[w] = t
        self.cur[w] = 0
        self.nbrs[w] = set()
        self.onh[w] = 0
        if t is not None:
            self.pool[t] -= 1
        return w

    def _drop_vertex(self, w: int) -> None:
        t = self.target[w]
        if t is not None:
            self.pool[t] += 1
        self.target[w] = None
        self.created -= 1

    def _link(self, u: int, v: int) -> None:
        self.nbrs[u].add(v)
        self.nbrs[v].add(u)
        self.cur[u] += 1
        self.cur[v] += 1

    def _unlink(self, u: int, v: int) -> None:
        self.nbrs[u].discard(v)
        self.nbrs[v].discard(u)
        self.cur[u] -= 1
        self.cur[v] -= 1

    def _remaining(self, v: int) -> int:
        t = self.target[v]
        return (self.V - 1 if t is None else t) - self.cur[v]

    # start configurations
    def run_wheel(self, t0: int, rim: tuple[int, ...]) -> None:
        """Start from a vertex of degree ``t0`` and its complete link."""
        s = self._new_vertex(t0)
        ring = [self._new_vertex(t) for t in rim]
        for i, r in enumerate(ring):
            r2 = ring[(i + 1) % t0]
            self._link(s, r)
            self._link(r, r2)
            self.faces.append((s, r, r2))
            self.onh[r] = 1
        if all(self.cur[r] <= self.target[r] for r in ring):
            self._dfs([ring])

    def run_lazy_wheel(self, t0: int) -> None:
        """Unconstrained start: a vertex of the minimum degree ``t0`` with a
        rim of free degree; no vertex may end below ``t0``."""
        self.min_degree = t0
        self.pool = {t0: 1}
        s = self._new_vertex(t0)
        ring = [self._new_vertex(None) for _ in range(t0)]
        for i, r in enumerate(ring):
            r2 = ring[(i + 1) % t0]
            self._link(s, r)
            self._link(r, r2)
            self.faces.append((s, r, r2))
            self.onh[r] = 1
        self._dfs([ring])

    # pruning
    def _hole_ok(self, h: list[int]) -> bool:
        """Euler count for filling ``h``: sum of remaining degrees on the
        boundary minus (2L - 6) equals the sum of (6 - t) over vertices
        placed inside, which the pool bounds from both sides."""
        lo = hi = 0
        for v in h:
            r = self.target[v] - self.cur[v]
            hi += r
            if self.onh[v] == 1:
                lo += r
        base = 2 * len(h) - 6
        pos = neg = 0
        for t, c in self.pool.items():
            if c:
                if t < 6:
                    pos += (6 - t) * c
                else:
                    neg += (t - 6) * c
        return lo - base <= pos and hi - base >= -neg

    # main recursion
    def _dfs(self, holes: list[list[int]]) -> None:
        self.nodes += 1
        if not holes:
            if self.created == self.V:
                self.emit(self.faces)
            return
        target, cur, onh = self.target, self.cur, self.onh
        best_r = None
        best_hi = best_i = 0
        for hi, h in enumerate(holes):
            for i, x in enumerate(h):
                t = target[x]
                if t is None:
                    r = 2 * self.V
                else:
                    r = t - cur[x]
                if best_r is None or r < best_r:
                    best_r, best_hi, best_i = r, hi, i
                    if r == 0:
                        break
            if best_r == 0:
                break
        h = holes[best_hi]
        L = len(h)
        i = best_i
        x = h[i]
        lazy = target[x] is None

        # third corner = predecessor of x: closes the angle of x in this hole
        if best_r == 0 or lazy or onh[x] > 1:
            self._try_existing(holes, best_hi, i, (i - 1) % L)
        if best_r == 0:
            return
        # third corner = new vertex
        if self.created < self.V:
            if self.constrained:
                for t in sorted(self.pool):
                    if self.pool[t]:
                        self._try_new(holes, best_hi, i, t)
            else:
                self._try_new(holes, best_hi, i, None)
        # third corner = another boundary vertex of the same hole
        for j in range(L):
            if j == i or j == (i + 1) % L or j == (i - 1) % L:
                continue
            self._try_existing(holes, best_hi, i, j)

    def _try_new(self, holes, hi, i, t) -> None:
        h = holes[hi]
        L = len(h)
        x, b = h[i], h[(i + 1) % L]
        if self._remaining(x) < 1 or self._remaining(b) < 1:
            return
        if t is not None and t < 3:
            return
        w = self._new_vertex(t)
        self._link(x, w)
        self._link(w, b)
        self.onh[w] = 1
        self.faces.append((x, w, b))
        nh = h[: i + 1] + [w] + h[i + 1:]
        if not self.prune or self._hole_ok(nh):
            self._dfs(holes[:hi] + [nh] + holes[hi + 1:])
        self.faces.pop()
        self._unlink(w, b)
        self._unlink(x, w)
        self._drop_vertex(w)

    def _try_existing(self, holes, hi, i, j) -> None:
        h = holes[hi]
        L = len(h)
        x, b, w = h[i], h[(i + 1) % L], h[j]
        a = h[i - 1]
        c = h[(i + 2) % L]
        nbrs = self.nbrs
        new_xw = w != a
        new_bw = w != c
        if new_xw and (w in nbrs[x] or self._remaining(x) < 1):
            return
        if new_bw and (w in nbrs[b] or self._remaining(b) < 1):
            return
        if self._remaining(w) < new_xw + new_bw:
            return
        # sub-holes: b..w and w..x (cyclic), dropped when they are a bare edge
        if j > i:
            h1 = h[i + 1: j + 1]
            h2 = h[j:] + h[: i + 1]
        else:
            h1 = h[i + 1:] + h[: j + 1]
            h2 = h[j: i + 1]
        keep = [s for s in (h1, h2) if len(s) > 2]
        onh = self.onh
        if len(h1) <= 2:
            onh[b] -= 1
        if len(h2) <= 2:
            onh[x] -= 1
        onh[w] += len(keep) - 1
        if new_xw:
            self._link(x, w)
        if new_bw:
            self._link(b, w)
        self.faces.append((x, w, b))
        ok = True
        for v in (x, b, w):
            if onh[v] == 0:
                t = self.target[v]
                if t is None:
                    if self.cur[v] < self.min_degree:
                        ok = False
                elif self.cur[v] != t:
                    ok = False
        if ok and self.prune:
            ok = all(self._hole_ok(s) for s in keep)
        if ok:
            self._dfs(holes[:hi] + keep + holes[hi + 1:])
        self.faces.pop()
        if new_bw:
            self._unlink(b, w)
        if new_xw:
            self._unlink(x, w)
        onh[w] -= len(keep) - 1
        if len(h2) <= 2:
            onh[x] += 1
        if len(h1) <= 2:
            onh[b] += 1


def _start_degree(spec: DegreeSpec) -> int:
    counts = spec.counts()
    return min(counts, key=lambda d: (counts[d], -d))


def _start_tasks(spec: DegreeSpec) -> list:
    if not spec.constrained:
        # every triangulation has minimum degree 3, 4 or 5
        return [("min", t0) for t0 in range(spec.min_degree, 6) if t0 < spec.total_vertices]
    t0 = _start_degree(spec)
    pool = spec.counts()
    pool[t0] -= 1
    return [(t0, rim) for rim in _bracelets(dict(pool), t0)]


def _run_task(spec: DegreeSpec, task, prune: bool) -> dict[bytes, tuple]:
    """Run one start configuration; returns canonical code -> rotations."""
    found: dict[bytes, tuple] = {}

    # A class is reachable from every start that looks the same under an
    # isomorphism invariant, so only emissions whose start maximises the
    # invariant are kept; this skips most duplicate canonical-code work.
    def start_is_maximal(faces) -> bool:
        deg, nbrs = search.cur, search.nbrs

        def sig(v):
            return (
                tuple(sorted(deg[w] for w in nbrs[v])),
                sum(deg[u] for w in nbrs[v] for u in nbrs[w]),
            )

        t0 = deg[0]
        s0 = sig(0)
        return all(sig(v) <= s0 for v in range(1, len(deg)) if deg[v] == t0)

    def emit(faces):
        if not start_is_maximal(faces):
            return
        g = from_faces(faces, validate=False)
        code = canonical_code(g)
        if code not in found:
            found[code] = g.rotations

    search = _HoleSearch(spec, emit, prune=prune)
    if task[0] == "min":
        search.run_lazy_wheel(task[1])
    else:
        t0, rim = task
        search.pool = dict(spec.counts())
        search.run_wheel(t0, rim)
    return found


def _run_task_star(args):
    return _run_task(*args)


def enumerate_triangulations(
    spec: DegreeSpec, prune: bool = True, workers: int = 1
) -> list[PlaneGraph]:
    """All simple (hence 3-connected) plane triangulations with the given
    degree multiset, one per isomorphism class (mirror images identified),
    sorted by canonical code."""
    spec.check()
    tasks = _start_tasks(spec)
    merged: dict[bytes, tuple] = {}
    if workers > 1 and len(tasks) > 1:
        with ProcessPoolExecutor(max_workers=workers) as ex:
            parts = ex.map(_run_task_star, [(spec, t, prune) for t in tasks], chunksize=1)
            for part in parts:
                merged.update(part)
    else:
        for t in tasks:
            merged.update(_run_task(spec, t, prune))
    log.debug("spec %s: %d start configurations, %d classes", spec, len(tasks), len(merged))
    out = []
    for code in sorted(merged):
        g = PlaneGraph(merged[code], validate=True)
        if spec.constrained and g.degree_multiset() != spec.counts():
            raise AssertionError(f"generator emitted wrong degrees for {spec}")
        out.append(g)
    return out


def iter_triangulations(spec: DegreeSpec, prune: bool = True, workers: int = 1) -> Iterator[PlaneGraph]:
    yield from enumerate_triangulations(spec, prune=prune, workers=workers)


def count_triangulations(spec: DegreeSpec, prune: bool = True, workers: int = 1) -> int:
    return len(enumerate_triangulations(spec, prune=prune, workers=workers))


# -- independent oracle -----------------------------------------------------

def _split_vertex(g: PlaneGraph, u: int, i: int, j: int) -> PlaneGraph:
    """Split ``u`` into ``u`` and a new vertex ``x`` joined by an edge.

    ``x`` takes the rotation arc from position ``i`` to ``j`` of ``u``
    (inclusive); the arc ends become common neighbours of ``u`` and ``x``.
    """
    rot = g.rotations[u]
    d = len(rot)
    x = g.vertex_count
    arc = [rot[(i + k) % d] for k in range((j - i) % d + 1)]
    rest = [rot[(j + k) % d] for k in range((i - j) % d + 1)]
    rots = [list(r) for r in g.rotations] + [None]
    rots[u] = rest + [x]
    rots[x] = arc + [u]
    inner = set(arc[1:-1])
    for w in inner:
        rots[w] = [x if y == u else y for y in rots[w]]
    p, q = arc[0], arc[-1]
    rp = rots[p]
    k = rp.index(u)
    # around p, the arc side of u is where x goes
    if rp[(k - 1) % len(rp)] in inner or rp[(k - 1) % len(rp)] == q:
        rp.insert(k, x)
    else:
        rp.insert(k + 1, x)
    rq = rots[q]
    k = rq.index(u)
    if rq[(k + 1) % len(rq)] in inner or rq[(k + 1) % len(rq)] == p:
        rq.insert(k + 1, x)
    else:
        rq.insert(k, x)
    return PlaneGraph(rots, validate=True)


def oracle_enumerate(v: int) -> list[PlaneGraph]:
    """All triangulations on ``v`` vertices by exhaustive vertex splitting.

    Every simple triangulation on more than 4 vertices has an edge whose
    contraction gives a simple triangulation, so splitting every vertex in
    every way, level by level from the tetrahedron, reaches all classes.
    Intended for ``4 <= v <= 10`` only.
    """
    if not 4 <= v <= 10:
        raise ValueError("oracle_enumerate supports 4 <= v <= 10")
    level = {canonical_code(tetrahedron()): tetrahedron()}
    for _ in range(v - 4):
        nxt: dict[bytes, PlaneGraph] = {}
        for g in level.values():
            for u in range(g.vertex_count):
                d = g.degree(u)
                for i in range(d):
                    for j in range(d):
                        if i == j:
                            continue
                        h = _split_vertex(g, u, i, j)
                        if min(h.degrees) < 3 or not h.is_triangulation():
                            continue
                        code = canonical_code(h)
                        if code not in nxt:
                            nxt[code] = h
        level = nxt
    return [level[c] for c in sorted(level)]
