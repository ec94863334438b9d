"""Plane graphs stored as rotation systems.

A plane graph on vertices ``0..V-1`` is given by one cyclic neighbour list per
vertex (clockwise).  Faces are traced with the rule "go to the twin dart, then
take the next neighbour in the rotation": the dart ``(u, v)`` is followed by
``(v, w)`` where ``w`` comes right after ``u`` in the rotation of ``v``.  With
clockwise rotations every traced face keeps its interior on the left, so
bounded faces come out counter-clockwise.
"""

from __future__ import annotations

from collections import Counter, deque
from typing import Iterable, Sequence

__all__ = [
    "PlaneGraphError",
    "NonSymmetricAdjacency",
    "LoopOrMultiEdge",
    "Disconnected",
    "EulerViolation",
    "DualNotSimple",
    "EdgeNotPresent",
    "ResultDisconnected",
    "PlaneGraph",
    "CanonicalCode",
    "build_plane_graph",
    "dual",
    "is_three_connected",
    "canonical_code",
    "remove_edges",
    "delete_vertex",
    "add_chord",
    "from_faces",
    "tetrahedron",
    "icosahedron",
]

CODE_SCHEME_VERSION = 1


class PlaneGraphError(ValueError):
    """Base class for invalid rotation systems and failed graph operations."""


class NonSymmetricAdjacency(PlaneGraphError):
    pass


class LoopOrMultiEdge(PlaneGraphError):
    pass


class Disconnected(PlaneGraphError):
    pass


class EulerViolation(PlaneGraphError):
    """The rotation system does not describe a sphere embedding (genus > 0)."""


class DualNotSimple(PlaneGraphError):
    pass


class EdgeNotPresent(PlaneGraphError):
    pass


class ResultDisconnected(PlaneGraphError):
    pass


def _edge(u: int, v: int) -> tuple[int, int]:
    return (u, v) if u < v else (v, u)


class PlaneGraph:
    """Immutable connected simple plane graph.

    Build instances with :func:`build_plane_graph` (or the constructor, which
    validates by default).  Faces, degrees and the edge list are derived once
    and cached.
    """

    __slots__ = ("rotations", "_pos", "_faces", "_dart_face", "_edges")

    def __init__(self, rotations: Iterable[Sequence[int]], validate: bool = True):
        self.rotations: tuple[tuple[int, ...], ...] = tuple(tuple(r) for r in rotations)
        self._pos = [{w: i for i, w in enumerate(rot)} for rot in self.rotations]
        self._faces = None
        self._dart_face = None
        self._edges = None
        if validate:
            self._validate()

    # -- basic counts -----------------------------------------------------
    @property
    def vertex_count(self) -> int:
        return len(self.rotations)

    @property
    def edge_count(self) -> int:
        return sum(len(r) for r in self.rotations) // 2

    @property
    def face_count(self) -> int:
        return len(self.faces)

    def degree(self, v: int) -> int:
        return len(self.rotations[v])

    @property
    def degrees(self) -> list[int]:
        return [len(r) for r in self.rotations]

    def degree_multiset(self) -> Counter:
        return Counter(len(r) for r in self.rotations)

    def neighbors(self, v: int) -> tuple[int, ...]:
        return self.rotations[v]

    def has_edge(self, u: int, v: int) -> bool:
        return v in self._pos[u]

    @property
    def edges(self) -> list[tuple[int, int]]:
        if self._edges is None:
            self._edges = sorted(
                (u, v) for u, rot in enumerate(self.rotations) for v in rot if u < v
            )
        return self._edges

    def darts(self) -> Iterable[tuple[int, int]]:
        for u, rot in enumerate(self.rotations):
            for v in rot:
                yield (u, v)

    # -- face tracing -----------------------------------------------------
    def next_dart(self, u: int, v: int) -> tuple[int, int]:
        rot = self.rotations[v]
        return (v, rot[(self._pos[v][u] + 1) % len(rot)])

    def _trace_faces(self) -> None:
        dart_face: dict[tuple[int, int], int] = {}
        faces: list[tuple[int, ...]] = []
        for start in self.darts():
            if start in dart_face:
                continue
            idx = len(faces)
            cyc = []
            d = start
            while d not in dart_face:
                dart_face[d] = idx
                cyc.append(d[0])
                d = self.next_dart(*d)
            if d != start:
                raise EulerViolation("face tracing is not a permutation of darts")
            faces.append(tuple(cyc))
        self._faces = faces
        self._dart_face = dart_face

    @property
    def faces(self) -> list[tuple[int, ...]]:
        """Face boundaries as vertex cycles; face ``i`` contains dart ``(f[j], f[j+1])``."""
        if self._faces is None:
            self._trace_faces()
        return self._faces

    def face_of_dart(self, u: int, v: int) -> int:
        if self._dart_face is None:
            self._trace_faces()
        return self._dart_face[(u, v)]

    @property
    def face_sizes(self) -> list[int]:
        return [len(f) for f in self.faces]

    def is_triangulation(self) -> bool:
        return all(len(f) == 3 for f in self.faces)

    # -- validation -------------------------------------------------------
    def _validate(self) -> None:
        rots = self.rotations
        n = len(rots)
        if n == 0:
            raise PlaneGraphError("empty graph")
        for u, rot in enumerate(rots):
            if not rot and n > 1:
                raise Disconnected(f"vertex {u} is isolated")
            if len(set(rot)) != len(rot):
                raise LoopOrMultiEdge(f"vertex {u} repeats a neighbour")
            for v in rot:
                if not 0 <= v < n:
                    raise PlaneGraphError(f"neighbour {v} of {u} out of range")
                if v == u:
                    raise LoopOrMultiEdge(f"loop at vertex {u}")
                if u not in self._pos[v]:
                    raise NonSymmetricAdjacency(f"{v} in rotation of {u} but not vice versa")
        seen = [False] * n
        seen[0] = True
        queue = deque([0])
        count = 1
        while queue:
            u = queue.popleft()
            for v in rots[u]:
                if not seen[v]:
                    seen[v] = True
                    count += 1
                    queue.append(v)
        if count != n:
            raise Disconnected(f"only {count} of {n} vertices reachable")
        if n > 1:
            self._trace_faces()
        v, e, f = n, self.edge_count, (len(self._faces) if n > 1 else 1)
        if v - e + f != 2:
            raise EulerViolation(f"V - E + F = {v - e + f}, not 2")

    def __eq__(self, other: object) -> bool:
        return isinstance(other, PlaneGraph) and self.rotations == other.rotations

    def __hash__(self) -> int:
        return hash(self.rotations)

    def __repr__(self) -> str:
        return f"PlaneGraph(V={self.vertex_count}, E={self.edge_count}, F={self.face_count})"

    def mirror(self) -> "PlaneGraph":
        return PlaneGraph([tuple(reversed(r)) for r in self.rotations], validate=False)

    def relabel(self, perm: Sequence[int]) -> "PlaneGraph":
        """Return the graph with vertex ``v`` renamed ``perm[v]``."""
        rots: list = [None] * len(perm)
        for v, rot in enumerate(self.rotations):
            rots[perm[v]] = tuple(perm[w] for w in rot)
        return PlaneGraph(rots, validate=False)


CanonicalCode = bytes


def build_plane_graph(rotations: Iterable[Sequence[int]]) -> PlaneGraph:
    """Validate a rotation system and return the plane graph it describes."""
    return PlaneGraph(rotations, validate=True)


def dual(g: PlaneGraph) -> PlaneGraph:
    """Geometric dual; face ``i`` of ``g`` becomes vertex ``i``.

    Raises :class:`DualNotSimple` when ``g`` has a bridge (dual loop) or two
    faces sharing more than one edge (dual multi-edge).
    """
    faces = g.faces
    rots = []
    for fi, face in enumerate(faces):
        m = len(face)
        # faces across each boundary edge, reversed to keep clockwise rotations
        across = [g.face_of_dart(face[(j + 1) % m], face[j]) for j in range(m)]
        if fi in across:
            raise DualNotSimple(f"face {fi} is adjacent to itself (bridge)")
        if len(set(across)) != m:
            raise DualNotSimple(f"face {fi} shares several edges with one face")
        rots.append(tuple(reversed(across)))
    return PlaneGraph(rots, validate=True)


def _connected_without(rots, removed: set[int]) -> bool:
    n = len(rots)
    start = next((v for v in range(n) if v not in removed), None)
    if start is None:
        return True
    seen = set(removed)
    seen.add(start)
    stack = [start]
    while stack:
        u = stack.pop()
        for w in rots[u]:
            if w not in seen:
                seen.add(w)
                stack.append(w)
    return len(seen) == n


def is_three_connected(g: PlaneGraph) -> bool:
    """Literal check: more than 3 vertices and no separating pair or single vertex."""
    n = g.vertex_count
    if n <= 3:
        return False
    rots = g.rotations
    if any(len(r) < 3 for r in rots):
        return False
    for a in range(n):
        if not _connected_without(rots, {a}):
            return False
        for b in range(a + 1, n):
            if not _connected_without(rots, {a, b}):
                return False
    return True


# -- canonical form -------------------------------------------------------

def _bfs_code(rots, pos, u, v, step, best):
    """BFS dart labelling from dart (u, v); returns the code if it beats ``best``.

    ``step`` is +1 for the given orientation and -1 for its mirror image.
    Comparison with ``best`` is done on the fly so that losing starts abort
    early.  Returns ``None`` when the code is lexicographically larger.
    """
    n = len(rots)
    label = [0] * n
    start = [0] * n
    label[u] = 1
    start[u] = v
    order = [u]
    code = []
    equal = best is not None
    k = 0
    i = 0
    while i < len(order):
        x = order[i]
        rot = rots[x]
        d = len(rot)
        p = pos[x][start[x]]
        for j in range(d):
            y = rot[(p + step * j) % d]
            ly = label[y]
            if ly == 0:
                ly = len(order) + 1
                label[y] = ly
                start[y] = x
                order.append(y)
            if equal:
                b = best[k]
                if ly > b:
                    return None
                if ly < b:
                    equal = False
            code.append(ly)
            k += 1
        if equal and best[k] != 0:
            # the end-of-list marker 0 sorts below any label
            equal = False
        code.append(0)
        k += 1
        i += 1
    return code


def canonical_code(g: PlaneGraph, root_face: int | None = None) -> CanonicalCode:
    """Relabelling-invariant code of ``g`` with mirror images identified.

    The code is the lexicographically smallest BFS labelling trace over a set
    of starting darts and both orientations.  Starting darts are restricted to
    an isomorphism-invariant class (the rarest ``(deg u, deg v)`` pair, ties
    to the larger pair), which keeps the result canonical while skipping most
    starts.  With ``root_face`` given, only darts on that face are used, so
    the code identifies the pair (graph, marked face).
    """
    rots = g.rotations
    pos = g._pos
    if root_face is not None:
        face = g.faces[root_face]
        m = len(face)
        fdarts = [(face[j], face[(j + 1) % m]) for j in range(m)]
        starts = [(u, v, 1) for u, v in fdarts] + [(v, u, -1) for u, v in fdarts]
    else:
        classes: dict[tuple[int, int], list[tuple[int, int]]] = {}
        for u, rot in enumerate(rots):
            du = len(rot)
            for v in rot:
                classes.setdefault((du, len(rots[v])), []).append((u, v))
        key = min(classes, key=lambda k: (len(classes[k]), -k[0], -k[1]))
        starts = [(u, v, s) for (u, v) in classes[key] for s in (1, -1)]
    best = None
    for u, v, s in starts:
        code = _bfs_code(rots, pos, u, v, s, best)
        if code is not None:
            best = code
    n = len(rots)
    if n > 255:
        raise PlaneGraphError("canonical codes support at most 255 vertices")
    header = bytes([CODE_SCHEME_VERSION, n, 1 if root_face is not None else 0])
    return header + bytes(best)


def from_faces(faces: Iterable[Sequence[int]], validate: bool = True) -> PlaneGraph:
    """Build a plane graph from consistently oriented face cycles.

    Each face ``(f0, f1, ..., fm-1)`` is read as the darts ``f0->f1->...``;
    orientation must agree with :meth:`PlaneGraph.faces` (interior on the
    left), i.e. every edge is traversed once in each direction overall.
    """
    succ: dict[int, dict[int, int]] = {}
    for f in faces:
        m = len(f)
        for j in range(m):
            a, b, c = f[j - 1], f[j], f[(j + 1) % m]
            at = succ.setdefault(b, {})
            if a in at:
                raise PlaneGraphError(f"dart {a}->{b} appears in two faces")
            at[a] = c
    n = max(succ) + 1
    rots = []
    for v in range(n):
        at = succ.get(v)
        if not at:
            raise Disconnected(f"vertex {v} lies on no face")
        first = next(iter(at))
        rot = [first]
        w = at[first]
        while w != first:
            rot.append(w)
            if w not in at or len(rot) > len(at):
                raise PlaneGraphError(f"faces around vertex {v} do not close up")
            w = at[w]
        if len(rot) != len(at):
            raise PlaneGraphError(f"vertex {v} is pinched (several face fans)")
        rots.append(tuple(rot))
    return PlaneGraph(rots, validate=validate)


# -- edits ------------------------------------------------------------------

def remove_edges(g: PlaneGraph, edges: Iterable[tuple[int, int]]) -> PlaneGraph:
    """Delete edges, keeping the rest of the embedding."""
    drop = set()
    for u, v in edges:
        if not g.has_edge(u, v):
            raise EdgeNotPresent(f"edge {u}-{v} not in graph")
        drop.add(_edge(u, v))
    if not drop:
        return g
    rots = [tuple(w for w in rot if _edge(u, w) not in drop) for u, rot in enumerate(g.rotations)]
    if not _connected_without(rots, set()) or any(not r for r in rots):
        raise ResultDisconnected("edge removal disconnects the graph")
    return PlaneGraph(rots, validate=True)


def delete_vertex(g: PlaneGraph, v: int) -> tuple[PlaneGraph, list[int]]:
    """Delete vertex ``v``; returns the new graph and the old-to-new label map.

    The map has ``-1`` at position ``v``; all other vertices keep their
    relative order.
    """
    n = g.vertex_count
    if not 0 <= v < n:
        raise PlaneGraphError(f"vertex {v} out of range")
    new = [i - (i > v) for i in range(n)]
    new[v] = -1
    rots = [tuple(new[w] for w in rot if w != v) for u, rot in enumerate(g.rotations) if u != v]
    if not _connected_without(rots, set()) or any(not r for r in rots):
        raise ResultDisconnected(f"deleting vertex {v} disconnects the graph")
    return PlaneGraph(rots, validate=True), new


def add_chord(g: PlaneGraph, face: int, i: int, j: int) -> PlaneGraph:
    """Insert an edge between positions ``i`` and ``j`` of a face boundary."""
    f = g.faces[face]
    m = len(f)
    a, b = f[i], f[j]
    if a == b or g.has_edge(a, b):
        raise LoopOrMultiEdge(f"chord {a}-{b} would not be simple")
    rots = [list(r) for r in g.rotations]
    # dart (prev_a -> a) is followed by (a -> next_a) on this face, so next_a
    # sits right after prev_a in rot[a]; the chord goes between them
    prev_a, prev_b = f[(i - 1) % m], f[(j - 1) % m]
    rots[a].insert(rots[a].index(prev_a) + 1, b)
    rots[b].insert(rots[b].index(prev_b) + 1, a)
    return PlaneGraph(rots, validate=True)


# -- standard fixtures -----------------------------------------------------

def tetrahedron() -> PlaneGraph:
    return build_plane_graph([(1, 2, 3), (0, 3, 2), (0, 1, 3), (0, 2, 1)])


def icosahedron() -> PlaneGraph:
    """Icosahedron: 0 on top, upper ring 1..5, lower ring 6..10, 11 at the bottom."""
    up = [1, 2, 3, 4, 5]
    lo = [6, 7, 8, 9, 10]
    faces = []
    for i in range(5):
        u, u1, l, l1 = up[i], up[(i + 1) % 5], lo[i], lo[(i + 1) % 5]
        faces += [(0, u, u1), (u, l, u1), (u1, l, l1), (11, l1, l)]
    return from_faces(faces)
