"""Wire formats and drawings.

``planar_code`` is the binary format of the plantri generator: a vertex count
byte, then for every vertex its neighbours (1-based) in rotation order, each
list terminated by 0.  The ASCII format lists neighbours with letters
``a, b, c, ...``; above 26 vertices a numeric variant ``1:2,3,4;2:...`` is
used instead.

Drawings use Tutte's barycentric embedding: the outer face is pinned to a
regular polygon and every other vertex sits at the mean of its neighbours.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from .plane_graph import PlaneGraph, is_three_connected

__all__ = [
    "FormatError",
    "TruncatedStream",
    "BadHeader",
    "NeighborOutOfRange",
    "AsymmetricAdjacency",
    "UnbalancedAdjacency",
    "UnknownLabel",
    "NotThreeConnected",
    "SolveFailed",
    "PLANAR_CODE_HEADER",
    "parse_planar_code",
    "write_planar_code",
    "parse_ascii_adjacency",
    "write_ascii_adjacency",
    "parse_ascii_stream",
    "tutte_layout",
    "leader_layout",
    "find_crossings",
    "SvgOptions",
    "render_svg",
    "render_dot",
]

PLANAR_CODE_HEADER = b">>planar_code<<"


class FormatError(ValueError):
    pass


class TruncatedStream(FormatError):
    pass


class BadHeader(FormatError):
    pass


class NeighborOutOfRange(FormatError):
    pass


class AsymmetricAdjacency(FormatError):
    pass


class UnbalancedAdjacency(FormatError):
    pass


class UnknownLabel(FormatError):
    pass


class NotThreeConnected(ValueError):
    pass


class SolveFailed(RuntimeError):
    pass


def _check_symmetric(rots: Sequence[Sequence[int]], exc: type[FormatError]) -> None:
    for u, rot in enumerate(rots):
        for w in rot:
            if u not in rots[w]:
                raise exc(f"{u} lists {w} but not vice versa")
            if list(rot).count(w) != list(rots[w]).count(u):
                raise exc(f"edge multiplicity differs between {u} and {w}")


# -- planar_code ---------------------------------------------------------------

def parse_planar_code(data: bytes) -> list[PlaneGraph]:
    """Decode a (possibly concatenated) planar_code stream.

    The ``>>planar_code<<`` header is optional.  Graphs above 255 vertices
    (plantri's two-byte variant) are not supported.
    """
    pos = 0
    if data.startswith(b">>"):
        if not data.startswith(PLANAR_CODE_HEADER):
            raise BadHeader(f"unrecognised header {data[:20]!r}")
        pos = len(PLANAR_CODE_HEADER)
    graphs = []
    size = len(data)
    while pos < size:
        n = data[pos]
        pos += 1
        if n == 0:
            raise BadHeader("zero vertex count (two-byte variant is unsupported)")
        rots: list[tuple[int, ...]] = []
        for _ in range(n):
            end = data.find(b"\x00", pos)
            if end < 0:
                raise TruncatedStream(f"graph {len(graphs)}: missing list terminator")
            lst = data[pos:end]
            pos = end + 1
            if any(x > n for x in lst):
                raise NeighborOutOfRange(f"graph {len(graphs)}: neighbour above {n}")
            rots.append(tuple(x - 1 for x in lst))
        _check_symmetric(rots, AsymmetricAdjacency)
        graphs.append(PlaneGraph(rots))
    return graphs


def write_planar_code(graphs: Iterable[PlaneGraph], header: bool = False) -> bytes:
    out = bytearray(PLANAR_CODE_HEADER if header else b"")
    for g in graphs:
        n = g.vertex_count
        if not 1 <= n <= 255:
            raise FormatError("planar_code supports 1..255 vertices")
        out.append(n)
        for rot in g.rotations:
            out.extend(w + 1 for w in rot)
            out.append(0)
    return bytes(out)


# -- ASCII adjacency ---------------------------------------------------------------

_LETTERS = "abcdefghijklmnopqrstuvwxyz"
_COUNT_PREFIX = re.compile(r"^\s*(\d+)\s+(?=\S)")


def parse_ascii_adjacency(text: str) -> PlaneGraph:
    """Parse ``[N ]bcdef,afghc,...`` (letters) or ``1:2,3;2:1,3;...`` (numeric).

    A trailing ``;`` or ``.`` is accepted and ignored.
    """
    body = text.strip()
    count = None
    m = _COUNT_PREFIX.match(body)
    if m and ":" not in body[: m.end()]:
        count = int(m.group(1))
        body = body[m.end():]
    body = body.rstrip(";.").strip()
    if ":" in body:
        rots = _parse_numeric(body)
    else:
        lists = [s.strip() for s in body.split(",")]
        n = len(lists)
        rots = []
        for s in lists:
            rot = []
            for ch in s:
                k = _LETTERS.find(ch)
                if k < 0 or k >= n:
                    raise UnknownLabel(f"label {ch!r} outside a..{_LETTERS[n - 1]}")
                rot.append(k)
            rots.append(tuple(rot))
    if count is not None and count != len(rots):
        raise UnbalancedAdjacency(f"declared {count} vertices, found {len(rots)} lists")
    _check_symmetric(rots, UnbalancedAdjacency)
    return PlaneGraph(rots)


def _parse_numeric(body: str) -> list[tuple[int, ...]]:
    entries = [e.strip() for e in body.split(";") if e.strip()]
    n = len(entries)
    rots: list[tuple[int, ...] | None] = [None] * n
    for e in entries:
        head, _, tail = e.partition(":")
        try:
            v = int(head) - 1
            nbrs = [int(x) - 1 for x in tail.split(",") if x.strip()]
        except ValueError as exc:
            raise UnknownLabel(f"bad entry {e!r}") from exc
        if not 0 <= v < n or rots[v] is not None or any(not 0 <= w < n for w in nbrs):
            raise UnknownLabel(f"label out of range in {e!r}")
        rots[v] = tuple(nbrs)
    return rots  # type: ignore[return-value]


def write_ascii_adjacency(g: PlaneGraph, count: bool = True) -> str:
    """Normalised text: ``N list,list,...`` (letters up to 26 vertices)."""
    n = g.vertex_count
    if n <= 26:
        body = ",".join("".join(_LETTERS[w] for w in rot) for rot in g.rotations)
    else:
        body = ";".join(f"{v + 1}:" + ",".join(str(w + 1) for w in rot) for v, rot in enumerate(g.rotations))
    return f"{n} {body}" if count else body


def parse_ascii_stream(text: str) -> list[PlaneGraph]:
    """One graph per non-empty line."""
    return [parse_ascii_adjacency(line) for line in text.splitlines() if line.strip()]


# -- layout ------------------------------------------------------------------------

def _barycentric(g: PlaneGraph, cycle: Sequence[int], skip: int | None = None) -> np.ndarray:
    n = g.vertex_count
    coords = np.full((n, 2), np.nan)
    m = len(cycle)
    for i, v in enumerate(cycle):
        t = np.pi / 2 + 2 * np.pi * i / m
        coords[v] = (np.cos(t), np.sin(t))
    fixed = set(cycle)
    inner = [v for v in range(n) if v not in fixed and v != skip]
    if inner:
        index = {v: i for i, v in enumerate(inner)}
        a = np.zeros((len(inner), len(inner)))
        b = np.zeros((len(inner), 2))
        for v in inner:
            i = index[v]
            for w in g.neighbors(v):
                if w == skip:
                    continue
                a[i, i] += 1
                if w in index:
                    a[i, index[w]] -= 1
                else:
                    b[i] += coords[w]
        try:
            x = np.linalg.solve(a, b)
        except np.linalg.LinAlgError as exc:
            raise SolveFailed(str(exc)) from exc
        if not np.all(np.isfinite(x)) or np.abs(a @ x - b).max() > 1e-9:
            raise SolveFailed("barycentric system residual above 1e-9")
        coords[inner] = x
    return coords


def find_crossings(
    g: PlaneGraph, coords: np.ndarray, tol: float = 1e-7, skip: int | None = None
) -> list[tuple[tuple[int, int], tuple[int, int]]]:
    """Pairs of drawn edges that cross or touch away from shared endpoints."""
    edges = [e for e in g.edges if skip not in e]
    pts = [v for v in range(g.vertex_count) if v != skip]
    xy = coords[pts]
    diff = np.linalg.norm(xy[:, None, :] - xy[None, :, :], axis=2)
    np.fill_diagonal(diff, np.inf)
    bad: list = []
    if diff.min() <= tol:
        i, j = np.unravel_index(diff.argmin(), diff.shape)
        bad.append(((pts[i], pts[i]), (pts[j], pts[j])))

    def orient(p, q, r):
        return (q[0] - p[0]) * (r[1] - p[1]) - (q[1] - p[1]) * (r[0] - p[0])

    def on_segment(p, q, r):
        return (
            min(p[0], q[0]) - tol <= r[0] <= max(p[0], q[0]) + tol
            and min(p[1], q[1]) - tol <= r[1] <= max(p[1], q[1]) + tol
        )

    for i, (a, b) in enumerate(edges):
        p1, p2 = coords[a], coords[b]
        for c, d in edges[i + 1:]:
            if len({a, b, c, d}) < 4:
                continue
            q1, q2 = coords[c], coords[d]
            d1, d2 = orient(q1, q2, p1), orient(q1, q2, p2)
            d3, d4 = orient(p1, p2, q1), orient(p1, p2, q2)
            if ((d1 > tol and d2 < -tol) or (d1 < -tol and d2 > tol)) and (
                (d3 > tol and d4 < -tol) or (d3 < -tol and d4 > tol)
            ):
                bad.append(((a, b), (c, d)))
            elif (
                (abs(d1) <= tol and on_segment(q1, q2, p1))
                or (abs(d2) <= tol and on_segment(q1, q2, p2))
                or (abs(d3) <= tol and on_segment(p1, p2, q1))
                or (abs(d4) <= tol and on_segment(p1, p2, q2))
            ):
                bad.append(((a, b), (c, d)))
    return bad


def tutte_layout(g: PlaneGraph, outer: int | None = None, tol: float = 1e-7) -> np.ndarray:
    """Crossing-free straight-line drawing of a 3-connected plane graph.

    ``outer`` indexes ``g.faces`` (default: a largest face).  Returns an
    array of shape ``(V, 2)``.
    """
    if not is_three_connected(g):
        raise NotThreeConnected("Tutte embedding needs a 3-connected graph")
    if outer is None:
        sizes = g.face_sizes
        outer = max(range(len(sizes)), key=lambda i: (sizes[i], -i))
    coords = _barycentric(g, g.faces[outer])
    if find_crossings(g, coords, tol):
        raise SolveFailed("drawing has crossings")
    return coords


def leader_layout(h: PlaneGraph, leader: int, tol: float = 1e-7) -> np.ndarray:
    """Drawing of ``h`` minus ``leader``, with the leader's link as the outer
    cycle.  The leader's row is NaN; its edges are implied, not drawn."""
    link = list(reversed(h.neighbors(leader)))
    coords = _barycentric(h, link, skip=leader)
    if find_crossings(h, coords, tol, skip=leader):
        raise SolveFailed("drawing has crossings")
    return coords


# -- rendering ---------------------------------------------------------------------

@dataclass
class SvgOptions:
    size: int = 480
    margin: int = 24
    node_radius: float = 5.0
    labels: bool = True
    leader: int | None = None
    highlight: frozenset = frozenset()


def render_svg(g: PlaneGraph, coords: np.ndarray, options: SvgOptions | None = None) -> str:
    """SVG 1.1 drawing.  The leader (if any) and its edges are omitted;
    highlighted edges are drawn thick and red."""
    opt = options or SvgOptions()
    hl = {tuple(sorted(e)) for e in opt.highlight}
    span = opt.size - 2 * opt.margin
    shown = [v for v in range(g.vertex_count) if v != opt.leader]
    xy = coords[shown]
    lo, hi = xy.min(axis=0), xy.max(axis=0)
    scale = span / max(float((hi - lo).max()), 1e-12)

    def pt(v):
        x = opt.margin + (coords[v][0] - lo[0]) * scale
        y = opt.margin + (hi[1] - coords[v][1]) * scale
        return f"{x:.3f}", f"{y:.3f}"

    lines = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{opt.size}" '
        f'height="{opt.size}" viewBox="0 0 {opt.size} {opt.size}">',
        '<g stroke="black" stroke-width="1.2">',
    ]
    for u, v in g.edges:
        if opt.leader in (u, v):
            continue
        (x1, y1), (x2, y2) = pt(u), pt(v)
        style = ' stroke="red" stroke-width="3" class="highlight"' if (u, v) in hl else ""
        lines.append(f'<line x1="{x1}" y1="{y1}" x2="{x2}" y2="{y2}"{style}/>')
    lines.append("</g>")
    lines.append('<g fill="white" stroke="black">')
    for v in shown:
        x, y = pt(v)
        lines.append(f'<circle cx="{x}" cy="{y}" r="{opt.node_radius}"/>')
    lines.append("</g>")
    if opt.labels:
        lines.append('<g font-family="sans-serif" font-size="9" text-anchor="middle">')
        for v in shown:
            x, y = pt(v)
            lines.append(f'<text x="{x}" y="{float(y) - opt.node_radius - 2:.3f}">{v}</text>')
        lines.append("</g>")
    lines.append("</svg>")
    return "\n".join(lines) + "\n"


def render_dot(g: PlaneGraph, name: str = "G") -> str:
    lines = [f"graph {name} {{"]
    lines += [f"  {v} [label=\"{v}\\n{g.degree(v)}\"];" for v in range(g.vertex_count)]
    lines += [f"  {u} -- {v};" for u, v in g.edges]
    lines.append("}")
    return "\n".join(lines) + "\n"
