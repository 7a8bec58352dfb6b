"""Core graph type and metric utilities.

Simple undirected graphs on dense vertex ids 0..n-1. Adjacency is kept as one
Python int bitmask per vertex, which makes BFS and set algebra cheap enough for
the exhaustive corpora and the n=200 strategy campaigns without numpy.

Distances use a dedicated UNREACHABLE sentinel (IEEE infinity), never a large
magic number, so metric checks fail loudly instead of silently passing.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence

UNREACHABLE: float = math.inf


def bits(mask: int) -> Iterator[int]:
    """Yield the set bit positions of mask in increasing order."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def mask_of(vertices: Iterable[int]) -> int:
    m = 0
    for v in vertices:
        m |= 1 << v
    return m


class Graph:
    """Immutable simple undirected graph on vertices 0..n-1."""

    __slots__ = ("n", "_adj", "_neigh")

    def __init__(self, n: int, edges: Iterable[tuple[int, int]] = ()) -> None:
        if n < 0:
            raise ValueError("vertex count must be non-negative")
        adj = [0] * n
        for u, v in edges:
            if not (0 <= u < n and 0 <= v < n):
                raise ValueError(f"edge ({u},{v}) outside vertex range 0..{n - 1}")
            if u == v:
                raise ValueError(f"loop at vertex {u} not allowed")
            adj[u] |= 1 << v
            adj[v] |= 1 << u
        self.n = n
        self._adj = tuple(adj)
        self._neigh: tuple[tuple[int, ...], ...] | None = None

    # -- basic accessors ---------------------------------------------------

    def adj_mask(self, v: int) -> int:
        return self._adj[v]

    def neighbors(self, v: int) -> tuple[int, ...]:
        if self._neigh is None:
            self._neigh = tuple(tuple(bits(m)) for m in self._adj)
        return self._neigh[v]

    def degree(self, v: int) -> int:
        return self._adj[v].bit_count()

    def has_edge(self, u: int, v: int) -> bool:
        return bool(self._adj[u] >> v & 1)

    def edges(self) -> list[tuple[int, int]]:
        out = []
        for u in range(self.n):
            rest = self._adj[u] >> (u + 1)
            for k in bits(rest):
                out.append((u, u + 1 + k))
        return out

    @property
    def m(self) -> int:
        return sum(a.bit_count() for a in self._adj) // 2

    def vertex_mask(self) -> int:
        return (1 << self.n) - 1

    def __eq__(self, other: object) -> bool:
        return isinstance(other, Graph) and self._adj == other._adj

    def __hash__(self) -> int:
        return hash(self._adj)

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, m={self.m})"

    # -- traversal ---------------------------------------------------------

    def bfs_levels(self, src: int, within: int | None = None) -> list[int]:
        """Distances from src as a list, -1 for unreachable.

        within restricts the search to the given vertex bitmask; src must be
        inside it. This is the hot path shared by every metric computation.
        """
        allowed = self.vertex_mask() if within is None else within
        adj = self._adj
        dist = [-1] * self.n
        dist[src] = 0
        seen = 1 << src
        frontier = seen
        d = 0
        while frontier:
            d += 1
            nxt = 0
            for v in bits(frontier):
                nxt |= adj[v]
            nxt &= allowed & ~seen
            for v in bits(nxt):
                dist[v] = d
            seen |= nxt
            frontier = nxt
        return dist

    def distances_from(self, src: int, within: int | None = None) -> list[float]:
        return [UNREACHABLE if d < 0 else d for d in self.bfs_levels(src, within)]

    def is_connected(self) -> bool:
        if self.n == 0:
            return True
        return all(d >= 0 for d in self.bfs_levels(0))

    def components(self) -> list[int]:
        """Connected components as vertex bitmasks."""
        remaining = self.vertex_mask()
        out = []
        while remaining:
            src = (remaining & -remaining).bit_length() - 1
            comp = 1 << src
            frontier = comp
            while frontier:
                nxt = 0
                for v in bits(frontier):
                    nxt |= self._adj[v]
                nxt &= remaining & ~comp
                comp |= nxt
                frontier = nxt
            out.append(comp)
            remaining &= ~comp
        return out

    def component_of(self, v: int, within: int | None = None) -> int:
        """Bitmask of the component of v inside the given vertex mask."""
        allowed = self.vertex_mask() if within is None else within
        comp = 1 << v
        frontier = comp
        while frontier:
            nxt = 0
            for u in bits(frontier):
                nxt |= self._adj[u]
            nxt &= allowed & ~comp
            comp |= nxt
            frontier = nxt
        return comp

    # -- derived graphs ----------------------------------------------------

    def induced(self, vertices: Iterable[int]) -> tuple[Graph, list[int]]:
        """Induced subgraph plus the list mapping new ids to old ids."""
        keep = sorted(set(vertices))
        index = {old: new for new, old in enumerate(keep)}
        edges = [
            (index[u], index[v])
            for u, v in self.edges()
            if u in index and v in index
        ]
        return Graph(len(keep), edges), keep

    def with_edges_added(
        self, extra_vertices: int, edges: Iterable[tuple[int, int]]
    ) -> Graph:
        n = self.n + extra_vertices
        return Graph(n, self.edges() + list(edges))


# -- graph6 codec -----------------------------------------------------------


def _g6_size(data: str) -> tuple[int, int]:
    """Decode the leading size field, return (n, chars consumed)."""
    if not data:
        raise ValueError("empty graph6 string")
    c = ord(data[0])
    if c == 126:
        if len(data) < 4:
            raise ValueError("truncated graph6 size field")
        if ord(data[1]) == 126:
            raise ValueError("graph6 inputs beyond 258047 vertices not supported")
        n = 0
        for ch in data[1:4]:
            n = n << 6 | (ord(ch) - 63)
        return n, 4
    if not 63 <= c <= 125:
        raise ValueError(f"invalid graph6 size character {data[0]!r}")
    return c - 63, 1


def from_graph6(text: str) -> Graph:
    """Parse one graph in graph6 format (optional >>graph6<< header)."""
    s = text.strip()
    if s.startswith(">>graph6<<"):
        s = s[len(">>graph6<<") :]
    n, at = _g6_size(s)
    need = (n * (n - 1) // 2 + 5) // 6
    body = s[at:]
    if len(body) != need:
        raise ValueError(f"graph6 body length {len(body)}, expected {need} for n={n}")
    bitstream = 0
    for ch in body:
        c = ord(ch)
        if not 63 <= c <= 126:
            raise ValueError(f"invalid graph6 data character {ch!r}")
        bitstream = bitstream << 6 | (c - 63)
    total_bits = 6 * len(body)
    edges = []
    k = 0
    for j in range(1, n):
        for i in range(j):
            bit = bitstream >> (total_bits - 1 - k) & 1
            if bit:
                edges.append((i, j))
            k += 1
    return Graph(n, edges)


def to_graph6(g: Graph) -> str:
    n = g.n
    if n <= 62:
        head = chr(63 + n)
    elif n <= 258047:
        head = "~" + "".join(chr(63 + (n >> s & 63)) for s in (12, 6, 0))
    else:
        raise ValueError("graphs beyond 258047 vertices not supported")
    nbits = n * (n - 1) // 2
    stream = 0
    for j in range(1, n):
        col = g.adj_mask(j)
        for i in range(j):
            stream = stream << 1 | (col >> i & 1)
    pad = (-nbits) % 6
    stream <<= pad
    nbits += pad
    body = "".join(
        chr(63 + (stream >> (nbits - 6 * (k + 1)) & 63)) for k in range(nbits // 6)
    )
    return head + body


# -- edge-list text I/O ------------------------------------------------------


def from_edge_list(text: str) -> Graph:
    """Parse edge-list text: optional 'n' line, then 'u v' lines.

    Blank lines and lines starting with '#' are ignored. Without an explicit
    vertex-count line, n is one past the largest mentioned vertex.
    """
    n: int | None = None
    edges: list[tuple[int, int]] = []
    for raw in text.splitlines():
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split()
        if len(parts) == 1:
            if n is not None:
                raise ValueError("duplicate vertex-count line in edge list")
            n = int(parts[0])
        elif len(parts) == 2:
            edges.append((int(parts[0]), int(parts[1])))
        else:
            raise ValueError(f"bad edge-list line: {raw!r}")
    if n is None:
        n = 1 + max((max(u, v) for u, v in edges), default=-1)
    return Graph(n, edges)


def to_edge_list(g: Graph) -> str:
    lines = [str(g.n)]
    lines += [f"{u} {v}" for u, v in g.edges()]
    return "\n".join(lines) + "\n"


# -- metric structures -------------------------------------------------------


class DistanceMatrix:
    """All-pairs shortest-path distances with an UNREACHABLE sentinel."""

    __slots__ = ("rows",)

    def __init__(self, rows: Sequence[Sequence[float]]) -> None:
        self.rows = tuple(tuple(r) for r in rows)

    @property
    def n(self) -> int:
        return len(self.rows)

    def __getitem__(self, pair: tuple[int, int]) -> float:
        u, v = pair
        return self.rows[u][v]

    def row(self, v: int) -> tuple[float, ...]:
        return self.rows[v]

    def eccentricity(self, v: int) -> float:
        return max(self.rows[v]) if self.rows else 0

    def diameter(self) -> float:
        return max((max(r) for r in self.rows), default=0)


def distance_matrix(g: Graph, within: int | None = None) -> DistanceMatrix:
    verts = range(g.n) if within is None else list(bits(within))
    rows: list[list[float]] = [[UNREACHABLE] * g.n for _ in range(g.n)]
    for v in verts:
        rows[v] = g.distances_from(v, within)
    return DistanceMatrix(rows)


def ball(g: Graph, center: int, radius: int) -> frozenset[int]:
    """Closed ball: all vertices within the given distance of center."""
    if radius < 0:
        raise ValueError("radius must be non-negative")
    lev = g.bfs_levels(center)
    return frozenset(v for v in range(g.n) if 0 <= lev[v] <= radius)


def is_isometric_subgraph(g: Graph, vertices: Iterable[int]) -> bool:
    """True iff the induced subgraph preserves all host distances."""
    keep = sorted(set(vertices))
    if not keep:
        return False
    sub_mask = mask_of(keep)
    for v in keep:
        host = g.bfs_levels(v)
        inner = g.bfs_levels(v, sub_mask)
        for u in keep:
            if host[u] != inner[u]:
                return False
    return True


@dataclass(frozen=True)
class Path:
    """A path given by its vertex sequence; consecutive vertices are adjacent."""

    vertices: tuple[int, ...]

    def __post_init__(self) -> None:
        if not self.vertices:
            raise ValueError("path must have at least one vertex")
        if len(set(self.vertices)) != len(self.vertices):
            raise ValueError("path vertices must be distinct")

    @property
    def length(self) -> int:
        return len(self.vertices) - 1

    @property
    def ends(self) -> tuple[int, int]:
        return self.vertices[0], self.vertices[-1]

    def index_of(self, v: int) -> int:
        return self.vertices.index(v)

    def segment(self, i: int, j: int) -> Path:
        if i > j:
            raise ValueError("segment indices out of order")
        return Path(self.vertices[i : j + 1])

    def reversed(self) -> Path:
        return Path(tuple(reversed(self.vertices)))

    def vertex_set(self) -> frozenset[int]:
        return frozenset(self.vertices)

    def mask(self) -> int:
        return mask_of(self.vertices)

    def is_path_in(self, g: Graph) -> bool:
        return all(
            g.has_edge(u, v) for u, v in zip(self.vertices, self.vertices[1:])
        )

    def is_isometric_in(self, g: Graph, within: int | None = None) -> bool:
        """True iff distances along the path equal distances in g.

        within restricts g to a vertex mask (the path must lie inside it), so
        the same check serves both whole-graph and induced-host isometry.
        """
        if not self.is_path_in(g):
            return False
        verts = self.vertices
        for i, v in enumerate(verts):
            lev = g.bfs_levels(v, within)
            for j in range(i + 1, len(verts)):
                if lev[verts[j]] != j - i:
                    return False
        return True


def shortest_path(
    g: Graph, src: int, dst: int, within: int | None = None
) -> Path | None:
    """Lexicographically least shortest path from src to dst, or None.

    Lex-least over vertex sequences among all shortest paths, which pins down
    a deterministic choice everywhere a geodesic is needed.
    """
    allowed = g.vertex_mask() if within is None else within
    if not (allowed >> src & 1 and allowed >> dst & 1):
        return None
    back = g.bfs_levels(dst, within)
    if back[src] < 0:
        return None
    seq = [src]
    cur = src
    while cur != dst:
        step = None
        for v in bits(g.adj_mask(cur) & allowed):
            if back[v] == back[cur] - 1:
                step = v
                break
        assert step is not None
        seq.append(step)
        cur = step
    return Path(tuple(seq))


# -- small exact invariants ---------------------------------------------------


def is_dominating(g: Graph, vertices: Iterable[int]) -> bool:
    covered = 0
    for v in vertices:
        covered |= g.adj_mask(v) | 1 << v
    return covered == g.vertex_mask()


def domination_number(g: Graph, limit: int = 24) -> int:
    """Exact minimum dominating set size, by subset search over closed stars.

    Guarded to small graphs: raises for n > limit since the search is
    exponential.
    """
    n = g.n
    if n == 0:
        return 0
    if n > limit:
        raise ValueError(f"domination_number is exact-only, n={n} exceeds {limit}")
    stars = [g.adj_mask(v) | 1 << v for v in range(n)]
    full = g.vertex_mask()
    from itertools import combinations

    for k in range(1, n + 1):
        for combo in combinations(range(n), k):
            cov = 0
            for v in combo:
                cov |= stars[v]
            if cov == full:
                return k
    return n
