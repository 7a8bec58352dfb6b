"""Wide shadows and bypaths on isometric subgraphs.

The wide shadow of a vertex v on a subgraph H collects the H-vertices that are
at most as far from every x in H as v is. On an isometric path the shadow is an
interval of positions and drifts by at most one position per robber move, which
is what makes shadow-tracking cop play work. Bypaths are the exact obstruction
to slack: an off-path vertex has a one-point shadow precisely when it sits
inside an equally long detour of the path.

Two independent routes compute bypath-freeness: the shadow criterion (one BFS
per path vertex, then interval scans) and the layered detour search straight
from the definition. Tests hold them against each other.
"""

from __future__ import annotations

from pursuit.graphs import Graph, Path, bits

__all__ = [
    "PathShadows",
    "bypath_vertices",
    "bypaths",
    "find_bypath",
    "gamma",
    "is_bypath_free",
    "is_bypath_free_by_search",
    "wide_shadow",
]


def gamma(
    g: Graph, target: frozenset[int] | set[int], x: int, v: int, within: int | None = None
) -> frozenset[int]:
    """Target vertices no farther from x than v is (one shadow constraint)."""
    dist = g.bfs_levels(x, within)
    dv = dist[v]
    if dv < 0:
        return frozenset(target)
    return frozenset(y for y in target if 0 <= dist[y] <= dv)


def wide_shadow(
    g: Graph, target, v: int, within: int | None = None
) -> frozenset[int]:
    """Intersection of gamma over all target vertices."""
    tv = sorted(set(target))
    result = set(tv)
    for x in tv:
        dist = g.bfs_levels(x, within)
        dv = dist[v]
        if dv < 0:
            continue
        result = {y for y in result if 0 <= dist[y] <= dv}
        if not result:
            break
    return frozenset(result)


class PathShadows:
    """Shadow queries against one isometric path in a fixed host.

    Caches one BFS per path vertex at construction; each query is then a
    single min/max scan over positions. Distances along the path equal
    position differences by isometry, so the shadow is always the interval
    [max_p(p - d_p), min_p(p + d_p)] clamped to the path.
    """

    __slots__ = ("g", "path", "within", "dists")

    def __init__(
        self, g: Graph, path: Path, within: int | None = None, verify: bool = True
    ) -> None:
        self.g = g
        self.path = path
        self.within = g.vertex_mask() if within is None else within
        if verify and not path.is_isometric_in(g, self.within):
            raise ValueError("path is not isometric in the host")
        self.dists = [g.bfs_levels(x, self.within) for x in path.vertices]

    def interval(self, v: int) -> tuple[int, int]:
        """Shadow of v as an inclusive (lo, hi) position range on the path."""
        if not self.within >> v & 1:
            raise ValueError(f"vertex {v} is outside the host")
        lo, hi = 0, self.path.length
        for p, dist in enumerate(self.dists):
            d = dist[v]
            if d < 0:
                continue
            if p - d > lo:
                lo = p - d
            if p + d < hi:
                hi = p + d
        # Nonempty for any isometric path: paths are Helly, so the balls that
        # define the shadow have a common vertex.
        assert lo <= hi, "empty shadow on an isometric path"
        return lo, hi

    def shadow_vertices(self, v: int) -> tuple[int, ...]:
        lo, hi = self.interval(v)
        return self.path.vertices[lo : hi + 1]

    def contains(self, v: int, q: int) -> bool:
        """Whether path position q lies in the shadow of v."""
        lo, hi = self.interval(v)
        return lo <= q <= hi


# -- bypaths ------------------------------------------------------------------


def _detour_levels(
    g: Graph, path: Path, within: int, i: int, j: int,
    di: list[int], dj: list[int],
) -> list[list[int]] | None:
    """Off-path vertices on equal-length detours from position i to j.

    Level k holds the candidates at distance k from v_i and j-i-k from v_j.
    Returns None as soon as some level is empty (no detour can exist).
    """
    span = j - i
    pmask = path.mask()
    levels: list[list[int]] = []
    for k in range(1, span):
        lvl = [
            w
            for w in bits(within & ~pmask)
            if di[w] == k and dj[w] == span - k
        ]
        if not lvl:
            return None
        levels.append(lvl)
    return levels


def _prune_levels(
    g: Graph, vi: int, vj: int, levels: list[list[int]]
) -> list[list[int]] | None:
    """Keep only vertices reachable from v_i and co-reachable to v_j."""
    fwd = 1 << vi
    trimmed: list[list[int]] = []
    for lvl in levels:
        lvl = [w for w in lvl if g.adj_mask(w) & fwd]
        if not lvl:
            return None
        trimmed.append(lvl)
        fwd = 0
        for w in lvl:
            fwd |= 1 << w
    back = 1 << vj
    for k in range(len(trimmed) - 1, -1, -1):
        trimmed[k] = [w for w in trimmed[k] if g.adj_mask(w) & back]
        if not trimmed[k]:
            return None
        back = 0
        for w in trimmed[k]:
            back |= 1 << w
    return trimmed


def _span_pairs(length: int):
    for i in range(length - 1):
        for j in range(i + 2, length + 1):
            yield i, j


def find_bypath(g: Graph, path: Path, within: int | None = None) -> Path | None:
    """First bypath of the path in the host, or None.

    Deterministic: smallest start position, then smallest end position, then
    the lexicographically least vertex sequence through the detour levels.
    """
    w = g.vertex_mask() if within is None else within
    if not path.is_isometric_in(g, w):
        raise ValueError("path is not isometric in the host")
    dists = [g.bfs_levels(x, w) for x in path.vertices]
    for i, j in _span_pairs(path.length):
        levels = _detour_levels(g, path, w, i, j, dists[i], dists[j])
        if levels is None:
            continue
        levels = _prune_levels(g, path.vertices[i], path.vertices[j], levels)
        if levels is None:
            continue
        seq = [path.vertices[i]]
        for lvl in levels:
            prev = seq[-1]
            seq.append(min(w2 for w2 in lvl if g.has_edge(prev, w2)))
        seq.append(path.vertices[j])
        return Path(tuple(seq))
    return None


def bypaths(
    g: Graph, path: Path, within: int | None = None, limit: int | None = None
) -> list[Path]:
    """All bypaths of the path in the host, in deterministic order.

    A bypath replaces the stretch between two positions i < j (at least two
    apart) by an equally long detour that avoids the path internally; the
    rerouted walk is then itself a geodesic, hence isometric. The count can
    grow quickly, so pass limit when only existence or a sample matters.
    """
    w = g.vertex_mask() if within is None else within
    if not path.is_isometric_in(g, w):
        raise ValueError("path is not isometric in the host")
    dists = [g.bfs_levels(x, w) for x in path.vertices]
    out: list[Path] = []
    for i, j in _span_pairs(path.length):
        levels = _detour_levels(g, path, w, i, j, dists[i], dists[j])
        if levels is None:
            continue
        levels = _prune_levels(g, path.vertices[i], path.vertices[j], levels)
        if levels is None:
            continue
        vi, vj = path.vertices[i], path.vertices[j]
        stack: list[list[int]] = [[vi]]
        while stack:
            seq = stack.pop()
            k = len(seq) - 1
            if k == len(levels):
                if g.has_edge(seq[-1], vj):
                    out.append(Path(tuple(seq) + (vj,)))
                    if limit is not None and len(out) >= limit:
                        return out
                continue
            for nxt in sorted(
                (x for x in levels[k] if g.has_edge(seq[-1], x)), reverse=True
            ):
                stack.append(seq + [nxt])
    return out


def bypath_vertices(g: Graph, path: Path, within: int | None = None) -> frozenset[int]:
    """Off-path vertices lying on at least one bypath.

    Computed by level pruning alone (reachable and co-reachable across each
    detour), so it stays polynomial even when bypaths are plentiful.
    """
    w = g.vertex_mask() if within is None else within
    if not path.is_isometric_in(g, w):
        raise ValueError("path is not isometric in the host")
    dists = [g.bfs_levels(x, w) for x in path.vertices]
    found: set[int] = set()
    for i, j in _span_pairs(path.length):
        levels = _detour_levels(g, path, w, i, j, dists[i], dists[j])
        if levels is None:
            continue
        levels = _prune_levels(g, path.vertices[i], path.vertices[j], levels)
        if levels is None:
            continue
        for lvl in levels:
            found.update(lvl)
    return frozenset(found)


def is_bypath_free_by_search(
    g: Graph, path: Path, within: int | None = None
) -> bool:
    """Bypath-freeness straight from the definition (detour search)."""
    return find_bypath(g, path, within) is None


def is_bypath_free(g: Graph, path: Path, within: int | None = None) -> bool:
    """Bypath-freeness via the shadow criterion.

    An off-path vertex has a one-point shadow exactly when it lies on a
    bypath, so a non-trivial isometric path is bypath-free exactly when every
    off-path host vertex keeps a shadow of at least two positions. Paths
    shorter than two edges admit no bypath at all.
    """
    w = g.vertex_mask() if within is None else within
    if not path.is_isometric_in(g, w):
        raise ValueError("path is not isometric in the host")
    if path.length < 2:
        return True
    oracle = PathShadows(g, path, w, verify=False)
    pmask = path.mask()
    for v in bits(w & ~pmask):
        lo, hi = oracle.interval(v)
        if lo == hi:
            return False
    return True
