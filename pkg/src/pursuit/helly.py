"""Helly recognition, dismantling orders, and hole witnesses.

A graph is Helly when its family of closed balls has the Helly property:
every pairwise-intersecting collection of balls has a common vertex.  A
*hole* is a minimal witness against that property: at least three centers
with positive radii whose balls pairwise intersect yet share no vertex.

Three independent routes decide the property:

* ``is_helly`` runs the polynomial triple test: for each vertex triple the
  balls that contain at least two of the three vertices must have a common
  point.  Any two such balls already share one of the triple, so the family
  is pairwise intersecting; conversely a ball hypergraph is Helly exactly
  when all these triple families have common points.
* ``is_helly_oracle`` searches exhaustively for a pairwise-intersecting
  ball family with empty intersection.  Exponential, guarded to small n,
  and kept deliberately independent of the triple test.
* ``find_hole`` produces the canonical smallest witness, or ``None``.

Dismantling orders double as data for shadow-capture controllers, so each
elimination step records its witness vertex.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations

from .graphs import Graph, bits


def _dist_rows(g: Graph, infinity: int) -> list[list[int]]:
    rows = []
    for v in range(g.n):
        rows.append([d if d >= 0 else infinity for d in g.bfs_levels(v)])
    return rows


def find_corner(g: Graph, alive: int | None = None) -> tuple[int, int] | None:
    """Lowest-index corner of the subgraph induced on ``alive``, with witness.

    A corner is a vertex x whose closed neighborhood is contained in the
    closed neighborhood of some neighbor y.  Returns (x, y) with the lowest
    x and, for that x, the lowest y; ``None`` when no corner exists.
    """
    if alive is None:
        alive = g.vertex_mask()
    for x in bits(alive):
        nx = (g.adj_mask(x) | (1 << x)) & alive
        for y in bits(g.adj_mask(x) & alive):
            if nx & ~(g.adj_mask(y) | (1 << y)) == 0:
                return (x, y)
    return None


def dismantling_order(g: Graph) -> list[tuple[int, int]] | None:
    """Greedy corner elimination down to a single vertex.

    Returns the deletion sequence as (corner, witness) pairs, or ``None``
    when the graph is not dismantlable.  Removing any corner of a
    dismantlable graph leaves a dismantlable graph, so greedy choice is
    safe.  A one-vertex graph yields the empty order.
    """
    if g.n == 0:
        return []
    alive = g.vertex_mask()
    order: list[tuple[int, int]] = []
    while alive.bit_count() > 1:
        step = find_corner(g, alive)
        if step is None:
            return None
        order.append(step)
        alive &= ~(1 << step[0])
    return order


def is_dismantlable(g: Graph) -> bool:
    return dismantling_order(g) is not None


def is_helly(g: Graph) -> bool:
    """Polynomial Helly test over vertex triples.

    For a triple (a, b, c) and a center u, every ball around u containing
    at least two of the triple has radius at least
    m(u) = min over pairs {x, y} of max(d(u,x), d(u,y)).
    The graph is Helly iff for every triple some vertex w lies within m(u)
    of every center u.
    """
    n = g.n
    if n <= 2:
        return True
    inf = n
    rows = _dist_rows(g, inf)
    full = g.vertex_mask()
    # ball_masks[u][r] for r in 0..n, saturating at the full component.
    ball_masks: list[list[int]] = []
    for u in range(n):
        row = rows[u]
        masks = [0] * (inf + 1)
        for v in range(n):
            if row[v] <= inf:
                for r in range(row[v], inf + 1):
                    masks[r] |= 1 << v
        ball_masks.append(masks)
    for a, b, c in combinations(range(n), 3):
        inter = full
        for u in range(n):
            row = rows[u]
            da, db, dc = row[a], row[b], row[c]
            m = min(max(da, db), max(db, dc), max(da, dc))
            if m >= inf:
                continue
            inter &= ball_masks[u][m]
            if inter == 0:
                return False
    return True


def is_helly_oracle(g: Graph, limit: int = 8) -> bool:
    """Exhaustive search for a pairwise-intersecting family with empty core.

    Independent of the triple test.  Without loss of generality a violating
    family keeps at most one ball per center (the smallest), skips radius 0
    (a radius-0 ball forces its center into every other ball), and skips
    radii reaching the center's eccentricity (such balls never constrain
    the intersection).  The search picks the lowest vertex still in the
    running intersection and branches over compatible balls that exclude
    it, so every branch makes progress.
    """
    if g.n > limit:
        raise ValueError(f"oracle limited to n <= {limit}, got {g.n}")
    n = g.n
    if n <= 2:
        return True
    inf = n
    rows = _dist_rows(g, inf)
    balls: list[tuple[int, int, int]] = []
    for v in range(n):
        ecc = max(d for d in rows[v] if d < inf)
        for r in range(1, ecc):
            mask = 0
            for u in range(n):
                if rows[v][u] <= r:
                    mask |= 1 << u
            balls.append((v, r, mask))

    def search(chosen: list[tuple[int, int]], used: int, inter: int) -> bool:
        pivot = (inter & -inter).bit_length() - 1
        for v, r, mask in balls:
            if used >> v & 1 or mask >> pivot & 1:
                continue
            if any(rows[v][w] > r + s for w, s in chosen):
                continue
            nxt = inter & mask
            if nxt == 0:
                return True
            chosen.append((v, r))
            hit = search(chosen, used | (1 << v), nxt)
            chosen.pop()
            if hit:
                return True
        return False

    return not search([], 0, g.vertex_mask())


@dataclass(frozen=True)
class Hole:
    """Witness against the Helly property: centers and positive radii whose
    balls pairwise intersect but have no common vertex."""

    centers: tuple[int, ...]
    radii: tuple[int, ...]

    def __post_init__(self) -> None:
        if len(self.centers) != len(self.radii):
            raise ValueError("centers and radii must align")
        if len(self.centers) < 3:
            raise ValueError("a hole needs at least three centers")
        if len(set(self.centers)) != len(self.centers):
            raise ValueError("centers must be distinct")
        if any(r < 1 for r in self.radii):
            raise ValueError("radii must be positive")


def is_valid_hole(g: Graph, hole: Hole) -> bool:
    n = g.n
    if any(not 0 <= v < n for v in hole.centers):
        return False
    inf = n
    rows = {v: [d if d >= 0 else inf for d in g.bfs_levels(v)] for v in set(hole.centers)}
    k = len(hole.centers)
    for i in range(k):
        for j in range(i + 1, k):
            vi, vj = hole.centers[i], hole.centers[j]
            if rows[vi][vj] > hole.radii[i] + hole.radii[j]:
                return False
    for u in range(n):
        if all(rows[v][u] <= r for v, r in zip(hole.centers, hole.radii)):
            return False
    return True


def find_hole(g: Graph) -> Hole | None:
    """Canonical minimal hole, or ``None`` for Helly graphs.

    Minimality order: fewest centers, then smallest radius sum, then
    lexicographically least (centers, radii).  Radii are searched in
    1..ecc(center)-1, which suffices: larger radii never constrain and a
    radius-0 ball cannot appear in a violating family.
    """
    n = g.n
    if n <= 2:
        return None
    inf = n
    rows = _dist_rows(g, inf)
    max_r = []
    ball_masks: list[list[int]] = []
    for v in range(n):
        ecc = max(d for d in rows[v] if d < inf)
        max_r.append(ecc - 1)
        masks = [0] * (max(ecc, 1))
        for r in range(ecc):
            mask = 0
            for u in range(n):
                if rows[v][u] <= r:
                    mask |= 1 << u
            masks[r] = mask
        ball_masks.append(masks)
    eligible = [v for v in range(n) if max_r[v] >= 1]

    def radii_tuples(centers: tuple[int, ...], total: int):
        # Compositions of `total` honoring per-center bounds and, as a
        # prefix filter, pairwise ball intersection with earlier picks.
        k = len(centers)
        picks = [0] * k

        def rec(i: int, remaining: int):
            if i == k - 1:
                r = remaining
                if not 1 <= r <= max_r[centers[i]]:
                    return
                if any(
                    rows[centers[i]][centers[j]] > r + picks[j] for j in range(i)
                ):
                    return
                picks[i] = r
                yield tuple(picks)
                return
            tail_min = k - 1 - i
            tail_max = sum(max_r[centers[j]] for j in range(i + 1, k))
            lo = max(1, remaining - tail_max)
            hi = min(max_r[centers[i]], remaining - tail_min)
            for r in range(lo, hi + 1):
                if any(
                    rows[centers[i]][centers[j]] > r + picks[j] for j in range(i)
                ):
                    continue
                picks[i] = r
                yield from rec(i + 1, remaining - r)

        yield from rec(0, total)

    for k in range(3, len(eligible) + 1):
        top = sum(sorted((max_r[v] for v in eligible), reverse=True)[:k])
        for total in range(k, top + 1):
            for centers in combinations(eligible, k):
                if sum(max_r[v] for v in centers) < total:
                    continue
                for radii in radii_tuples(centers, total):
                    inter = g.vertex_mask()
                    for v, r in zip(centers, radii):
                        inter &= ball_masks[v][r]
                        if inter == 0:
                            break
                    if inter == 0:
                        return Hole(centers, radii)
    return None
