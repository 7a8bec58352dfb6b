"""Instance generators and witness constructions.

Alongside the standard generators (paths, cycles, grids, random graphs,
random planar triangulations) this module builds the two witness families
used by the guardability results:

* ``build_hts`` constructs H(t,s): a complete core T on t = 2m-1 vertices
  plus, for every m-subset X of the core, a clique K_X of s private
  vertices joined to X.  The result is chordal with diameter 2, so one cop
  suffices on H(t,s) itself.
* ``build_guard_adversary`` surrounds H(t,s) with apex vertices, one per
  transversal of the private cliques, producing a host graph in which k
  cops cannot guard H(t,s).  The transversal family has s^C(t,m) members,
  so above a size budget only the escape certificate is produced: a
  constructive procedure naming, for any k-cop placement, a cop-free
  clique K_X and a cop-free transversal.
* ``build_hole_gadget`` attaches an apex to a non-Helly graph through
  internally disjoint paths whose lengths follow a hole's radii; the base
  graph stays isometric in the gadget and stops being 1-guardable.

``connected_graphs`` enumerates all connected graphs on n vertices up to
isomorphism (1, 1, 2, 6, 21, 112, 853, 11117 for n = 1..8), which the test
suites use as exhaustive corpora.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from itertools import combinations, product
from math import comb

from .graphs import Graph, bits, distance_matrix, is_isometric_subgraph
from .helly import Hole, is_dismantlable, is_valid_hole


def path(n: int) -> Graph:
    if n < 1:
        raise ValueError("path needs n >= 1")
    return Graph(n, [(i, i + 1) for i in range(n - 1)])


def cycle(n: int) -> Graph:
    if n < 3:
        raise ValueError("cycle needs n >= 3")
    return Graph(n, [(i, (i + 1) % n) for i in range(n)])


def complete(n: int) -> Graph:
    if n < 1:
        raise ValueError("complete graph needs n >= 1")
    return Graph(n, [(i, j) for i in range(n) for j in range(i + 1, n)])


def grid(rows: int, cols: int) -> Graph:
    if rows < 1 or cols < 1:
        raise ValueError("grid needs positive dimensions")
    edges = []
    for r in range(rows):
        for c in range(cols):
            v = r * cols + c
            if c + 1 < cols:
                edges.append((v, v + 1))
            if r + 1 < rows:
                edges.append((v, v + cols))
    return Graph(rows * cols, edges)


def petersen() -> Graph:
    outer = [(i, (i + 1) % 5) for i in range(5)]
    inner = [(5 + i, 5 + (i + 2) % 5) for i in range(5)]
    spokes = [(i, 5 + i) for i in range(5)]
    return Graph(10, outer + inner + spokes)


def random_connected(n: int, p: float, seed: int) -> Graph:
    """Random spanning tree plus each remaining pair with probability p."""
    if n < 1:
        raise ValueError("random_connected needs n >= 1")
    rng = random.Random(seed)
    order = list(range(n))
    rng.shuffle(order)
    edges = set()
    for i in range(1, n):
        j = rng.randrange(i)
        u, v = order[i], order[j]
        edges.add((min(u, v), max(u, v)))
    for u in range(n):
        for v in range(u + 1, n):
            if (u, v) not in edges and rng.random() < p:
                edges.add((u, v))
    return Graph(n, sorted(edges))


def random_planar_triangulation(n: int, seed: int) -> Graph:
    """Seeded maximal planar graph: stacked insertions, then random flips.

    Faces are tracked as triangles on the sphere (the initial triangle
    appears twice, once per side).  Each flip replaces the diagonal of a
    quadrilateral formed by two adjacent faces, skipped when the opposite
    diagonal already exists, so the graph stays simple and every face stays
    a triangle.  Output is 3-connected for n >= 4 and has m = 3n - 6.
    """
    if n < 3:
        raise ValueError("triangulation needs n >= 3")
    rng = random.Random(seed)
    faces: list[tuple[int, int, int]] = [(0, 1, 2), (0, 1, 2)]
    for v in range(3, n):
        a, b, c = faces.pop(rng.randrange(len(faces)))
        faces.extend([(a, b, v), (a, c, v), (b, c, v)])

    def edge_set() -> set[tuple[int, int]]:
        es: set[tuple[int, int]] = set()
        for a, b, c in faces:
            es.add((min(a, b), max(a, b)))
            es.add((min(a, c), max(a, c)))
            es.add((min(b, c), max(b, c)))
        return es

    if n >= 4:
        for _ in range(4 * n):
            es = sorted(edge_set())
            u, v = es[rng.randrange(len(es))]
            touching = [i for i, f in enumerate(faces) if u in f and v in f]
            if len(touching) != 2:
                continue
            i, j = touching
            x = next(w for w in faces[i] if w not in (u, v))
            y = next(w for w in faces[j] if w not in (u, v))
            if x == y or (min(x, y), max(x, y)) in edge_set():
                continue
            for idx in sorted((i, j), reverse=True):
                faces.pop(idx)
            faces.extend([(u, x, y), (v, x, y)])

    edges = sorted(edge_set())
    assert len(edges) == 3 * n - 6, "flip bookkeeping broke the face count"
    g = Graph(n, edges)
    assert g.is_connected()
    return g


# --- exhaustive corpus -----------------------------------------------------

_CONNECTED_CACHE: dict[int, list[Graph]] = {}


def _vertex_labels(g: Graph) -> list[tuple]:
    degs = [g.degree(v) for v in range(g.n)]
    rows = [tuple(sorted(g.bfs_levels(v))) for v in range(g.n)]
    return [
        (degs[v], tuple(sorted(degs[u] for u in g.neighbors(v))), rows[v])
        for v in range(g.n)
    ]


def _fingerprint(g: Graph) -> tuple:
    labels = _vertex_labels(g)
    triangles = sum(
        (g.adj_mask(u) & g.adj_mask(v)).bit_count() for u, v in g.edges()
    )
    return (g.n, g.m, tuple(sorted(labels)), triangles)


def is_isomorphic(a: Graph, b: Graph) -> bool:
    if a.n != b.n or a.m != b.m:
        return False
    la, lb = _vertex_labels(a), _vertex_labels(b)
    if sorted(la) != sorted(lb):
        return False
    n = a.n
    cand = [[w for w in range(n) if lb[w] == la[v]] for v in range(n)]
    order = sorted(range(n), key=lambda v: (len(cand[v]), v))
    mapping = [-1] * n

    def assign(i: int, used: int) -> bool:
        if i == n:
            return True
        v = order[i]
        for w in cand[v]:
            if used >> w & 1:
                continue
            ok = True
            for u in order[:i]:
                if a.has_edge(v, u) != b.has_edge(w, mapping[u]):
                    ok = False
                    break
            if ok:
                mapping[v] = w
                if assign(i + 1, used | (1 << w)):
                    return True
        return False

    return assign(0, 0)


def connected_graphs(n: int) -> list[Graph]:
    """All connected graphs on n vertices, one per isomorphism class.

    Built by attaching vertex n-1 to every nonempty neighborhood subset of
    every connected (n-1)-vertex graph; every connected graph arises this
    way because some vertex is never a cut vertex.  Deduplication buckets
    candidates by invariant fingerprint and settles collisions with the
    backtracking isomorphism test.  Results are cached per n.
    """
    if n < 1:
        raise ValueError("need n >= 1")
    if n in _CONNECTED_CACHE:
        return _CONNECTED_CACHE[n]
    if n == 1:
        reps = [Graph(1, [])]
    else:
        parents = connected_graphs(n - 1)
        reps = []
        buckets: dict[tuple, list[int]] = {}
        for parent in parents:
            base = parent.edges()
            for sub in range(1, 1 << (n - 1)):
                g = Graph(n, base + [(v, n - 1) for v in bits(sub)])
                fp = _fingerprint(g)
                bucket = buckets.setdefault(fp, [])
                if not any(is_isomorphic(g, reps[i]) for i in bucket):
                    bucket.append(len(reps))
                    reps.append(g)
    _CONNECTED_CACHE[n] = reps
    return reps


# --- guardability witnesses ------------------------------------------------


@dataclass(frozen=True)
class HtsDescriptor:
    t: int
    s: int
    m: int
    core: tuple[int, ...]
    subsets: tuple[tuple[int, ...], ...]
    privates: tuple[tuple[int, ...], ...]


def _has_perfect_elimination(g: Graph) -> bool:
    alive = g.vertex_mask()
    while alive:
        found = None
        for v in bits(alive):
            nb = g.adj_mask(v) & alive
            ok = True
            for u in bits(nb):
                if nb & ~(g.adj_mask(u) | (1 << u)):
                    ok = False
                    break
            if ok:
                found = v
                break
        if found is None:
            return False
        alive &= ~(1 << found)
    return True


def build_hts(t: int, s: int) -> tuple[Graph, HtsDescriptor]:
    if t < 3 or t % 2 == 0:
        raise ValueError("t must be odd and at least 3")
    if s < 1:
        raise ValueError("s must be at least 1")
    m = (t + 1) // 2
    subsets = tuple(combinations(range(t), m))
    edges = [(i, j) for i in range(t) for j in range(i + 1, t)]
    privates = []
    nxt = t
    for x in subsets:
        mine = tuple(range(nxt, nxt + s))
        nxt += s
        privates.append(mine)
        for i, p in enumerate(mine):
            for q in mine[i + 1 :]:
                edges.append((p, q))
            for v in x:
                edges.append((v, p))
    g = Graph(nxt, edges)
    assert g.n == t + s * comb(t, m)
    assert distance_matrix(g).diameter() == 2
    assert _has_perfect_elimination(g), "H(t,s) must be chordal"
    assert is_dismantlable(g), "chordal graphs dismantle"
    desc = HtsDescriptor(
        t=t, s=s, m=m, core=tuple(range(t)), subsets=subsets,
        privates=tuple(privates),
    )
    return g, desc


class EscapeCertificate:
    """Constructive escape argument for k cops confined to H(t,s).

    For any placement of at most k cops on H(t,s) with m > k and s > k:

    * some clique K_X holds no cop (``cop_free_subset``), so the placement
      never dominates the graph;
    * every clique keeps a cop-free private vertex, so a cop-free
      transversal exists (``escape_transversal``) and the apex above it has
      no cop in its closed neighborhood.
    """

    def __init__(self, descriptor: HtsDescriptor, k: int):
        self.descriptor = descriptor
        self.k = k
        self._size = descriptor.t + descriptor.s * len(descriptor.subsets)

    def _check(self, cops: tuple[int, ...]) -> set[int]:
        if len(cops) > self.k:
            raise ValueError(f"certificate covers at most {self.k} cops")
        placed = set(cops)
        if any(not 0 <= c < self._size for c in placed):
            raise ValueError("cops must stand on H(t,s)")
        return placed

    def cop_free_subset(self, cops: tuple[int, ...]) -> int:
        placed = self._check(cops)
        d = self.descriptor
        for i, x in enumerate(d.subsets):
            if placed.isdisjoint(x) and placed.isdisjoint(d.privates[i]):
                return i
        raise AssertionError("m > k guarantees a cop-free clique")

    def escape_transversal(self, cops: tuple[int, ...]) -> tuple[int, ...]:
        placed = self._check(cops)
        pick = []
        for mine in self.descriptor.privates:
            free = [p for p in mine if p not in placed]
            if not free:
                raise AssertionError("s > k guarantees a free private vertex")
            pick.append(free[0])
        return tuple(pick)


@dataclass(frozen=True)
class AdversaryGadget:
    explicit: bool
    graph: Graph | None
    apex_base: int
    transversals: tuple[tuple[int, ...], ...] | None
    certificate: EscapeCertificate


def build_guard_adversary(
    h: Graph, descriptor: HtsDescriptor, k: int, explicit_budget: int = 4096
) -> AdversaryGadget:
    if k < 1:
        raise ValueError("k must be positive")
    if descriptor.m <= k or descriptor.s <= k:
        raise ValueError("needs m > k and s > k")
    certificate = EscapeCertificate(descriptor, k)
    count = descriptor.s ** len(descriptor.subsets)
    if count > explicit_budget:
        return AdversaryGadget(
            explicit=False, graph=None, apex_base=h.n, transversals=None,
            certificate=certificate,
        )
    transversals = tuple(product(*descriptor.privates))
    edges = list(h.edges())
    for idx, chosen in enumerate(transversals):
        apex = h.n + idx
        edges.extend((v, apex) for v in chosen)
    g = Graph(h.n + count, edges)
    return AdversaryGadget(
        explicit=True, graph=g, apex_base=h.n, transversals=transversals,
        certificate=certificate,
    )


def build_hole_gadget(h: Graph, hole: Hole) -> Graph:
    """Attach an apex through internally disjoint paths of the hole's radii.

    Each center v_i receives a fresh path of length d_i to the apex.  The
    pairwise feasibility of the hole keeps h isometric in the result: a
    detour through the apex between centers v_i and v_j costs d_i + d_j,
    at least their distance in h.
    """
    if not is_valid_hole(h, hole):
        raise ValueError("not a valid hole of this graph")
    edges = list(h.edges())
    apex = h.n
    nxt = h.n + 1
    for v, r in zip(hole.centers, hole.radii):
        prev = apex
        for _ in range(r - 1):
            edges.append((prev, nxt))
            prev = nxt
            nxt += 1
        edges.append((prev, v))
    g = Graph(nxt, edges)
    assert is_isometric_subgraph(g, range(h.n)), "gadget broke isometry"
    return g
