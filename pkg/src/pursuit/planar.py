"""Combinatorial planar embeddings, the two-path region calculus, and the
vertex classification and bypath selection the capture strategy leans on.

An embedding is a rotation system: every present vertex carries a cyclic
order of its present neighbors.  Faces come from dart tracing, the Euler
count is validated at construction, and all topology below (regions,
fan quadrants, strips) is computed from face floods; no coordinates exist
anywhere.  Embeddings can be masked to a connected sub-host while keeping
the original vertex labels, which is how the strategy engine scopes its
shrinking worlds.
"""

from __future__ import annotations

from dataclasses import dataclass

from .graphs import Graph, Path, bits, mask_of
from .shadows import find_bypath, is_bypath_free


class PlanarityFault(AssertionError):
    """A conclusion the theory guarantees failed an internal re-check."""


class PlanarEmbedding:
    """Rotation system over (a masked sub-host of) a graph."""

    def __init__(self, graph: Graph, rotation, mask: int | None = None):
        self.graph = graph
        self.mask = graph.vertex_mask() if mask is None else mask
        rot = {}
        for v in bits(self.mask):
            row = tuple(rotation[v])
            allowed = set(graph.neighbors(v))
            if len(set(row)) != len(row) or any(
                u not in allowed or not self.mask >> u & 1 for u in row
            ):
                raise ValueError(f"rotation at {v} is not its neighbor set")
            expected = sum(1 for u in graph.neighbors(v) if self.mask >> u & 1)
            if len(row) != expected:
                raise ValueError(f"rotation at {v} misses neighbors")
            rot[v] = row
        self.rotation = rot
        self._faces: tuple[tuple[tuple[int, int], ...], ...] | None = None
        self._face_of: dict[tuple[int, int], int] | None = None
        self._check_euler()

    # -- faces -------------------------------------------------------------

    def _next_dart(self, u: int, v: int) -> tuple[int, int]:
        row = self.rotation[v]
        i = row.index(u)
        return v, row[(i + 1) % len(row)]

    def faces(self) -> tuple[tuple[tuple[int, int], ...], ...]:
        if self._faces is None:
            seen: set[tuple[int, int]] = set()
            out = []
            for u in sorted(self.rotation):
                for w in self.rotation[u]:
                    if (u, w) in seen:
                        continue
                    face = []
                    dart = (u, w)
                    while dart not in seen:
                        seen.add(dart)
                        face.append(dart)
                        dart = self._next_dart(*dart)
                    out.append(tuple(face))
            self._faces = tuple(out)
            self._face_of = {
                d: i for i, face in enumerate(self._faces) for d in face
            }
        return self._faces

    def face_of(self, u: int, v: int) -> int:
        self.faces()
        assert self._face_of is not None
        return self._face_of[(u, v)]

    def face_count(self) -> int:
        faces = self.faces()
        return len(faces) if faces else 1  # a single vertex still bounds one face

    def _check_euler(self) -> None:
        n = bin(self.mask).count("1")
        m = sum(len(row) for row in self.rotation.values()) // 2
        if n - m + self.face_count() != 2:
            raise ValueError("rotation system is not a sphere embedding")

    def outer_face(self) -> int:
        """Deterministic designated face: longest boundary, lowest darts."""
        faces = self.faces()
        if not faces:
            return 0
        return min(range(len(faces)), key=lambda i: (-len(faces[i]), sorted(faces[i])))

    def vertex_list(self) -> tuple[int, ...]:
        return tuple(bits(self.mask))

    # -- restriction -------------------------------------------------------

    def restrict(self, vertices) -> "PlanarEmbedding":
        """Embedding of the induced sub-host, original labels kept."""
        keep = mask_of(vertices) & self.mask
        rot = {
            v: tuple(u for u in self.rotation[v] if keep >> u & 1)
            for v in bits(keep)
        }
        return PlanarEmbedding(self.graph, _RowView(rot), keep)


class _RowView:
    """Adapter so restrict() can feed a dict where a list is indexed."""

    def __init__(self, rows: dict):
        self.rows = rows

    def __getitem__(self, v: int):
        return self.rows[v]


def embed(g: Graph) -> PlanarEmbedding | None:
    """Rotation system for a planar graph, or None if none exists."""
    import networkx as nx

    ng = nx.Graph()
    ng.add_nodes_from(range(g.n))
    ng.add_edges_from(g.edges())
    ok, emb = nx.check_planarity(ng)
    if not ok:
        return None
    data = emb.get_data()
    rotation = [tuple(data[v]) for v in range(g.n)]
    return PlanarEmbedding(g, rotation)


# -- regions --------------------------------------------------------------------


@dataclass(frozen=True)
class Region:
    boundary_p: Path
    boundary_q: Path
    interior: frozenset[int]
    pivot: int


def _cycle_edges(p: Path, q: Path) -> set[frozenset[int]]:
    if (
        {p.vertices[0], p.vertices[-1]} != {q.vertices[0], q.vertices[-1]}
        or p.vertex_set() & q.vertex_set()
        != {p.vertices[0], p.vertices[-1]}
        or p.length + q.length < 3
    ):
        raise ValueError("paths must bound a cycle: same ends, disjoint interiors")
    edges: set[frozenset[int]] = set()
    for path in (p, q):
        for a, b in zip(path.vertices, path.vertices[1:]):
            edges.add(frozenset((a, b)))
    return edges


def _flood(e: PlanarEmbedding, seeds, blocked: set[frozenset[int]]) -> set[int]:
    """Face ids reachable from the seeds without crossing a blocked edge."""
    faces = e.faces()
    seen = set(seeds)
    todo = list(seeds)
    while todo:
        f = todo.pop()
        for u, v in faces[f]:
            if frozenset((u, v)) in blocked:
                continue
            g = e.face_of(v, u)
            if g not in seen:
                seen.add(g)
                todo.append(g)
    return seen


def _face_vertices(e: PlanarEmbedding, face_ids) -> set[int]:
    faces = e.faces()
    out: set[int] = set()
    for f in face_ids:
        for u, _ in faces[f]:
            out.add(u)
    return out


def region(e: PlanarEmbedding, p: Path, q: Path, pivot: int) -> Region:
    """Vertices strictly inside the disk bounded by p and q on pivot's side."""
    blocked = _cycle_edges(p, q)
    boundary = p.vertex_set() | q.vertex_set()
    if not e.mask >> pivot & 1:
        raise ValueError("pivot is outside the embedded host")
    if pivot in boundary:
        raise ValueError("pivot lies on the boundary cycle")
    if not e.rotation[pivot]:
        raise ValueError("pivot has no incident darts in the host")
    seeds = {e.face_of(pivot, w) for w in e.rotation[pivot]}
    side = _flood(e, seeds, blocked)
    interior = frozenset(_face_vertices(e, side) - boundary)
    return Region(p, q, interior, pivot)


# -- vertex classification -------------------------------------------------------


@dataclass(frozen=True)
class Classification:
    case: str  # "dominating" | "path" | "poles"
    path: Path | None = None
    p1: Path | None = None
    p2: Path | None = None
    u: int | None = None
    x1: int | None = None
    x2: int | None = None
    region_vertices: frozenset[int] | None = None


def classify_vertex(e: PlanarEmbedding, v: int, z: int) -> Classification:
    """One of: v dominates its host; an isometric bypath-free path through
    v exists; or two pole paths bound a quadrant of the common-neighbor fan
    containing z, each bypath-free once the other middle vertex is removed.
    """
    g = e.graph
    mask = e.mask
    if not (mask >> v & 1 and mask >> z & 1):
        raise ValueError("v and z must lie in the embedded host")
    others = [w for w in bits(mask) if w != v]
    if all(g.has_edge(v, w) for w in others):
        return Classification("dominating")
    dist = g.bfs_levels(v, mask)
    if any(dist[w] < 0 for w in others):
        raise ValueError("host must be connected")
    u = min(w for w in bits(mask) if dist[w] == 2)
    fan = [
        x
        for x in e.rotation[v]
        if g.has_edge(x, u) and mask >> x & 1
    ]
    if len(fan) == 1:
        path = Path((v, fan[0], u))
        assert is_bypath_free(g, path, mask), "unique-neighbor path has a bypath"
        return Classification("path", path=path)

    k = len(fan)
    chosen = None
    start = fan.index(min(fan))
    for t in range(k):
        x1 = fan[(start + t) % k]
        x2 = fan[(start + t + 1) % k]
        p1 = Path((v, x1, u))
        p2 = Path((v, x2, u))
        rest = set(fan) - {x1, x2}
        if z in (v, u, x1, x2):
            inner = region(e, p1, p2, min(rest)) if rest else None
            interior = (
                frozenset(_other_side(e, p1, p2, inner))
                if inner is not None
                else _either_side(e, p1, p2)
            )
        else:
            interior = region(e, p1, p2, z).interior
            if z not in interior:
                continue
        if interior & rest:
            continue
        chosen = (x1, x2, p1, p2, interior)
        break
    assert chosen is not None, "no fan quadrant admits z"
    x1, x2, p1, p2, interior = chosen
    rvs = frozenset(interior) | p1.vertex_set() | p2.vertex_set()
    for pa, xb in ((p1, x2), (p2, x1)):
        assert is_bypath_free(
            g, pa, mask_of(rvs - {xb})
        ), "pole path has a bypath inside its region"
    return Classification(
        "poles", p1=p1, p2=p2, u=u, x1=x1, x2=x2, region_vertices=rvs
    )


def _other_side(e: PlanarEmbedding, p1: Path, p2: Path, inner: Region) -> set[int]:
    blocked = _cycle_edges(p1, p2)
    boundary = p1.vertex_set() | p2.vertex_set()
    all_faces = set(range(len(e.faces())))
    pivot_faces = {
        e.face_of(inner.pivot, u) for u in e.rotation[inner.pivot]
    }
    side = _flood(e, pivot_faces, blocked)
    return _face_vertices(e, all_faces - side) - boundary


def _either_side(e: PlanarEmbedding, p1: Path, p2: Path) -> frozenset[int]:
    # k = 2 with z on the boundary: prefer the smaller side, then the one
    # reached first from the lowest dart, for determinism.
    blocked = _cycle_edges(p1, p2)
    boundary = p1.vertex_set() | p2.vertex_set()
    a = p1.vertices[0], p1.vertices[1]
    side = _flood(e, {e.face_of(*a)}, blocked)
    rest = set(range(len(e.faces()))) - side
    va = _face_vertices(e, side) - boundary
    vb = _face_vertices(e, rest) - boundary if rest else set()
    return frozenset(min((va, vb), key=lambda s: (len(s), sorted(s))))


# -- bypath selection -------------------------------------------------------------


@dataclass(frozen=True)
class BypathChoice:
    free: bool
    bypath: Path | None = None
    composite: Path | None = None
    strip: frozenset[int] | None = None


def _composite(q: Path, b: Path) -> Path:
    i = q.index_of(b.vertices[0])
    j = q.index_of(b.vertices[-1])
    return Path(q.vertices[:i] + b.vertices + q.vertices[j + 1 :])


def _strip_interior(
    e: PlanarEmbedding, p: Path, q: Path, b: Path
) -> frozenset[int]:
    """Interior of the pocket between q's spanned part and the detour b,
    identified as the side away from p (p's first edge is never on the
    pocket cycle, so its face seeds the far side)."""
    i = q.index_of(b.vertices[0])
    j = q.index_of(b.vertices[-1])
    blocked = _cycle_edges(q.segment(i, j), b)
    p_side = _flood(e, {e.face_of(p.vertices[0], p.vertices[1])}, blocked)
    rest = set(range(len(e.faces()))) - p_side
    boundary = q.vertex_set() | b.vertex_set()
    return frozenset(_face_vertices(e, rest) - boundary)


def select_bypath(e: PlanarEmbedding, p: Path, q: Path) -> BypathChoice:
    """Certify q bypath-free in its side host, or pick the region-minimal
    detour b of q and hand back the composite path with the pocket between
    them, every guarantee the caller relies on re-verified here."""
    g = e.graph
    mask = e.mask
    _cycle_edges(p, q)  # validates the two-path boundary shape
    if not p.is_isometric_in(g, mask):
        raise ValueError("p is not isometric in the context")
    if not is_bypath_free(g, p, mask):
        raise ValueError("p has a bypath in the context")
    hq = mask & ~mask_of(p.vertices[1:-1])
    if not q.is_isometric_in(g, hq):
        raise ValueError("q is not isometric once p's interior is removed")
    b = find_bypath(g, q, hq)
    if b is None:
        return BypathChoice(free=True)

    for _ in range(g.n * g.n + 2):
        qb = _composite(q, b)
        strip = _strip_interior(e, p, q, b)
        strip_q = mask_of(strip) | q.mask()
        strip_qb = mask_of(strip) | qb.mask()
        viol = find_bypath(g, q, strip_q)
        if viol is not None:
            b = viol
            continue
        viol = find_bypath(g, qb, strip_qb)
        if viol is not None:
            alt = _composite(qb, viol)
            b = _fresh_divergence(q, alt, qb.vertex_set())
            continue
        side = (mask & ~mask_of(strip) & ~q.mask()) | qb.mask()
        no_p_int = side & ~mask_of(p.vertices[1:-1])
        assert qb.is_isometric_in(g, no_p_int), "composite lost isometry"
        assert qb.is_isometric_in(g, strip_qb), "composite not isometric in pocket"
        assert p.is_isometric_in(g, side | p.mask()), "p lost isometry"
        assert is_bypath_free(g, p, side | p.mask()), "p gained a bypath"
        return BypathChoice(False, b, qb, strip)
    raise PlanarityFault("bypath selection failed to reach a fixed point")


def _fresh_divergence(q: Path, alt: Path, stale: frozenset[int]) -> Path:
    """The run where alt leaves q that introduces a vertex outside stale.

    Splitting alt at its q-vertices gives exact-length detours of q; the run
    holding a genuinely new vertex is the one whose pocket strictly shrank,
    so iterating on it terminates.
    """
    qset = q.vertex_set()
    i = 0
    while i < len(alt.vertices):
        if alt.vertices[i] in qset:
            i += 1
            continue
        start, j = i - 1, i
        while alt.vertices[j] not in qset:
            j += 1
        run = Path(alt.vertices[start : j + 1])
        i = j
        if not (run.vertex_set() - qset) - stale:
            continue
        lo = q.index_of(run.vertices[0])
        hi = q.index_of(run.vertices[-1])
        assert hi - lo == run.length, "divergence run is not an exact detour"
        return run
    raise PlanarityFault("no divergence run carries a new vertex")
