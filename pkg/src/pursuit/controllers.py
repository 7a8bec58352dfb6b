"""Cop controllers and the adversaries they play against.

The wide-shadow guard pins a cop inside the robber's wide shadow on a
Helly isometric subgraph; `capture_shadow` attaches it by chasing the
shadow through a dismantling of the subgraph.  The leisurely guard patrols
a bypath-free isometric path and certifies a rest at least once in every
window of length+1 cop turns unless the robber stepped onto the path.

Controllers are single-owner state machines.  Proof-backed invariants are
re-checked every turn; a violation raises ControllerFault, which game
runners surface as an aborted trace rather than a crash.  Domain errors
(bad subgraph, bypath present) are ValueError at attach time.
"""

from __future__ import annotations

import random

from .graphs import Graph, Path, distance_matrix, mask_of, shortest_path
from .helly import dismantling_order, is_helly
from .shadows import PathShadows, is_bypath_free, wide_shadow


class ControllerFault(RuntimeError):
    """An invariant the theory guarantees failed at run time."""


def _isometric_within(g: Graph, hv: tuple[int, ...], within: int) -> bool:
    hmask = mask_of(hv)
    if within & hmask != hmask:
        return False
    for x in hv:
        host = g.bfs_levels(x, within)
        sub = g.bfs_levels(x, hmask)
        if any(host[y] != sub[y] for y in hv):
            return False
    return True


class WideShadowGuard:
    """Cop glued to the robber's wide shadow on a Helly isometric subgraph."""

    kind = "wide-shadow"

    def __init__(
        self,
        g: Graph,
        guarded,
        cop_at: int,
        robber: int,
        within: int | None = None,
        verify: bool = True,
    ):
        self.graph = g
        self.guarded = tuple(sorted(set(guarded)))
        self.within = g.vertex_mask() if within is None else within
        if verify:
            if not _isometric_within(g, self.guarded, self.within):
                raise ValueError("guarded subgraph must be isometric in its host")
            sub, _ = g.induced(self.guarded)
            if not is_helly(sub):
                raise ValueError("guarded subgraph must be Helly")
        self.cop_at = cop_at
        self.shadow = wide_shadow(g, self.guarded, robber, self.within)
        if cop_at not in self.shadow:
            raise ValueError("cop must start inside the robber's shadow")

    def step(self, robber: int) -> int:
        """Stay or make the single step that re-enters the shadow."""
        nxt = wide_shadow(self.graph, self.guarded, robber, self.within)
        if self.cop_at not in nxt:
            reachable = sorted(
                y for y in nxt if self.graph.has_edge(self.cop_at, y)
            )
            if not reachable:
                raise ControllerFault(
                    f"shadow drifted out of reach of cop at {self.cop_at}"
                )
            self.cop_at = reachable[0]
        self.shadow = nxt
        return self.cop_at


def wide_shadow_step(state: WideShadowGuard, robber: int) -> int:
    return state.step(robber)


def capture_shadow(
    g: Graph,
    h,
    cop_at: int,
    robber_stream,
    within: int | None = None,
    verify: bool = True,
) -> tuple[int, int]:
    """Walk a cop into the robber's wide shadow on h.

    The stream yields the robber's position before the first cop move and
    then once per robber turn; if it runs dry the robber is treated as
    stationary.  Returns (cop turn count, final cop vertex); turn 0 means
    the cop already stood inside the shadow.

    Phase one walks a fixed shortest route to the dismantling's last
    surviving vertex; phase two descends the composed retraction images of
    a tracking point that follows the shadow.  Either phase exits as soon
    as the cop's vertex lies in the current shadow.  The turn cap is the
    route length plus |V(h)| squared; exceeding it is a ControllerFault,
    since the theory bounds the chase well under that.
    """
    hv = tuple(sorted(set(h)))
    w = g.vertex_mask() if within is None else within
    if verify:
        if not _isometric_within(g, hv, w):
            raise ValueError("guarded subgraph must be isometric in its host")
        sub, keep = g.induced(hv)
        if not is_helly(sub):
            raise ValueError("guarded subgraph must be Helly")
    else:
        sub, keep = g.induced(hv)
    order = dismantling_order(sub)
    if order is None:
        raise ValueError("guarded subgraph must be dismantlable")
    local = {v: i for i, v in enumerate(keep)}

    # stages[j] maps every start vertex to its image after j retractions.
    stages = [list(range(sub.n))]
    for corner, witness in order:
        prev = stages[-1]
        stages.append([witness if x == corner else x for x in prev])
    removed = {corner for corner, _ in order}
    (last,) = [i for i in range(sub.n) if i not in removed]

    stream = iter(robber_stream)
    try:
        r = next(stream)
    except StopIteration:
        raise ValueError("robber stream yielded no placement") from None

    pos = cop_at
    if pos in wide_shadow(g, hv, r, w):
        return 0, pos

    route = shortest_path(g, pos, keep[last]).vertices
    leg = 0
    cap = len(route) - 1 + len(hv) ** 2
    stage = len(stages) - 1
    anchor: int | None = None  # tracking point, a shadow member in g labels
    turns = 0
    while True:
        turns += 1
        if turns > cap:
            raise ControllerFault("shadow chase exceeded its turn bound")
        if leg < len(route) - 1:
            leg += 1
            pos = route[leg]
            if leg == len(route) - 1:
                anchor = min(wide_shadow(g, hv, r, w))
        else:
            if anchor is None:
                anchor = min(wide_shadow(g, hv, r, w))
            img = None
            for j in range(stage + 1):
                cand = keep[stages[j][local[anchor]]]
                if cand == pos or g.has_edge(cand, pos):
                    img = j
                    break
            if img is None:
                raise ControllerFault("retraction image out of reach")
            stage = img
            pos = keep[stages[img][local[anchor]]]
        if pos in wide_shadow(g, hv, r, w):
            return turns, pos
        try:
            r = next(stream)
        except StopIteration:
            continue
        if anchor is not None:
            nxt = wide_shadow(g, hv, r, w)
            step = sorted(
                y for y in nxt if y == anchor or g.has_edge(y, anchor)
            )
            if not step:
                raise ControllerFault("shadow drifted more than one step")
            anchor = step[0]


class LeisurelyGuard:
    """Cop patrolling a bypath-free isometric path, resting when possible."""

    kind = "leisurely"

    def __init__(
        self,
        g: Graph,
        path: Path,
        cop_at: int,
        within: int | None = None,
    ):
        if path.length < 1:
            raise ValueError("leisurely guarding needs a path of length >= 1")
        self.graph = g
        self.path = path
        self.within = g.vertex_mask() if within is None else within
        self.shadows = PathShadows(g, path, self.within)  # verifies isometry
        if not is_bypath_free(g, path, self.within):
            raise ValueError("path has a bypath; leisurely guarding unsound")
        self.at = path.index_of(cop_at)
        self.cop_at = cop_at
        self.unrested = 0

    def step(self, robber: int) -> tuple[int, bool]:
        """Return (cop vertex, rested) for one turn against this robber."""
        lo, hi = self.shadows.interval(robber)
        entered = robber in self.path.vertex_set()
        if lo <= self.at <= hi:
            self.unrested = 0
            return self.cop_at, True
        if self.at < lo - 1 or self.at > hi + 1:
            raise ControllerFault("shadow slipped more than one step away")
        self.at += 1 if self.at < lo else -1
        self.cop_at = self.path.vertices[self.at]
        if entered:
            if self.cop_at != robber:
                raise ControllerFault("robber on the path escaped capture")
            self.unrested = 0
        else:
            self.unrested += 1
            if self.unrested > self.path.length:
                raise ControllerFault("rest window exceeded without entry")
        return self.cop_at, False


def leisurely_step(state: LeisurelyGuard, robber: int) -> tuple[int, bool]:
    return state.step(robber)


class ScriptedWalk:
    """Cop replaying a fixed stay-or-step route, one vertex per turn."""

    kind = "scripted"

    def __init__(self, g: Graph, route):
        route = tuple(route)
        if not route:
            raise ValueError("empty route")
        for a, b in zip(route, route[1:]):
            if a != b and not g.has_edge(a, b):
                raise ValueError(f"route jumps from {a} to {b}")
        self.route = route
        self.leg = 0

    @property
    def cop_at(self) -> int:
        return self.route[self.leg]

    @property
    def done(self) -> bool:
        return self.leg == len(self.route) - 1

    def step(self) -> int:
        if not self.done:
            self.leg += 1
        return self.route[self.leg]


# -- adversaries ---------------------------------------------------------------


class RandomAdversary:
    """Uniform over stay plus neighbors, seeded for replayable games."""

    name = "random"

    def __init__(self, g: Graph, seed: int = 0):
        self.graph = g
        self.rng = random.Random(seed)

    def place(self, cops) -> int:
        free = [v for v in range(self.graph.n) if v not in cops]
        return self.rng.choice(free or list(range(self.graph.n)))

    def move(self, cops, robber: int) -> int:
        return self.rng.choice(sorted((robber,) + self.graph.neighbors(robber)))


class GreedyAdversary:
    """Maximize the minimum distance to any cop; ties to the lowest vertex."""

    name = "greedy"

    def __init__(self, g: Graph, seed: int = 0):
        self.graph = g
        self.dm = distance_matrix(g)

    def _score(self, v: int, cops) -> int:
        worst = None
        for c in cops:
            d = self.dm.rows[c][v]
            if d < 0:
                continue  # unreachable cop poses no threat
            if worst is None or d < worst:
                worst = d
        return self.graph.n * self.graph.n if worst is None else worst

    def place(self, cops) -> int:
        return max(range(self.graph.n), key=lambda v: (self._score(v, cops), -v))

    def move(self, cops, robber: int) -> int:
        opts = sorted((robber,) + self.graph.neighbors(robber))
        return max(opts, key=lambda v: (self._score(v, cops), -v))


class OptimalAdversary:
    """Exact play from a solved strategy table (small instances only)."""

    name = "optimal"

    def __init__(self, g: Graph, table):
        self.graph = g
        self.table = table

    def place(self, cops) -> int:
        cops = tuple(sorted(cops))
        best, best_rank = 0, -1
        for r in range(self.graph.n):
            rk = self.table.rank.get((cops, r, 0))
            if rk is None:
                return r
            if rk > best_rank:
                best, best_rank = r, rk
        return best

    def move(self, cops, robber: int) -> int:
        return self.table.robber_reply(cops, robber)
