"""Three-cop capture on planar graphs with at most two cops moving per turn.

The engine keeps the robber inside a shrinking territory: the component of
the unguarded part of the graph he occupies.  At most two cops guard at any
time, each responsible for one path.  A guard is parked (its closed
neighborhood covers the whole path), pinned to the robber's wide shadow on
the path, or patrolling leisurely on a bypath-free path.  The remaining cop
is free and runs one mission at a time: walk somewhere and park, or capture
the wide shadow of a freshly chosen path.  An arbiter grants the mission
cop a move only on turns when at most one guard moved, which keeps every
cops' turn at or below two movers.

Replanning fires whenever no mission is active.  It recomputes the
territory, discards guards the territory no longer touches, upgrades
shadow-pinned guards to leisurely patrols once their paths are bypath-free
in the shrunken host, and otherwise reads the next mission off the guard
contact pattern: a path touched on one vertex becomes a parked block or a
classified fan park, a path touched on two adjacent vertices is bridged
through the territory, a wider contact span is rerouted through the
territory and the old guard released, and two single-contact guards are
bridged contact to contact.  Milestones annotate the trace with the case
label, the guard set, and the territory size; sizes never increase and
strictly decrease whenever the label changes.

validate_trace re-checks a finished trace against the graph alone, using
only the core graph primitives: move legality, the two-mover cap, park
stationarity and coverage, shadow membership of guarding cops, leisurely
rest frequency, milestone territory arithmetic, and verdict consistency.
"""

from __future__ import annotations

import json
from dataclasses import dataclass

from pursuit.controllers import (
    RandomAdversary,
    ScriptedWalk,
    WideShadowGuard,
)
from pursuit.graphs import (
    Graph,
    Path,
    bits,
    mask_of,
    shortest_path,
    to_graph6,
)
from pursuit.planar import PlanarityFault, classify_vertex, embed
from pursuit.shadows import PathShadows, find_bypath, is_bypath_free
from pursuit.controllers import LeisurelyGuard

__all__ = ["Trace", "run_two_move_strategy", "validate_trace"]


# -- trace records -------------------------------------------------------------


@dataclass(frozen=True)
class Trace:
    """Finished game: graph6 field, per-turn records, and a verdict.

    Turn records are plain dicts {t, mover, cops, robber, moved, note} so a
    trace survives a JSON round trip unchanged.
    """

    graph: str
    turns: tuple
    verdict: dict

    @property
    def captured(self) -> bool:
        return self.verdict.get("outcome") == "captured"

    def to_json(self) -> str:
        payload = {
            "graph": self.graph,
            "turns": list(self.turns),
            "verdict": self.verdict,
        }
        return json.dumps(payload, sort_keys=True) + "\n"

    @classmethod
    def from_json(cls, text: str) -> "Trace":
        payload = json.loads(text)
        return cls(
            graph=payload["graph"],
            turns=tuple(payload["turns"]),
            verdict=payload["verdict"],
        )


# -- the free cop's missions -----------------------------------------------------


class _ShadowChase:
    """Intermittent pursuit of the robber's wide shadow on an isometric path.

    The shadow is a position interval that drifts by at most one per robber
    move and cannot leave the path, so a cop that walks to the path and then
    steps toward the current interval ends up inside it no matter how its
    granted turns interleave with robber moves: the interval must cross the
    cop's position to get past it, and the crossing is observed.
    """

    def __init__(self, g: Graph, path: Path, cop_at: int, robber: int, within: int):
        self.graph = g
        self.path = path
        self.shadows = PathShadows(g, path, within)  # verifies isometry
        dist = g.bfs_levels(cop_at)
        entry = min(
            range(len(path.vertices)),
            key=lambda i: (dist[path.vertices[i]], i),
        )
        if dist[path.vertices[entry]] < 0:
            raise PlanarityFault("chase target unreachable by the free cop")
        route = shortest_path(g, cop_at, path.vertices[entry])
        self.route = route.vertices
        self.leg = 0
        self.at = entry  # path position once the route is walked
        self.steps = 0
        self.cap = len(self.route) + (path.length + 2) * (g.n + 2)

    @property
    def pos(self) -> int:
        if self.leg < len(self.route) - 1:
            return self.route[self.leg]
        return self.path.vertices[self.at]

    def done(self, robber: int) -> bool:
        pos = self.pos
        if pos not in self.path.vertex_set():
            return False
        lo, hi = self.shadows.interval(robber)
        return lo <= self.path.index_of(pos) <= hi

    def step(self, robber: int) -> int:
        self.steps += 1
        if self.steps > self.cap:
            raise PlanarityFault("shadow chase exceeded its turn bound")
        if self.leg < len(self.route) - 1:
            self.leg += 1
            return self.pos
        lo, hi = self.shadows.interval(robber)
        if self.at < lo:
            self.at += 1
        elif self.at > hi:
            self.at -= 1
        return self.pos


class _Guard:
    """One cop bound to one path, with the controller that keeps it honest."""

    __slots__ = ("cop", "kind", "path", "host", "ctl")

    def __init__(self, cop: int, kind: str, path: Path, host=None, ctl=None):
        self.cop = cop
        self.kind = kind  # "park" | "shadow" | "leisurely"
        self.path = path
        self.host = host
        self.ctl = ctl

    def step(self, robber: int) -> int:
        if self.kind == "leisurely":
            pos, _rested = self.ctl.step(robber)
            return pos
        return self.ctl.step(robber)


class _Mission:
    """Free-cop assignment: a walk ending in a park, or a shadow chase.

    release lists guards to drop once the mission lands; any further guard
    whose doors end up covered is released by the coverage sweep then.
    """

    def __init__(
        self,
        cop: int,
        walk: ScriptedWalk | None = None,
        chase: _ShadowChase | None = None,
        park_path: Path | None = None,
        guard_path: Path | None = None,
        host: int | None = None,
        release=(),
    ):
        self.cop = cop
        self.walk = walk
        self.chase = chase
        self.park_path = park_path
        self.guard_path = guard_path
        self.host = host
        self.release = tuple(release)

    def done(self, robber: int) -> bool:
        if self.walk is not None:
            return self.walk.done
        return self.chase.done(robber)

    def step(self, robber: int) -> int:
        if self.walk is not None:
            return self.walk.step()
        return self.chase.step(robber)


# -- the engine ------------------------------------------------------------------


class _Engine:
    def __init__(self, g: Graph, e, adversary, turn_cap: int):
        self.g = g
        self.e = e
        self.adversary = adversary
        self.turn_cap = turn_cap
        self.cops: list[int] = []
        self.robber: int | None = None
        self.guards: list[_Guard] = []
        self.last_territory: int | None = None
        self.last_case: str | None = None
        self.turns: list[dict] = []

    # -- bookkeeping --------------------------------------------------------

    def _record(self, t: int, mover: str, moved, note) -> None:
        self.turns.append(
            {
                "t": t,
                "mover": mover,
                "cops": list(self.cops),
                "robber": self.robber,
                "moved": list(moved),
                "note": note,
            }
        )

    def _trace(self, verdict: dict) -> Trace:
        return Trace(to_graph6(self.g), tuple(self.turns), verdict)

    def _start_vertex(self) -> int:
        faces = self.e.faces()
        if not faces:
            return min(self.e.vertex_list())
        boundary = faces[self.e.outer_face()]
        return min(u for u, _ in boundary)

    def _territory(self) -> int:
        blocked = 0
        for gd in self.guards:
            blocked |= gd.path.mask()
        if blocked >> self.robber & 1:
            raise PlanarityFault("robber on a guarded path survived the pounce")
        return self.g.component_of(self.robber, self.g.vertex_mask() & ~blocked)

    def _contacts(self, gd: _Guard, ymask: int) -> list[int]:
        return [
            i
            for i, v in enumerate(gd.path.vertices)
            if self.g.adj_mask(v) & ymask
        ]

    def _release_covered(self, ymask: int, keep: "_Guard | None" = None) -> bool:
        """Release guards whose doors the remaining paths still cover.

        A guard's doors are its vertices with territory neighbors; when every
        door lies on another active path, removing the guard leaves all exits
        blocked, so the territory is unchanged.  Each drop is re-evaluated
        against the surviving set, keeping chains of releases sound.
        """
        changed = False
        while len(self.guards) > 1:
            for gd in self.guards:
                if gd is keep:
                    continue
                others = 0
                for og in self.guards:
                    if og is not gd:
                        others |= og.path.mask()
                verts = gd.path.vertices
                if all(others >> verts[k] & 1 for k in self._contacts(gd, ymask)):
                    self.guards.remove(gd)
                    changed = True
                    break
            else:
                return changed
        return changed

    def _prune(self, ymask: int) -> bool:
        alive = [gd for gd in self.guards if self._contacts(gd, ymask)]
        changed = len(alive) != len(self.guards)
        self.guards = alive
        return changed

    def _convert(self, ymask: int) -> bool:
        """Upgrade pinned guards to leisurely patrols where that is sound."""
        changed = False
        for gd in self.guards:
            if gd.kind != "shadow":
                continue
            host = ymask | gd.path.mask()
            if not is_bypath_free(self.g, gd.path, host):
                continue
            gd.ctl = LeisurelyGuard(self.g, gd.path, self.cops[gd.cop], host)
            gd.kind = "leisurely"
            gd.host = host
            changed = True
        return changed

    def _free_cop(self) -> int:
        used = {gd.cop for gd in self.guards}
        for c in range(3):
            if c not in used:
                return c
        raise PlanarityFault("all three cops are guarding")

    def _note(self, ymask: int) -> dict:
        if len(self.guards) > 2:
            raise PlanarityFault("more than two guards at a milestone")
        size = bin(ymask).count("1")
        if self.last_territory is not None and size > self.last_territory:
            raise PlanarityFault("robber territory grew")
        if self.last_territory is None or size < self.last_territory:
            # fresh label only on strict progress; stalls keep the old label
            if all(gd.kind == "park" for gd in self.guards):
                self.last_case = "c"
            elif len(self.guards) == 1:
                self.last_case = "a"
            else:
                self.last_case = "b"
        self.last_territory = size
        return {
            "case": self.last_case,
            "guards": [
                {
                    "cop": gd.cop,
                    "kind": gd.kind,
                    "path": list(gd.path.vertices),
                    "host": None if gd.host is None else sorted(bits(gd.host)),
                }
                for gd in self.guards
            ],
            "territory": size,
        }

    # -- mission builders ---------------------------------------------------

    def _park(self, target: int, covered: Path, release) -> _Mission:
        cop = self._free_cop()
        route = shortest_path(self.g, self.cops[cop], target)
        if route is None:
            raise PlanarityFault("park target unreachable by the free cop")
        return _Mission(
            cop,
            walk=ScriptedWalk(self.g, route.vertices),
            park_path=covered,
            release=release,
        )

    def _attach(self, path: Path, host: int, release) -> _Mission:
        cop = self._free_cop()
        chase = _ShadowChase(self.g, path, self.cops[cop], self.robber, host)
        return _Mission(
            cop,
            chase=chase,
            guard_path=path,
            host=host,
            release=release,
        )

    def _swap_span(self, gd: _Guard, ymask: int, i: int, j: int, detour: Path) -> _Mission:
        """Replace gd's span [i..j] by a reroute sharing its end vertices.

        The tails outside the span have no territory neighbors, so the glued
        walk is isometric in territory plus walk and chaseable there.
        """
        verts = gd.path.vertices
        walk = Path(verts[: i + 1] + detour.vertices[1:-1] + verts[j:])
        if not walk.is_path_in(self.g):
            raise PlanarityFault("glued guard walk is not a path")
        return self._attach(walk, ymask | walk.mask(), ())

    def _movepath(self, gd: _Guard, ymask: int) -> _Mission:
        host = ymask | gd.path.mask()
        detour = find_bypath(self.g, gd.path, host)
        if detour is None:
            raise PlanarityFault("pinned guard has no bypath to reroute")
        i = gd.path.index_of(detour.vertices[0])
        j = gd.path.index_of(detour.vertices[-1])
        if i > j:
            i, j = j, i
        return self._swap_span(gd, ymask, i, j, detour)

    def _span_flow(self, gd: _Guard, ymask: int, i: int, j: int) -> _Mission:
        """Cut the territory away from gd's contact span [i..j].

        Without an edge joining the span ends, the span can be traded for a
        bridge through the territory and the glued walk chased; the bridge is
        shortest over all pairs of end-neighborhoods, so the walk has no
        shortcuts.  With such an edge no glued walk is isometric, so the
        bridge is guarded on its own while gd stays in place.
        """
        verts = gd.path.vertices
        vi, vj = verts[i], verts[j]
        inner = self._inner_bridge(ymask, vi, vj)
        if not self.g.has_edge(vi, vj):
            walk = Path(verts[: i + 1] + inner.vertices + verts[j:])
            if not walk.is_path_in(self.g):
                raise PlanarityFault("glued guard walk is not a path")
            if len(walk.vertices) == 3:
                return self._park(walk.vertices[1], walk, ())
            return self._attach(walk, ymask | walk.mask(), ())
        if j == i + 1:
            # consecutive doors; only the bridge itself needs covering
            if inner.length == 0:
                y = inner.vertices[0]
                return self._park(y, Path((vi, y, vj)), (gd,))
            return self._attach(inner, ymask, ())
        # the chord keeps the span; wall the territory off behind it
        if inner.length == 0:
            return self._park(inner.vertices[0], Path(inner.vertices[:1]), ())
        return self._attach(inner, ymask, ())

    def _inner_bridge(self, ymask: int, vi: int, vj: int) -> Path:
        """Shortest territory route between neighborhoods of two contacts."""
        best = None
        for a in bits(self.g.adj_mask(vi) & ymask):
            for b in bits(self.g.adj_mask(vj) & ymask):
                p = shortest_path(self.g, a, b, ymask)
                if p is None:
                    continue
                key = (p.length, p.vertices)
                if best is None or key < best[0]:
                    best = (key, p)
        if best is None:
            raise PlanarityFault("no territory bridge between adjacent contacts")
        return best[1]

    def _classified(self, gd: _Guard, w: int, ymask: int) -> _Mission:
        emb = self.e.restrict(tuple(bits(ymask)) + (w,))
        cls = classify_vertex(emb, w, self.robber)
        if cls.case == "dominating":
            # every territory vertex is one step from w; park there and pounce
            return self._park(w, Path((w,)), ())
        p = cls.path if cls.case == "path" else cls.p1
        return self._park(p.vertices[1], p, (gd,))

    # -- replanning ---------------------------------------------------------

    def _plan_single(self, gd: _Guard, ymask: int) -> _Mission:
        cont = self._contacts(gd, ymask)
        verts = gd.path.vertices
        if len(cont) == 1:
            w = verts[cont[0]]
            if gd.kind != "park":
                # the whole guarded path funnels into one vertex: block it
                return self._park(w, Path((w,)), (gd,))
            return self._classified(gd, w, ymask)
        return self._span_flow(gd, ymask, cont[0], cont[-1])

    def _plan_pair(self, ymask: int) -> _Mission:
        first, second = self.guards
        attach = 0
        for gd in self.guards:
            for v in gd.path.vertices:
                attach |= self.g.adj_mask(v)
        points = list(bits(attach & ymask))
        if len(points) == 1:
            # the territory hangs on a cut vertex
            return self._park(points[0], Path((points[0],)), (first, second))
        if len(points) == 2:
            s = shortest_path(self.g, points[0], points[1], ymask)
            if s is None:
                raise PlanarityFault("territory attachments are separated")
            if s.length <= 2:
                return self._park(s.vertices[len(s.vertices) // 2], s, (first, second))
            return self._attach(s, ymask, (first, second))
        for gd, other in ((first, second), (second, first)):
            # a guard with one door of its own folds into a walk joining
            # that door to a far partner door; its other doors stay covered
            omask = other.path.mask()
            own = [
                gd.path.vertices[k]
                for k in self._contacts(gd, ymask)
                if not omask >> gd.path.vertices[k] & 1
            ]
            if len(own) != 1:
                continue
            for k in self._contacts(other, ymask):
                b = other.path.vertices[k]
                if b != own[0] and not self.g.has_edge(b, own[0]):
                    return self._cross(ymask, b, own[0])
        deck = set()
        for gd in self.guards:
            deck.update(gd.path.vertices[k] for k in self._contacts(gd, ymask))
        doors = sorted(deck)
        if len(doors) == 2:
            a, b = doors
            if self.g.has_edge(a, b):
                return self._park(a, Path((a, b)), (first, second))
            return self._cross(ymask, a, b)
        if len(doors) == 3:
            # huddled doors fold under one park, freeing the second cop
            for c in doors:
                rest = [v for v in doors if v != c]
                if all(self.g.has_edge(c, v) for v in rest):
                    return self._park(c, Path((rest[0], c, rest[1])), (first, second))
        mission = self._lobe_cross(ymask, first, second)
        if mission is not None:
            return mission
        for gd in (first, second):
            cont = self._contacts(gd, ymask)
            verts = gd.path.vertices
            if not self.g.has_edge(verts[cont[0]], verts[cont[-1]]):
                return self._span_flow(gd, ymask, cont[0], cont[-1])
        raise PlanarityFault("no isometric cut between two spread guards")

    def _lobe_cross(self, ymask: int, first: _Guard, second: _Guard) -> _Mission | None:
        """Cross-walk between one door of each guard, vetted to split well.

        The bridge carves the territory into lobes; a candidate door pair is
        usable only when no lobe touches uncovered doors of both guards, so
        wherever the robber ends up one guard loses all its exits and is
        released.  The vetting runs on the components of the cut territory
        before any cop commits to the walk.
        """
        fmask = first.path.mask()
        smask = second.path.mask()
        owns = []
        for gd, others in ((first, smask), (second, fmask)):
            owns.append([
                gd.path.vertices[k]
                for k in self._contacts(gd, ymask)
                if not others >> gd.path.vertices[k] & 1
            ])
        for a in owns[0]:
            for b in owns[1]:
                if self.g.has_edge(a, b):
                    continue
                inner = self._inner_bridge(ymask, a, b)
                live = (
                    [d for d in owns[0] if d != a],
                    [d for d in owns[1] if d != b],
                )
                left = ymask & ~inner.mask()
                good = True
                while left:
                    v = (left & -left).bit_length() - 1
                    comp = self.g.component_of(v, left)
                    left &= ~comp
                    if all(
                        any(self.g.adj_mask(d) & comp for d in side)
                        for side in live
                    ):
                        good = False
                        break
                if not good:
                    continue
                if inner.length == 0:
                    y = inner.vertices[0]
                    return self._park(y, Path((a, y, b)), ())
                walk = Path((a,) + inner.vertices + (b,))
                if not walk.is_path_in(self.g):
                    continue
                return self._attach(walk, ymask | walk.mask(), ())
        return None

    def _cross(self, ymask: int, a: int, b: int) -> _Mission:
        """Guard a door-to-door route bridged through the territory."""
        inner = self._inner_bridge(ymask, a, b)
        if inner.length == 0:
            return self._park(inner.vertices[0], Path((a, inner.vertices[0], b)), ())
        walk = Path((a,) + inner.vertices + (b,))
        if not walk.is_path_in(self.g):
            raise PlanarityFault("door-to-door walk is not a path")
        return self._attach(walk, ymask | walk.mask(), ())

    def _replan(self) -> tuple[_Mission, dict | None]:
        ymask = self._territory()
        changed = self._prune(ymask)
        if not self.guards:
            raise PlanarityFault("guard set emptied while the robber is free")
        changed |= self._release_covered(ymask)
        changed |= self._convert(ymask)
        note = None
        if changed or self.last_territory is None:
            note = self._note(ymask)
        pinned = [gd for gd in self.guards if gd.kind == "shadow"]
        if pinned:
            mission = self._movepath(pinned[0], ymask)
        elif len(self.guards) == 1:
            mission = self._plan_single(self.guards[0], ymask)
        else:
            mission = self._plan_pair(ymask)
        return mission, note

    # -- mission completion -------------------------------------------------

    def _finish(self, m: _Mission) -> dict:
        pos = self.cops[m.cop]
        drop = list(m.release)
        if m.walk is not None:
            for v in m.park_path.vertices:
                if v != pos and not self.g.has_edge(pos, v):
                    raise PlanarityFault("parked cop does not cover its path")
            new = _Guard(m.cop, "park", m.park_path)
        else:
            ctl = WideShadowGuard(
                self.g, m.guard_path.vertices, pos, self.robber, m.host, verify=False
            )
            new = _Guard(m.cop, "shadow", m.guard_path, m.host, ctl)
        self.guards.append(new)
        dead = {id(gd) for gd in drop}
        self.guards = [gd for gd in self.guards if id(gd) not in dead]
        ymask = self._territory()
        self._prune(ymask)
        if not self.guards:
            raise PlanarityFault("guard set emptied while the robber is free")
        self._release_covered(ymask, keep=new)
        self._convert(ymask)
        return self._note(ymask)

    # -- the game loop ------------------------------------------------------

    def run(self) -> Trace:
        g = self.g
        v0 = self._start_vertex()
        self.cops = [v0, v0, v0]
        self.guards = [_Guard(0, "park", Path((v0,)))]
        self._record(0, "place-cops", (True, True, True), {"start": v0})
        r = self.adversary.place(tuple(self.cops))
        if not 0 <= r < g.n:
            raise ValueError("adversary placed the robber outside the graph")
        self.robber = r
        self._record(1, "place-robber", (False, False, False), None)
        if r in self.cops:
            return self._trace({"outcome": "captured", "turn": 1})
        mission: _Mission | None = None
        t = 2
        for _ in range(self.turn_cap):
            prev = tuple(self.cops)
            note = None
            near = [c for c in range(3) if g.has_edge(self.cops[c], self.robber)]
            if near:
                # adjacency ends the game; the pouncing cop may abandon a post
                self.cops[near[0]] = self.robber
                moved = tuple(self.cops[c] != prev[c] for c in range(3))
                self._record(t, "cops", moved, None)
                return self._trace({"outcome": "captured", "turn": t})
            if mission is None:
                mission, note = self._replan()
            movers = 0
            for gd in self.guards:
                if gd.ctl is None:
                    continue  # parks hold still
                pos = gd.step(self.robber)
                if pos != self.cops[gd.cop]:
                    self.cops[gd.cop] = pos
                    movers += 1
            if movers <= 1 and not mission.done(self.robber):
                self.cops[mission.cop] = mission.step(self.robber)
            grab = self.robber in self.cops
            if not grab and mission.done(self.robber):
                # deferred while a pounce is pending: the robber may stand on
                # a vertex the new park is about to cover
                if not any(g.has_edge(self.cops[c], self.robber) for c in range(3)):
                    note = self._finish(mission)
                    mission = None
            moved = tuple(self.cops[c] != prev[c] for c in range(3))
            if sum(moved) > 2:
                raise PlanarityFault("three cops moved on one turn")
            self._record(t, "cops", moved, note)
            if grab:
                return self._trace({"outcome": "captured", "turn": t})
            t += 1
            nxt = self.adversary.move(tuple(self.cops), self.robber)
            if nxt != self.robber and not g.has_edge(self.robber, nxt):
                raise ValueError("adversary made an illegal robber move")
            self.robber = nxt
            self._record(t, "robber", (False, False, False), None)
            if self.robber in self.cops:
                # walking onto a cop is surrender
                return self._trace({"outcome": "captured", "turn": t})
            t += 1
        return self._trace(
            {
                "outcome": "aborted",
                "reason": f"no capture within {self.turn_cap} cops' turns",
            }
        )


def run_two_move_strategy(g: Graph, e=None, adversary=None, turn_cap=None) -> Trace:
    """Play three cops, at most two moving per turn, to capture on g.

    The embedding is computed when not supplied; non-planar or disconnected
    input is a ValueError.  turn_cap defaults to 10 n^2 cops' turns and an
    exceeded cap yields an aborted verdict rather than an exception.
    """
    if g.n < 1:
        raise ValueError("empty graph")
    if not g.is_connected():
        raise ValueError("graph must be connected")
    if e is None:
        e = embed(g)
        if e is None:
            raise ValueError("graph is not planar")
    elif e.mask != g.vertex_mask() or e.graph.n != g.n:
        raise ValueError("embedding does not cover this graph")
    if adversary is None:
        adversary = RandomAdversary(g)
    cap = 10 * g.n * g.n if turn_cap is None else int(turn_cap)
    if cap < 1:
        raise ValueError("turn cap must be positive")
    return _Engine(g, e, adversary, cap).run()


# -- the validator ---------------------------------------------------------------


def _shape_errors(g: Graph, turns: list) -> list[str]:
    out = []
    for idx, rec in enumerate(turns):
        if not isinstance(rec, dict):
            return out + [f"schema: record {idx} is not an object"]
        wanted = (
            "place-cops"
            if idx == 0
            else "place-robber"
            if idx == 1
            else "cops"
            if idx % 2 == 0
            else "robber"
        )
        if rec.get("t") != idx:
            out.append(f"turn: record {idx} carries t={rec.get('t')!r}")
        if rec.get("mover") != wanted:
            out.append(
                f"turn: record {idx} mover is {rec.get('mover')!r}, expected {wanted!r}"
            )
        cops = rec.get("cops")
        if not (
            isinstance(cops, list)
            and len(cops) == 3
            and all(isinstance(c, int) and 0 <= c < g.n for c in cops)
        ):
            return out + [f"schema: record {idx} cop positions are malformed"]
        moved = rec.get("moved")
        if not (
            isinstance(moved, list)
            and len(moved) == 3
            and all(isinstance(b, bool) for b in moved)
        ):
            return out + [f"schema: record {idx} moved flags are malformed"]
        robber = rec.get("robber")
        if robber is None:
            if idx > 0:
                return out + [f"schema: record {idx} has no robber position"]
        elif not (isinstance(robber, int) and 0 <= robber < g.n):
            return out + [f"schema: record {idx} robber position is malformed"]
    return out


def _milestone_errors(g: Graph, note: dict, cops: list, robber: int, idx: int):
    """Check one milestone; return (problems, territory, guard list or None)."""
    out: list[str] = []
    if note.get("case") not in ("a", "b", "c"):
        out.append(f"milestone: unknown case {note.get('case')!r} at turn {idx}")
    guards = note.get("guards")
    if not isinstance(guards, list) or not guards or len(guards) > 2:
        return (
            out + [f"milestone: guard list malformed at turn {idx}"],
            None,
            None,
        )
    seen_cops = set()
    blocked = 0
    for gd in guards:
        if not isinstance(gd, dict):
            return out + [f"milestone: guard entry malformed at turn {idx}"], None, None
        c = gd.get("cop")
        kind = gd.get("kind")
        p = gd.get("path")
        host = gd.get("host")
        if not (isinstance(c, int) and 0 <= c < 3 and c not in seen_cops):
            out.append(f"milestone: bad guard cop index at turn {idx}")
            return out, None, None
        seen_cops.add(c)
        if kind not in ("park", "shadow", "leisurely"):
            out.append(f"milestone: unknown guard kind {kind!r} at turn {idx}")
            return out, None, None
        if not (
            isinstance(p, list)
            and p
            and all(isinstance(v, int) and 0 <= v < g.n for v in p)
            and len(set(p)) == len(p)
            and all(g.has_edge(a, b) for a, b in zip(p, p[1:]))
        ):
            out.append(f"milestone: guard path of cop {c} is not a path at turn {idx}")
            return out, None, None
        blocked |= mask_of(p)
        if kind == "park":
            if host is not None:
                out.append(f"milestone: parked guard carries a host at turn {idx}")
            if any(v != cops[c] and not g.has_edge(cops[c], v) for v in p):
                out.append(
                    f"park: cop {c} does not cover its path at turn {idx}"
                )
        else:
            if not (
                isinstance(host, list)
                and all(isinstance(v, int) and 0 <= v < g.n for v in host)
                and mask_of(host) & mask_of(p) == mask_of(p)
            ):
                out.append(f"milestone: guard host malformed at turn {idx}")
                return out, None, None
            if cops[c] not in p:
                out.append(f"shadow: cop {c} is off its path at turn {idx}")
    if blocked >> robber & 1:
        out.append(f"milestone: robber stands on a guarded path at turn {idx}")
        return out, None, guards
    terr = bin(g.component_of(robber, g.vertex_mask() & ~blocked)).count("1")
    if terr != note.get("territory"):
        out.append(
            f"milestone: territory recorded as {note.get('territory')!r}, "
            f"recomputed {terr} at turn {idx}"
        )
    return out, terr, guards


def validate_trace(g: Graph, trace: Trace) -> list[str]:
    """Re-check a trace against g; the empty list means no violations.

    Only the core graph primitives are used, so the check is independent of
    the engine and its controllers.
    """
    out: list[str] = []
    turns = list(trace.turns)
    if not turns:
        return ["schema: trace has no turns"]
    if to_graph6(g) != trace.graph:
        out.append("schema: trace was recorded on a different graph")
    out.extend(_shape_errors(g, turns))
    if any(v.startswith("schema:") for v in out):
        return out
    final = len(turns) - 1
    captured = trace.verdict.get("outcome") == "captured"
    guards: list[dict] = []
    park_at: dict[int, int] = {}
    runs: dict[tuple, list] = {}
    last_terr: int | None = None
    last_case: str | None = None
    for idx in range(1, len(turns)):
        rec, prev = turns[idx], turns[idx - 1]
        cops, pcops = rec["cops"], prev["cops"]
        robber, probber = rec["robber"], prev["robber"]
        moved = rec["moved"]
        if idx == 1:
            if cops != pcops:
                out.append("legality: cops changed while the robber was placed")
            if any(moved):
                out.append("moved-flag: robber placement flags cop movement")
        elif rec["mover"] == "cops":
            for c in range(3):
                if cops[c] != pcops[c] and not g.has_edge(pcops[c], cops[c]):
                    out.append(
                        f"legality: cop {c} jumped {pcops[c]} to {cops[c]} on turn {idx}"
                    )
                if moved[c] != (cops[c] != pcops[c]):
                    out.append(
                        f"moved-flag: cop {c} flag disagrees with positions on turn {idx}"
                    )
            if sum(1 for c in range(3) if cops[c] != pcops[c]) > 2:
                out.append(f"active-cap: three cops moved on turn {idx}")
            if robber != probber:
                out.append(f"legality: robber moved on the cops' turn {idx}")
        else:
            if cops != pcops:
                out.append(f"legality: cops moved on the robber's turn {idx}")
            if any(moved):
                out.append(f"moved-flag: robber turn {idx} flags cop movement")
            if robber != probber and not g.has_edge(probber, robber):
                out.append(
                    f"legality: robber jumped {probber} to {robber} on turn {idx}"
                )
        if idx < final and robber in cops:
            out.append(f"legality: play continued with the robber caught at turn {idx}")
        note = rec.get("note")
        if isinstance(note, dict) and "case" in note:
            if rec["mover"] != "cops":
                out.append(f"milestone: note outside a cops' turn at {idx}")
            problems, terr, newguards = _milestone_errors(g, note, cops, robber, idx)
            out.extend(problems)
            if terr is not None:
                if last_terr is not None and terr > last_terr:
                    out.append(
                        f"milestone: territory grew {last_terr} to {terr} at turn {idx}"
                    )
                if (
                    last_case is not None
                    and note.get("case") != last_case
                    and last_terr is not None
                    and terr >= last_terr
                ):
                    out.append(
                        f"milestone: case change without territory decrease at turn {idx}"
                    )
                last_terr = terr
                last_case = note.get("case")
            if newguards is not None:
                guards = newguards
                park_at = {
                    gd["cop"]: cops[gd["cop"]]
                    for gd in guards
                    if gd["kind"] == "park"
                }
                runs = {
                    (gd["cop"], tuple(gd["path"])): runs.get(
                        (gd["cop"], tuple(gd["path"])), [0, False]
                    )
                    for gd in guards
                    if gd["kind"] == "leisurely"
                }
        if rec["mover"] != "cops" or not guards or (captured and idx == final):
            continue
        # guard discipline between milestones
        for gd in guards:
            c = gd["cop"]
            p = gd["path"]
            if gd["kind"] == "park":
                if cops[c] != park_at[c]:
                    out.append(f"park: cop {c} left its post on turn {idx}")
                continue
            if cops[c] not in p:
                out.append(f"shadow: cop {c} is off its path on turn {idx}")
                continue
            host = mask_of(gd["host"])
            if not host >> robber & 1:
                out.append(f"shadow: robber outside the host of cop {c} on turn {idx}")
                continue
            dist = g.bfs_levels(robber, host)
            k = p.index(cops[c])
            if any(
                dist[v] >= 0 and abs(jj - k) > dist[v] for jj, v in enumerate(p)
            ):
                out.append(
                    f"shadow: cop {c} is outside the wide shadow on turn {idx}"
                )
            if gd["kind"] == "leisurely":
                run = runs[(c, tuple(p))]
                if robber in p:
                    run[1] = True
                if moved[c]:
                    run[0] += 1
                    if run[0] > len(p) - 1 and not run[1]:
                        out.append(
                            f"rest: cop {c} moved {run[0]} straight turns on a "
                            f"path of length {len(p) - 1} at turn {idx}"
                        )
                else:
                    run[0] = 0
                    run[1] = False
    verdict = trace.verdict
    outcome = verdict.get("outcome")
    last = turns[-1]
    if outcome == "captured":
        if verdict.get("turn") != last["t"]:
            out.append("verdict: capture turn disagrees with the last record")
        if last["robber"] not in last["cops"]:
            out.append("verdict: captured without a cop on the robber")
    elif outcome == "aborted":
        if last["robber"] is not None and last["robber"] in last["cops"]:
            out.append("verdict: aborted although the robber was caught")
        if not verdict.get("reason"):
            out.append("verdict: aborted without a reason")
    else:
        out.append(f"verdict: unknown outcome {outcome!r}")
    return out
