"""Exact pursuit-game solver by backward induction.

States are (sorted cop multiset, robber vertex, side to move).  Cops place
first, the robber answers, and cops move first; on each cops' turn at most
``active_cap`` cops may step (passing is always legal).  Capture is
positional coincidence, including the robber stepping onto a cop.

The attractor runs backward from capture states with FIFO layering, so
every winning state receives its exact optimal rank: cop states take
1 + min over successors at first discovery, robber states take 1 + max via
countdown of their successor counts.  Move relations are symmetric
(stay-or-step along edges), so predecessor enumeration reuses the
successor generators.

Guard mode answers whether c cops can permanently protect an isometric
subgraph: a greatest fixed point over cops-on-h states (robber on h at the
cops' turn must be capturable immediately; otherwise some within-h reply
must stay safe), then a reachability attractor for the free approach
phase.  The approach phase pursues safe entry only: cops have no capture
power off the guarded subgraph, so a robber parked elsewhere is simply a
threat source, never a target.  Under the strict entry semantics (default)
guarding may begin with the robber already on h only when immediate
capture is available; the lenient toggle instead tolerates the on-h robber
for the entry instant, demanding a within-h continuation that punishes
every later violation, the robber staying put included.

State counts are estimated before enumeration; beyond the budget
(``PURSUIT_STATE_CAP`` overrides the default) the solver refuses with
``BudgetExceeded`` rather than thrash.
"""

from __future__ import annotations

import os
from collections import deque
from dataclasses import dataclass
from itertools import combinations, combinations_with_replacement, product
from math import comb

from .graphs import Graph, is_isometric_subgraph

DEFAULT_STATE_BUDGET = 50_000_000

COPS, ROBBER = 0, 1


class BudgetExceeded(RuntimeError):
    def __init__(self, estimate: int, budget: int):
        super().__init__(
            f"estimated {estimate} states exceeds budget {budget}; "
            "raise PURSUIT_STATE_CAP to proceed"
        )
        self.estimate = estimate
        self.budget = budget


def state_budget() -> int:
    raw = os.environ.get("PURSUIT_STATE_CAP", "")
    return int(raw) if raw else DEFAULT_STATE_BUDGET


def estimate_states(n: int, cops: int) -> int:
    return comb(n + cops - 1, cops) * (n + 1) * 2


@dataclass(frozen=True)
class GameSpec:
    graph: Graph
    cops: int
    active_cap: int | None = None
    mode: str = "capture"
    guard_vertices: tuple[int, ...] | None = None
    strict: bool = True

    def __post_init__(self) -> None:
        if self.cops < 1:
            raise ValueError("need at least one cop")
        if self.active_cap is not None and not 1 <= self.active_cap <= self.cops:
            raise ValueError("active_cap must be in 1..cops")
        if self.mode not in ("capture", "guard"):
            raise ValueError(f"unknown mode {self.mode!r}")
        if self.mode == "guard" and self.guard_vertices is None:
            raise ValueError("guard mode needs guard_vertices")


class _Arena:
    """Move generators over sorted cop multisets, memoized per position."""

    def __init__(self, g: Graph, cops: int, cap: int | None, allowed: tuple[int, ...] | None = None):
        self.g = g
        self.c = cops
        self.cap = cops if cap is None else cap
        self.allowed = None if allowed is None else set(allowed)
        self._cop_cache: dict[tuple[int, ...], list[tuple[int, ...]]] = {}
        closed = []
        for v in range(g.n):
            closed.append((v,) + g.neighbors(v))
        self._closed = closed

    def _targets(self, v: int) -> list[int]:
        if self.allowed is None:
            return list(self.g.neighbors(v))
        return [u for u in self.g.neighbors(v) if u in self.allowed]

    def cop_moves(self, cops: tuple[int, ...]) -> list[tuple[int, ...]]:
        hit = self._cop_cache.get(cops)
        if hit is not None:
            return hit
        out = {cops}
        for size in range(1, self.cap + 1):
            for idxs in combinations(range(self.c), size):
                choices = [self._targets(cops[i]) for i in idxs]
                if any(not ch for ch in choices):
                    continue
                for picks in product(*choices):
                    nxt = list(cops)
                    for i, v in zip(idxs, picks):
                        nxt[i] = v
                    out.add(tuple(sorted(nxt)))
        hit = sorted(out)
        self._cop_cache[cops] = hit
        return hit

    def robber_moves(self, r: int) -> tuple[int, ...]:
        return self._closed[r]


class StrategyTable:
    """Exact winning strategy: ranks, cop moves, and the robber's best replies."""

    def __init__(
        self,
        n: int,
        cops: int,
        active_cap: int | None,
        rank: dict,
        move: dict,
        initial: tuple[int, ...] | None,
        arena: _Arena,
    ):
        self.n = n
        self.cops = cops
        self.active_cap = active_cap
        self.rank = rank
        self.move = move
        self.initial = initial
        self._arena = arena

    def state_rank(self, cops: tuple[int, ...], robber: int, side: int) -> int | None:
        return self.rank.get((tuple(sorted(cops)), robber, side))

    def cop_move(self, cops: tuple[int, ...], robber: int) -> tuple[int, ...]:
        state = (tuple(sorted(cops)), robber, COPS)
        if self.rank.get(state) == 0:
            return state[0]
        try:
            return self.move[state]
        except KeyError:
            raise ValueError("no winning move from this state") from None

    def robber_reply(self, cops: tuple[int, ...], robber: int) -> int:
        """Optimal adversary: escape the attractor if possible, else stall."""
        cops = tuple(sorted(cops))
        best, best_rank = robber, -1
        for r in self._arena.robber_moves(robber):
            if r in cops:
                continue
            nxt = self.rank.get((cops, r, COPS))
            if nxt is None:
                return r
            if nxt > best_rank:
                best, best_rank = r, nxt
        return best


def _solve_capture(spec: GameSpec) -> tuple[bool, StrategyTable]:
    g, c = spec.graph, spec.cops
    n = g.n
    estimate = estimate_states(n, c)
    budget = state_budget()
    if estimate > budget:
        raise BudgetExceeded(estimate, budget)
    arena = _Arena(g, c, spec.active_cap)
    multisets = list(combinations_with_replacement(range(n), c))

    rank: dict = {}
    move: dict = {}
    counter: dict = {}
    q: deque = deque()
    for cops in multisets:
        for r in set(cops):
            for side in (COPS, ROBBER):
                s = (cops, r, side)
                rank[s] = 0
                q.append(s)
    while q:
        s = q.popleft()
        cops, r, side = s
        rs = rank[s]
        if side == ROBBER:
            # Predecessors are cop-turn states one cop-move away.
            for prev in arena.cop_moves(cops):
                p = (prev, r, COPS)
                if p in rank:
                    continue
                rank[p] = rs + 1
                move[p] = cops
                q.append(p)
        else:
            for rp in arena.robber_moves(r):
                p = (cops, rp, ROBBER)
                if p in rank:
                    continue
                cnt = counter.get(p)
                if cnt is None:
                    cnt = len(arena.robber_moves(rp))
                cnt -= 1
                if cnt:
                    counter[p] = cnt
                else:
                    counter.pop(p, None)
                    rank[p] = rs + 1
                    q.append(p)

    best: tuple[int, tuple[int, ...]] | None = None
    for cops in multisets:
        worst = -1
        for r in range(n):
            rk = rank.get((cops, r, COPS))
            if rk is None:
                worst = None
                break
            worst = max(worst, rk)
        if worst is not None and (best is None or worst < best[0]):
            best = (worst, cops)
    initial = best[1] if best is not None else None
    table = StrategyTable(n, c, spec.active_cap, rank, move, initial, arena)
    return initial is not None, table


def solve(spec: GameSpec) -> tuple[bool, StrategyTable]:
    if spec.mode != "capture":
        raise ValueError("solve handles capture mode; use is_guardable for guard mode")
    return _solve_capture(spec)


def cop_number(g: Graph, max_cops: int, active_cap: int | None = None) -> int | None:
    """Least c <= max_cops winning the game, or None when all of them lose."""
    for c in range(1, max_cops + 1):
        cap = None if active_cap is None else min(active_cap, c)
        won, _ = solve(GameSpec(g, c, active_cap=cap))
        if won:
            return c
    return None


def k_move_cop_number(g: Graph, active: int, max_cops: int) -> int | None:
    return cop_number(g, max_cops, active_cap=active)


def is_guardable(
    g: Graph, h: tuple[int, ...], cops: int, strict: bool = True
) -> bool:
    """Can `cops` cops permanently guard the isometric subgraph on h?"""
    hv = tuple(sorted(set(h)))
    if not hv:
        raise ValueError("guard target must be nonempty")
    if not is_isometric_subgraph(g, hv):
        raise ValueError("guard target must induce an isometric subgraph")
    n = g.n
    estimate = estimate_states(n, cops) + comb(len(hv) + cops - 1, cops) * (n + 1) * 2
    budget = state_budget()
    if estimate > budget:
        raise BudgetExceeded(estimate, budget)

    hset = set(hv)
    guard_arena = _Arena(g, cops, None, allowed=hv)
    guard_multisets = list(combinations_with_replacement(hv, cops))

    # Greatest fixed point: remove unsafe guard states via a BAD attractor.
    bad: set = set()
    counter: dict = {}
    q: deque = deque()
    for cset in guard_multisets:
        occupied = set(cset)
        covered = set()
        for v in cset:
            covered.add(v)
            covered.update(g.neighbors(v))
        for r in range(n):
            if r in occupied:
                continue
            if r in hset and r not in covered:
                s = (cset, r, COPS)
                bad.add(s)
                q.append(s)
    while q:
        s = q.popleft()
        cset, r, side = s
        if side == COPS:
            for rp in guard_arena.robber_moves(r):
                if rp in cset:
                    continue
                p = (cset, rp, ROBBER)
                if p not in bad:
                    bad.add(p)
                    q.append(p)
        else:
            for prev in guard_arena.cop_moves(cset):
                if r in prev:
                    continue
                p = (prev, r, COPS)
                if p in bad:
                    continue
                if r in hset:
                    continue  # status fixed by immediate-capture seeding
                cnt = counter.get(p)
                if cnt is None:
                    cnt = len(guard_arena.cop_moves(prev))
                cnt -= 1
                if cnt:
                    counter[p] = cnt
                else:
                    counter.pop(p, None)
                    bad.add(p)
                    q.append(p)

    # Approach phase: attract the free game into safe guarding entry states.
    free_arena = _Arena(g, cops, None)
    multisets = list(combinations_with_replacement(range(n), cops))
    win: set = set()
    counter = {}
    q = deque()
    for cset in guard_multisets:
        for r in range(n):
            s = (cset, r, COPS)
            if r not in hset or strict:
                ok = s not in bad
            else:
                # Tolerate the robber on h at the entry instant: some
                # within-h continuation must survive all later play.
                ok = any(
                    (prev, r, ROBBER) not in bad
                    for prev in guard_arena.cop_moves(cset)
                )
            if ok:
                win.add(s)
                q.append(s)
    while q:
        s = q.popleft()
        cset, r, side = s
        if side == ROBBER:
            for prev in free_arena.cop_moves(cset):
                p = (prev, r, COPS)
                if p not in win:
                    win.add(p)
                    q.append(p)
        else:
            for rp in free_arena.robber_moves(r):
                p = (cset, rp, ROBBER)
                if p in win:
                    continue
                cnt = counter.get(p)
                if cnt is None:
                    cnt = len(free_arena.robber_moves(rp))
                cnt -= 1
                if cnt:
                    counter[p] = cnt
                else:
                    counter.pop(p, None)
                    win.add(p)
                    q.append(p)

    return any(
        all((cset, r, COPS) in win for r in range(n)) for cset in multisets
    )
