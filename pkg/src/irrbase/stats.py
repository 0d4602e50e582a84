"""Exact base statistics: b, I, B, H, RC and the greedy base.

Every pointwise stabilizer G_(D) is determined by its fixed-point set
cl(D) (the closure of D), and G_(D) = G_(cl(D)).  The searches below walk
the lattice of closed sets, caching one stabilizer per closed set and one
transition per (closed set, point).  Candidate points at each node are
restricted to one representative per orbit of the current stabilizer,
smallest point first.
"""

from __future__ import annotations

import os
import time
from dataclasses import dataclass, field
from itertools import combinations
from typing import Iterator, Sequence

from .permgroup import PermGroup, orbit_partition, orbit_points, pointwise_stabilizer

DEFAULT_NODE_CAP = 5_000_000


class BudgetExhausted(RuntimeError):
    pass


def default_node_cap() -> int:
    env = os.environ.get("IRRBASE_NODE_CAP")
    return int(env) if env else DEFAULT_NODE_CAP


STATISTICS = ("b", "I", "B", "H", "RC")


@dataclass
class SearchBudget:
    node_cap: int = field(default_factory=default_node_cap)
    time_cap: float | None = None
    enabled: frozenset[str] = frozenset(STATISTICS)

    def __post_init__(self):
        if self.node_cap <= 0 or (self.time_cap is not None and self.time_cap <= 0):
            raise ValueError("budget caps must be positive")


class ClosureLattice:
    """Cache of closed point sets and their pointwise stabilizers."""

    def __init__(self, group: PermGroup, budget: SearchBudget | None = None):
        self.group = group
        self.n = group.degree
        self.full = frozenset(range(self.n))
        self.budget = budget or SearchBudget()
        self._start = time.monotonic()
        self.nodes = 0
        self.chain_builds = 0
        self.root = group.fixed_points()
        self._stab: dict[frozenset, PermGroup] = {self.root: group}
        self._step: dict[tuple[frozenset, int], frozenset] = {}
        self._labels: dict[frozenset, list[int]] = {}

    def tick(self):
        self.nodes += 1
        if self.nodes > self.budget.node_cap:
            raise BudgetExhausted(f"node cap {self.budget.node_cap} exhausted")
        if self.budget.time_cap is not None and self.nodes % 256 == 0:
            if time.monotonic() - self._start > self.budget.time_cap:
                raise BudgetExhausted(f"time cap {self.budget.time_cap}s exhausted")

    def stabilizer(self, closed: frozenset) -> PermGroup:
        return self._stab[closed]

    def extend(self, closed: frozenset, point: int) -> frozenset:
        """cl(closed + {point})."""
        if point in closed:
            return closed
        key = (closed, point)
        out = self._step.get(key)
        if out is None:
            self.chain_builds += 1
            stab = pointwise_stabilizer(self._stab[closed], [point])
            out = stab.fixed_points()
            self._stab.setdefault(out, stab)
            self._step[key] = out
        return out

    def closure(self, points) -> frozenset:
        closed = self.root
        for p in sorted(points):
            closed = self.extend(closed, p)
        return closed

    def orbit_labels(self, closed: frozenset) -> list[int]:
        labels = self._labels.get(closed)
        if labels is None:
            labels = orbit_partition(self.n, self._stab[closed].generators)
            self._labels[closed] = labels
        return labels

    def candidates(self, closed: frozenset, prune: bool = True) -> list[int]:
        """Points outside ``closed``; one per orbit of its stabilizer if pruning."""
        if not prune:
            return [p for p in range(self.n) if p not in closed]
        labels = self.orbit_labels(closed)
        return [p for p in range(self.n) if p not in closed and labels[p] == p]

    def orbit_of(self, closed: frozenset, point: int) -> frozenset:
        labels = self.orbit_labels(closed)
        r = labels[point]
        return frozenset(i for i in range(self.n) if labels[i] == r)


# -- b ------------------------------------------------------------------------

def min_base(group: PermGroup, budget: SearchBudget | None = None, *, prune: bool = True,
             lattice: ClosureLattice | None = None) -> tuple[int, tuple[int, ...]]:
    """Minimum base size and a witness, by breadth-first iterative deepening."""
    lat = lattice or ClosureLattice(group, budget)
    if lat.root == lat.full:
        return 0, ()
    if not prune:
        return _min_base_unpruned(lat)
    frontier = {lat.root: ()}
    seen = {lat.root}
    depth = 0
    while frontier:
        depth += 1
        nxt = {}
        for closed, seq in frontier.items():
            for w in lat.candidates(closed):
                lat.tick()
                new = lat.extend(closed, w)
                if new == lat.full:
                    return depth, seq + (w,)
                if new not in seen:
                    seen.add(new)
                    nxt[new] = seq + (w,)
        frontier = nxt
    raise AssertionError("search ended without reaching a base")


def _min_base_unpruned(lat: ClosureLattice):
    def dfs(closed, seq, limit):
        if closed == lat.full:
            return seq
        if len(seq) == limit:
            return None
        for w in lat.candidates(closed, prune=False):
            lat.tick()
            found = dfs(lat.extend(closed, w), seq + (w,), limit)
            if found is not None:
                return found
        return None

    for limit in range(1, lat.n + 1):
        found = dfs(lat.root, (), limit)
        if found is not None:
            return limit, found
    raise AssertionError("no base found")


# -- I ------------------------------------------------------------------------

def max_irredundant_base(group: PermGroup, budget: SearchBudget | None = None, *, prune: bool = True,
                         lattice: ClosureLattice | None = None) -> tuple[int, tuple[int, ...]]:
    """Maximum length of an irredundant base, with a witness sequence."""
    lat = lattice or ClosureLattice(group, budget)
    memo: dict[frozenset, tuple[int, tuple[int, ...]]] = {}

    def best(closed):
        if closed == lat.full:
            return 0, ()
        if prune and closed in memo:
            return memo[closed]
        top = (-1, ())
        for w in lat.candidates(closed, prune):
            lat.tick()
            length, tail = best(lat.extend(closed, w))
            if length + 1 > top[0]:
                top = (length + 1, (w,) + tail)
        if prune:
            memo[closed] = top
        return top

    return best(lat.root)


# -- independent sets: H and B ----------------------------------------------------

def independent_sets(lat: ClosureLattice, prune: bool = True) -> Iterator[tuple[tuple[int, ...], frozenset]]:
    """Yield independent sets D (no d in cl(D - d)) with their closures.

    With pruning, every independent set is represented up to the action of
    the group (at least once); without, every one is yielded exactly once.
    """
    def independent_after_adding(delta: tuple[int, ...], w: int) -> bool:
        for i, d in enumerate(delta):
            rest = delta[:i] + delta[i + 1:] + (w,)
            if d in lat.closure(rest):
                return False
        return True

    if not prune:
        def rec_all(delta, closed):
            yield delta, closed
            start = delta[-1] + 1 if delta else 0
            for w in range(start, lat.n):
                if w in closed:
                    continue
                lat.tick()
                if independent_after_adding(delta, w):
                    yield from rec_all(delta + (w,), lat.extend(closed, w))

        yield from rec_all((), lat.root)
        return

    visited = {frozenset()}
    stack = [((), lat.root)]
    while stack:
        delta, closed = stack.pop()
        yield delta, closed
        children = []
        for w in lat.candidates(closed):
            key = frozenset(delta + (w,))
            if key in visited:
                continue
            visited.add(key)
            lat.tick()
            if independent_after_adding(delta, w):
                children.append((tuple(sorted(delta + (w,))), lat.extend(closed, w)))
        stack.extend(reversed(children))


def height(group: PermGroup, budget: SearchBudget | None = None, *, prune: bool = True,
           lattice: ClosureLattice | None = None) -> tuple[int, tuple[int, ...]]:
    lat = lattice or ClosureLattice(group, budget)
    best = ()
    for delta, _ in independent_sets(lat, prune):
        if len(delta) > len(best):
            best = delta
    return len(best), best


def max_minimal_base(group: PermGroup, budget: SearchBudget | None = None, *, prune: bool = True,
                     lattice: ClosureLattice | None = None) -> tuple[int, tuple[int, ...]]:
    """Largest minimal base.  Minimal bases are exactly the independent bases."""
    lat = lattice or ClosureLattice(group, budget)
    best = None
    for delta, closed in independent_sets(lat, prune):
        if closed == lat.full and (best is None or len(delta) > len(best)):
            best = delta
    assert best is not None
    return len(best), best


def is_minimal_base(group: PermGroup, points: Sequence[int]) -> bool:
    if not pointwise_stabilizer(group, points).is_trivial():
        return False
    return all(not pointwise_stabilizer(group, [p for j, p in enumerate(points) if j != i]).is_trivial()
               for i in range(len(points)))


# -- RC ---------------------------------------------------------------------

@dataclass
class RCResult:
    value: int
    certificate: tuple[tuple[int, ...], tuple[int, ...]] | None
    """A pair of tuples that are (value-1)-subtuple complete but not in one orbit."""


def _rc_counterexample(lat: ClosureLattice, sets, k: int, max_len: int):
    for delta, closed in sets:
        if len(delta) < k or len(delta) + 1 > max_len:
            continue
        subs = [lat.closure(b) for b in combinations(delta, k - 1)]
        labels_a = lat.orbit_labels(closed)
        for x in range(lat.n):
            if x in delta or labels_a[x] != x:
                continue
            lat.tick()
            inter = None
            for c in subs:
                orb = lat.orbit_of(c, x)
                inter = orb if inter is None else inter & orb
            extra = inter - lat.orbit_of(closed, x)
            if extra:
                return delta + (x,), delta + (min(extra),)
    return None


def relational_complexity(group: PermGroup, max_len: int | None = None, budget: SearchBudget | None = None,
                          *, lattice: ClosureLattice | None = None) -> RCResult:
    """Relational complexity over tuples of length at most ``max_len`` (default n).

    For k >= 2, two k-subtuple complete tuples have equal repetition patterns,
    so only distinct-entry tuples matter.  Normalizing the first
    non-equivalent prefix shows RC > k exactly when some independent set A
    with |A| >= k and point x satisfy
        intersection over (k-1)-subsets B of A of x^G_(B)  !=  x^G_(A).
    """
    lat = lattice or ClosureLattice(group, budget)
    max_len = lat.n if max_len is None else max_len
    if max_len < 2:
        raise ValueError("max_len must be at least 2")
    if group.is_trivial():
        return RCResult(1, None)
    a = next(p for p in range(lat.n) if p not in lat.root)
    b = next(p for p in sorted(lat.orbit_of(lat.root, a)) if p != a)
    cert = ((a, a), (a, b))
    sets = list(independent_sets(lat))
    k = 2
    while True:
        found = _rc_counterexample(lat, sets, k, max_len)
        if found is None:
            return RCResult(k, cert)
        cert = found
        k += 1


# -- greedy -------------------------------------------------------------------

def greedy_base(group: PermGroup, *, stats: dict | None = None) -> tuple[int, ...]:
    """Append a point of a largest orbit of the current stabilizer until trivial.

    Ties go to the orbit with the smallest representative.  ``stats`` (if
    given) receives the number of stabilizer-chain constructions.
    """
    seq = []
    current = group
    builds = 0
    while not current.is_trivial():
        labels = orbit_partition(group.degree, current.generators)
        sizes: dict[int, int] = {}
        for r in labels:
            sizes[r] = sizes.get(r, 0) + 1
        rep = min(sizes, key=lambda r: (-sizes[r], r))
        seq.append(rep)
        current = pointwise_stabilizer(current, [rep])
        builds += 1
    if stats is not None:
        stats["chain_builds"] = builds
    return tuple(seq)


# -- report -------------------------------------------------------------------

@dataclass
class StatsReport:
    n: int
    order: int
    b: int | None = None
    I: int | None = None
    B: int | None = None
    H: int | None = None
    RC: int | None = None
    greedy: tuple[int, ...] = ()
    witnesses: dict[str, object] = field(default_factory=dict)
    skipped: dict[str, str] = field(default_factory=dict)
    nodes: int = 0

    @property
    def greedy_size(self) -> int:
        return len(self.greedy)

    def to_dict(self) -> dict:
        return {
            "n": self.n, "order": self.order, "b": self.b, "B": self.B, "H": self.H,
            "I": self.I, "RC": self.RC, "greedy": list(self.greedy),
            "greedy_size": self.greedy_size,
            "witnesses": {k: [list(x) for x in v] if k == "RC" and v else list(v) if v is not None else None
                          for k, v in self.witnesses.items()},
            "skipped": dict(self.skipped), "nodes": self.nodes,
        }


def compute_stats(group: PermGroup, budget: SearchBudget | None = None, *, rc_max_len: int | None = None) -> StatsReport:
    """All enabled statistics sharing one closure lattice.

    Raises BudgetExhausted if the node or time cap is hit.
    """
    budget = budget or SearchBudget()
    lat = ClosureLattice(group, budget)
    rep = StatsReport(n=group.degree, order=group.order())
    rep.greedy = greedy_base(group)
    on = budget.enabled
    if "b" in on:
        rep.b, rep.witnesses["b"] = min_base(group, lattice=lat)
    if "I" in on:
        rep.I, rep.witnesses["I"] = max_irredundant_base(group, lattice=lat)
    if "H" in on or "B" in on:
        sets = list(independent_sets(lat))
        top = max(sets, key=lambda s: len(s[0]))[0]
        bases = [s for s, c in sets if c == lat.full]
        top_base = max(bases, key=len)
        if "H" in on:
            rep.H, rep.witnesses["H"] = len(top), top
        if "B" in on:
            rep.B, rep.witnesses["B"] = len(top_base), top_base
    if "RC" in on:
        rc = relational_complexity(group, rc_max_len, lattice=lat)
        rep.RC = rc.value
        rep.witnesses["RC"] = rc.certificate
    for s in STATISTICS:
        if s not in on:
            rep.skipped[s] = "disabled"
    rep.nodes = lat.nodes
    return rep
