"""Brute-force reference implementations used only by the tests.

Everything here works from the full element list of the group (closure by
breadth-first multiplication), so it shares no code with the stabilizer
chains or the closure-lattice searches it is compared against.
"""

from __future__ import annotations

from itertools import combinations, product

from irrbase.permgroup import PermGroup, elements


class Elements:
    """A group held as its explicit element list."""

    def __init__(self, group: PermGroup, cap: int = 5000):
        self.n = group.degree
        self.gens = list(group.generators)
        self.all = elements(group, cap)

    def stabilizer(self, points, within=None) -> list:
        pool = self.all if within is None else within
        return [g for g in pool if all(g[p] == p for p in points)]


def brute_b(E: Elements) -> int:
    if len(E.all) == 1:
        return 0
    for size in range(1, E.n + 1):
        for pts in combinations(range(E.n), size):
            if len(E.stabilizer(pts)) == 1:
                return size
    raise AssertionError("no base")


def brute_I(E: Elements) -> int:
    """Longest sequence along which the stabilizer strictly shrinks to 1."""
    memo: dict[frozenset, int] = {}

    def best(stab):
        if len(stab) == 1:
            return 0
        key = frozenset(stab)
        if key in memo:
            return memo[key]
        top = -1
        for w in range(E.n):
            smaller = [g for g in stab if g[w] == w]
            if len(smaller) < len(stab):
                top = max(top, 1 + best(smaller))
        memo[key] = top
        return top

    return best(E.all)


def _stab_size(E: Elements, pts) -> int:
    return len(E.stabilizer(pts))


def brute_B(E: Elements) -> int:
    best = 0
    for size in range(E.n + 1):
        for pts in combinations(range(E.n), size):
            if _stab_size(E, pts) != 1:
                continue
            if all(_stab_size(E, pts[:i] + pts[i + 1:]) > 1 for i in range(size)):
                best = max(best, size)
    return best


def brute_H(E: Elements) -> int:
    best = 0
    for size in range(E.n + 1):
        for pts in combinations(range(E.n), size):
            here = _stab_size(E, pts)
            if all(_stab_size(E, pts[:i] + pts[i + 1:]) > here for i in range(size)):
                best = max(best, size)
    return best


class _UnionFind:
    def __init__(self, size: int):
        self.parent = list(range(size))

    def find(self, x: int) -> int:
        while self.parent[x] != x:
            self.parent[x] = self.parent[self.parent[x]]
            x = self.parent[x]
        return x

    def union(self, a: int, b: int):
        ra, rb = self.find(a), self.find(b)
        if ra != rb:
            self.parent[max(ra, rb)] = min(ra, rb)


def tuple_orbit_ids(n: int, gens, length: int) -> dict[tuple, int]:
    """Orbit label of every length-l tuple (repeats allowed) under the group."""
    tuples = list(product(range(n), repeat=length))
    index = {t: i for i, t in enumerate(tuples)}
    uf = _UnionFind(len(tuples))
    for t, i in index.items():
        for g in gens:
            uf.union(i, index[tuple(g[x] for x in t)])
    return {t: uf.find(i) for t, i in index.items()}


def literal_rc(group: PermGroup, max_len: int = 5) -> int:
    """Least k such that, for every l in k..max_len, k-subtuple complete
    l-tuples (repeats allowed) lie in one orbit."""
    n, gens = group.degree, list(group.generators)
    ids = {l: tuple_orbit_ids(n, gens, l) for l in range(1, max_len + 1)}

    def holds(k: int, l: int) -> bool:
        subsets = list(combinations(range(l), k))
        seen: dict[tuple, int] = {}
        for t, orbit_id in ids[l].items():
            signature = tuple(ids[k][tuple(t[i] for i in s)] for s in subsets)
            if seen.setdefault(signature, orbit_id) != orbit_id:
                return False
        return True

    for k in range(1, max_len + 1):
        if all(holds(k, l) for l in range(k, max_len + 1)):
            return k
    return max_len + 1
