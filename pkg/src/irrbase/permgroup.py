"""Permutation groups with deterministic Schreier-Sims stabilizer chains.

Permutations are tuples of images on ``0..n-1``; ``p[i]`` is the image of
``i``.  Products act on the right: ``mul(p, q)`` applies ``p`` first.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Iterable, Sequence

Perm = tuple[int, ...]


def identity(n: int) -> Perm:
    return tuple(range(n))


def is_perm(images: Sequence[int]) -> bool:
    return sorted(images) == list(range(len(images)))


def mul(p: Perm, q: Perm) -> Perm:
    return tuple([q[i] for i in p])


def inv(p: Perm) -> Perm:
    out = [0] * len(p)
    for i, j in enumerate(p):
        out[j] = i
    return tuple(out)


def is_identity(p: Perm) -> bool:
    return all(i == j for i, j in enumerate(p))


def cycles(n: int, *cycs: Sequence[int]) -> Perm:
    """Build a permutation of degree n from disjoint cycles."""
    img = list(range(n))
    for c in cycs:
        for a, b in zip(c, c[1:] + type(c)(c[:1])):
            img[a] = b
    if not is_perm(img):
        raise ValueError("cycles are not disjoint")
    return tuple(img)


def parse_perms(text: str) -> list[Perm]:
    """Parse the JSON permutation format: a list of 0-based image arrays."""
    data = json.loads(text)
    if not isinstance(data, list) or not all(isinstance(g, list) for g in data):
        raise ValueError("expected a JSON list of image arrays")
    perms = [tuple(int(x) for x in g) for g in data]
    for g in perms:
        if not is_perm(g):
            raise ValueError(f"not a bijection: {list(g)}")
    return perms


def dump_perms(perms: Iterable[Perm]) -> str:
    return json.dumps([list(p) for p in perms])


class PermGroup:
    """A permutation group given by generators."""

    def __init__(self, degree: int, generators: Iterable[Sequence[int]] = ()):
        if degree < 1:
            raise ValueError("degree must be positive")
        gens = []
        seen = set()
        for g in generators:
            g = tuple(g)
            if len(g) != degree:
                raise ValueError(f"generator of degree {len(g)} in a group of degree {degree}")
            if not is_perm(g):
                raise ValueError(f"not a bijection: {list(g)}")
            if not is_identity(g) and g not in seen:
                seen.add(g)
                gens.append(g)
        self.degree = degree
        self.generators: tuple[Perm, ...] = tuple(gens)
        self._chain: StabilizerChain | None = None

    def __repr__(self):
        return f"PermGroup(degree={self.degree}, ngens={len(self.generators)})"

    def is_trivial(self) -> bool:
        return not self.generators

    @property
    def chain(self) -> "StabilizerChain":
        if self._chain is None:
            self._chain = stabilizer_chain(self, ())
        return self._chain

    def order(self) -> int:
        return group_order(self.chain)

    def __contains__(self, g: Sequence[int]) -> bool:
        return contains(self.chain, tuple(g))

    def fixed_points(self) -> frozenset[int]:
        return frozenset(i for i in range(self.degree) if all(g[i] == i for g in self.generators))

    def orbits(self) -> list[list[int]]:
        return orbits(self)

    def is_transitive(self) -> bool:
        return len(orbit(self, 0)[0]) == self.degree


# -- orbits --------------------------------------------------------------

def orbit(group: PermGroup, point: int) -> tuple[list[int], dict[int, Perm]]:
    """Orbit of ``point`` in BFS order, with a transversal ``{b: u}`` where
    ``u`` maps ``point`` to ``b``."""
    if not 0 <= point < group.degree:
        raise ValueError(f"point {point} out of range")
    return _orbit_transversal(group.degree, group.generators, point)


def _orbit_transversal(n: int, gens: Sequence[Perm], point: int):
    trans = {point: identity(n)}
    orb = [point]
    for b in orb:
        u = trans[b]
        for s in gens:
            c = s[b]
            if c not in trans:
                trans[c] = mul(u, s)
                orb.append(c)
    return orb, trans


def orbit_points(n: int, gens: Sequence[Perm], point: int) -> set[int]:
    seen = {point}
    stack = [point]
    while stack:
        b = stack.pop()
        for s in gens:
            c = s[b]
            if c not in seen:
                seen.add(c)
                stack.append(c)
    return seen


def orbit_partition(n: int, gens: Sequence[Perm]) -> list[int]:
    """Label array: ``label[i]`` is the smallest point in the orbit of ``i``."""
    label = [-1] * n
    for i in range(n):
        if label[i] < 0:
            label[i] = i
            stack = [i]
            while stack:
                b = stack.pop()
                for s in gens:
                    c = s[b]
                    if label[c] < 0:
                        label[c] = i
                        stack.append(c)
    return label


def orbits(group: PermGroup) -> list[list[int]]:
    label = orbit_partition(group.degree, group.generators)
    out: dict[int, list[int]] = {}
    for i, r in enumerate(label):
        out.setdefault(r, []).append(i)
    return list(out.values())


# -- stabilizer chains ------------------------------------------------------

@dataclass
class Level:
    point: int
    generators: list[Perm]
    transversal: dict[int, Perm]


@dataclass
class StabilizerChain:
    degree: int
    base: list[int]
    levels: list[Level]

    def order(self) -> int:
        return group_order(self)

    def stabilizer_generators(self, i: int) -> list[Perm]:
        """Generators of the pointwise stabilizer of ``base[:i]``."""
        if i >= len(self.levels):
            return []
        return list(self.levels[i].generators)

    def sift(self, g: Perm, start: int = 0) -> tuple[Perm, int]:
        for j in range(start, len(self.levels)):
            lev = self.levels[j]
            b = g[lev.point]
            u = lev.transversal.get(b)
            if u is None:
                return g, j
            if b != lev.point:
                g = mul(g, inv(u))
        return g, len(self.levels)


def _first_moved(g: Perm) -> int:
    return next(i for i, j in enumerate(g) if i != j)


def stabilizer_chain(group: PermGroup, base_prefix: Sequence[int] = ()) -> StabilizerChain:
    """Deterministic Schreier-Sims.

    The base starts with ``base_prefix`` (points whose stabilizer does not
    shrink stay in place with a one-point transversal) and is extended with
    the first point moved by a new strong generator.
    """
    n = group.degree
    for b in base_prefix:
        if not 0 <= b < n:
            raise ValueError(f"base point {b} out of range")
    ident = identity(n)
    base = list(base_prefix)
    strong = list(group.generators)
    for g in strong:
        if all(g[b] == b for b in base):
            base.append(_first_moved(g))

    levels: list[Level] = []

    def rebuild(i: int):
        gens = [s for s in strong if all(s[b] == b for b in base[:i])]
        _, trans = _orbit_transversal(n, gens, base[i])
        if i < len(levels):
            levels[i] = Level(base[i], gens, trans)
        else:
            levels.append(Level(base[i], gens, trans))

    for i in range(len(base)):
        rebuild(i)
    chain = StabilizerChain(n, base, levels)

    i = len(base) - 1
    while i >= 0:
        lev = levels[i]
        added = False
        for beta, u in list(lev.transversal.items()):
            for s in lev.generators:
                gamma = s[beta]
                sch = mul(mul(u, s), inv(lev.transversal[gamma]))
                if sch == ident:
                    continue
                h, j = chain.sift(sch, i + 1)
                if j < len(base) or h != ident:
                    if j == len(base):
                        base.append(_first_moved(h))
                    strong.append(h)
                    for lvl in range(i + 1, j + 1):
                        rebuild(lvl)
                    i = j
                    added = True
                    break
            if added:
                break
        if not added:
            i -= 1
    return chain


def group_order(chain: StabilizerChain) -> int:
    order = 1
    for lev in chain.levels:
        order *= len(lev.transversal)
    return order


def contains(chain: StabilizerChain, g: Perm) -> bool:
    if len(g) != chain.degree:
        raise ValueError("degree mismatch")
    h, j = chain.sift(tuple(g))
    return j == len(chain.levels) and is_identity(h)


def pointwise_stabilizer(group: PermGroup, points: Sequence[int]) -> PermGroup:
    chain = stabilizer_chain(group, points)
    return PermGroup(group.degree, chain.stabilizer_generators(len(points)))


# -- structural predicates ----------------------------------------------------

def _minimal_block(n: int, gens: Sequence[Perm], a: int, b: int) -> list[int]:
    parent = list(range(n))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    parent[find(b)] = find(a)
    changed = True
    while changed:
        changed = False
        for g in gens:
            for x in range(n):
                r = find(x)
                if r == x:
                    continue
                u, v = find(g[x]), find(g[r])
                if u != v:
                    parent[max(u, v)] = min(u, v)
                    changed = True
    root = find(a)
    return [x for x in range(n) if find(x) == root]


def is_primitive(group: PermGroup) -> bool:
    """Transitive with no block system other than the trivial ones."""
    n = group.degree
    if not group.is_transitive():
        return False
    if n <= 2:
        return True
    return all(len(_minimal_block(n, group.generators, 0, b)) == n for b in range(1, n))


def normal_closure(group: PermGroup, gens: Iterable[Perm]) -> PermGroup:
    n = group.degree
    sub = PermGroup(n, gens)
    pending = list(sub.generators)
    while pending:
        h = pending.pop()
        for g in group.generators:
            c = mul(mul(inv(g), h), g)
            if c not in sub:
                sub = PermGroup(n, sub.generators + (c,))
                pending.append(c)
    return sub


def derived_subgroup(group: PermGroup) -> PermGroup:
    comms = []
    gs = group.generators
    for i, a in enumerate(gs):
        for b in gs[i + 1:]:
            c = mul(mul(inv(a), inv(b)), mul(a, b))
            if not is_identity(c):
                comms.append(c)
    return normal_closure(group, comms)


def is_soluble(group: PermGroup) -> bool:
    g = group
    order = g.order()
    while order > 1:
        d = derived_subgroup(g)
        d_order = d.order()
        if d_order == order:
            return False
        g, order = d, d_order
    return True


def elements(group: PermGroup, cap: int = 100_000) -> list[Perm]:
    """All group elements by closure under right multiplication by generators."""
    e = identity(group.degree)
    seen = {e}
    out = [e]
    for x in out:
        for s in group.generators:
            y = mul(x, s)
            if y not in seen:
                seen.add(y)
                out.append(y)
                if len(out) > cap:
                    raise ValueError(f"group has more than {cap} elements")
    return out


# -- standard families ----------------------------------------------------------

def symmetric_group(n: int) -> PermGroup:
    if n < 2:
        return PermGroup(max(n, 1))
    return PermGroup(n, [cycles(n, list(range(n))), cycles(n, [0, 1])])


def alternating_group(n: int) -> PermGroup:
    if n < 3:
        return PermGroup(max(n, 1))
    return PermGroup(n, [cycles(n, [0, 1, i]) for i in range(2, n)])


def cyclic_group(n: int) -> PermGroup:
    return PermGroup(n, [cycles(n, list(range(n)))] if n > 1 else [])


def dihedral_group(n: int) -> PermGroup:
    """Symmetries of the n-gon (n >= 3) in its natural action."""
    if n < 3:
        raise ValueError("dihedral natural action needs n >= 3")
    refl = tuple((-i) % n for i in range(n))
    return PermGroup(n, [cycles(n, list(range(n))), refl])
