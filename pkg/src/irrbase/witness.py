"""Explicit long irredundant sequences of m-subspaces for PGL_d(q).

Coordinates are 1-based throughout this module, matching ``e_1 .. e_d``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

from .fq import FieldSpec, FqMatrix, rref_rows
from .permgroup import PermGroup, stabilizer_chain
from .projective import ActionTable, Subspace, subspace_image


def step_count(d: int, m: int) -> int:
    return m * d - m * m + d


def guaranteed_length(d: int, m: int, q: int) -> int:
    return m * d - m * m + 1 if q == 2 else (m + 1) * d - m * m


def r_var(k: int, m: int) -> int:
    return (k - 2) // m + m + 1


def s_var(k: int, m: int) -> int:
    return m - ((k - 2) % m)


def t_var(k: int, d: int, m: int) -> int:
    return k - m * d + m * m


def _check(d: int, m: int):
    if d < 2 or not 1 <= m <= d - 1:
        raise ValueError(f"need d >= 2 and 1 <= m <= d-1, got d={d}, m={m}")


def w_set(k: int, d: int, m: int) -> list[tuple[int, ...]]:
    """The k-th set of m vectors, each given by its support (coefficients 1)."""
    _check(d, m)
    top = m * d - m * m
    if not 1 <= k <= top + d:
        raise ValueError(f"step {k} outside 1..{top + d}")
    if k <= m + 1:
        return [(i,) for i in range(1, m + 2) if i != m + 2 - k]
    if k <= top + 1:
        r, s = r_var(k, m), s_var(k, m)
        return [(i,) for i in list(range(1, m + 1)) + [r] if i != s]
    t = t_var(k, d, m)
    if k <= top + m + 1:
        return [(1, t)] + [(i,) for i in range(2, m + 2) if i != t]
    return [(1, t)] + [(i,) for i in range(2, m + 1)]


def _vector(support: tuple[int, ...], d: int) -> tuple[int, ...]:
    v = [0] * d
    for i in support:
        v[i - 1] = 1
    return tuple(v)


@dataclass
class WitnessStep:
    k: int
    W: list[tuple[int, ...]]
    omega: Subspace
    certificate: tuple[int, int] | None = None
    scalar: int = 1
    """Entry added at (x, y): the certificate matrix is I + scalar * E_{x,y}."""
    rk: int | None = None
    sk: int | None = None
    tk: int | None = None

    def certificate_matrix(self) -> FqMatrix | None:
        if self.certificate is None:
            return None
        x, y = self.certificate
        return FqMatrix.elementary(self.omega.field, self.omega.d, x, y, self.scalar)


@dataclass
class WitnessChain:
    d: int
    m: int
    q: int
    steps: list[WitnessStep]
    claimed_length: int

    def subspaces(self, upto: int | None = None) -> list[Subspace]:
        steps = self.steps if upto is None else self.steps[:upto]
        return [s.omega for s in steps]


def witness_sequence(d: int, m: int, field: FieldSpec) -> WitnessChain:
    """Build all md - m^2 + d steps with their strict-descent certificates.

    Step k >= 2 in the guaranteed range carries (x, y) such that
    I + E_{x,y} fixes every earlier subspace and moves the k-th.  For the
    diagonal certificates (x = y, only when q > 2) the added scalar is 1 in
    odd characteristic; in characteristic 2 that would give a singular
    matrix, so z - 1 is used instead (z a primitive element), i.e. the
    certificate scales e_x by z.
    """
    _check(d, m)
    q = field.q
    top = m * d - m * m
    claimed = guaranteed_length(d, m, q)
    steps = []
    for k in range(1, top + d + 1):
        W = w_set(k, d, m)
        omega = Subspace.span(field, [_vector(v, d) for v in W])
        step = WitnessStep(k, W, omega)
        if k >= 2:
            step.rk, step.sk = r_var(k, m), s_var(k, m)
        step.tk = t_var(k, d, m)
        if 2 <= k <= m + 1:
            step.certificate = (m + 1, m + 2 - k)
        elif m + 2 <= k <= top + 1:
            step.certificate = (step.rk, step.sk)
        elif k >= top + 2 and q > 2:
            step.certificate = (step.tk, step.tk)
            two = field.add(1, 1)
            step.scalar = 1 if two != 0 else field.sub(field.primitive, 1)
        steps.append(step)
    return WitnessChain(d, m, q, steps, claimed)


@dataclass
class BoundCheck:
    name: str
    ref: str
    inputs: dict
    lhs: object
    rhs: object
    passed: bool
    note: str = ""

    def to_dict(self) -> dict:
        return {"name": self.name, "ref": self.ref, "inputs": self.inputs, "lhs": _jsonable(self.lhs),
                "rhs": _jsonable(self.rhs), "pass": self.passed, "note": self.note}


def _jsonable(x):
    if isinstance(x, (int, float, str, bool)) or x is None:
        return x
    if isinstance(x, (list, tuple)):
        return [_jsonable(v) for v in x]
    return str(x)


@dataclass
class BoundReport:
    checks: list[BoundCheck] = field(default_factory=list)
    modes: dict[str, str] = field(default_factory=dict)

    def add(self, name, ref, inputs, lhs, rhs, passed, note=""):
        self.checks.append(BoundCheck(name, ref, dict(inputs), lhs, rhs, bool(passed), note))

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def failures(self) -> list[BoundCheck]:
        return [c for c in self.checks if not c.passed]

    def extend(self, other: "BoundReport"):
        self.checks.extend(other.checks)
        self.modes.update(other.modes)

    def to_dict(self) -> dict:
        return {"pass": self.passed, "modes": dict(self.modes), "checks": [c.to_dict() for c in self.checks]}


def _index_of(action: ActionTable, u: Subspace) -> int:
    return action.index[u]


def verify_witness(chain: WitnessChain, action: ActionTable | None = None, *,
                   order_cap: int = 1_000_000) -> BoundReport:
    """Certificate mode always; chain mode when an action is given and the
    group order is at most ``order_cap``."""
    rep = BoundReport()
    omegas = chain.subspaces()
    params = {"d": chain.d, "m": chain.m, "q": chain.q}
    for step in chain.steps[1:chain.claimed_length]:
        T = step.certificate_matrix()
        if T is None:
            rep.add("certificate", "strict descent", {**params, "k": step.k}, None, None, False, "missing")
            continue
        invertible = T.is_invertible()
        fixes = invertible and all(subspace_image(w, T) == w for w in omegas[:step.k - 1])
        moves = invertible and subspace_image(step.omega, T) != step.omega
        rep.add("certificate", "strict descent", {**params, "k": step.k, "x": step.certificate[0],
                "y": step.certificate[1], "scalar": step.scalar}, fixes, moves, fixes and moves)
    rep.modes["certificate"] = "ran"

    if action is None:
        rep.modes["chain"] = "skipped: no action"
        return rep
    p = action.params
    if (p.get("d"), p.get("m"), p.get("q")) != (chain.d, chain.m, chain.q):
        raise ValueError("action parameters do not match the witness chain")
    group = action.group()
    order = group.order()
    if order > order_cap:
        rep.modes["chain"] = "skipped: budget"
        return rep
    seq = [_index_of(action, w) for w in omegas[:chain.claimed_length]]
    orders = stabilizer_orders(group, seq)
    strict = all(a > b for a, b in zip(orders, orders[1:]))
    rep.add("chain-descent", "strict descent", {**params, "length": len(seq)}, orders, None, strict)
    rep.add("I-lower", "lower bound", params, len(seq), chain.claimed_length, strict and len(seq) >= chain.claimed_length)
    rep.modes["chain"] = "ran"
    return rep


def stabilizer_orders(group: PermGroup, seq: Sequence[int]) -> list[int]:
    """|G^(i)| for i = 0..len(seq), from one chain with ``seq`` as base prefix."""
    chain = stabilizer_chain(group, seq)
    sizes = [len(lev.transversal) for lev in chain.levels]
    out = []
    for i in range(len(seq) + 1):
        prod = 1
        for s in sizes[i:]:
            prod *= s
        out.append(prod)
    return out


def base_subsequence(chain: WitnessChain) -> list[int]:
    """1-based step indices of the sequence claimed to be a minimal base."""
    d, m = chain.d, chain.m
    top = m * d - m * m
    if chain.q == 2:
        return list(range(2, top + 2))
    return list(range(m + 1, top + d + 1))


def base_subsequence_size(d: int, m: int, q: int) -> int:
    return m * d - m * m if q == 2 else (m + 1) * d - m * m - m


def witness_minimal_base_check(chain: WitnessChain, action: ActionTable) -> BoundReport:
    """Test whether the claimed subsequence is a minimal base of the stated size."""
    rep = BoundReport()
    group = action.group()
    idx = base_subsequence(chain)
    pts = [_index_of(action, chain.steps[k - 1].omega) for k in idx]
    params = {"d": chain.d, "m": chain.m, "q": chain.q}
    base_order = stabilizer_orders(group, pts)[-1]
    rep.add("subsequence-is-base", "minimal base", {**params, "steps": idx}, base_order, 1, base_order == 1)
    drops = []
    for i in range(len(pts)):
        rest = pts[:i] + pts[i + 1:]
        drops.append(stabilizer_orders(group, rest)[-1] if rest else group.order())
    rep.add("subsequence-minimal", "minimal base", {**params, "steps": idx}, drops, 1, all(o > 1 for o in drops))
    claimed = base_subsequence_size(chain.d, chain.m, chain.q)
    rep.add("subsequence-size", "minimal base", params, len(pts), claimed, len(pts) == claimed)
    rep.modes["subsequence"] = "ran"
    return rep


# -- the algebras M_k --------------------------------------------------------------

def _constraints(field: FieldSpec, u: Subspace) -> list[list[int]]:
    """Linear conditions on the d^2 entries of g (row-major) saying u g <= u."""
    d = u.d
    add, mul, neg = field.add_table, field.mul_table, field.neg_table
    pivots = [next(j for j, x in enumerate(r) if x) for r in u.basis]
    free = [c for c in range(d) if c not in pivots]
    out = []
    for vec in u.basis:
        # (vec g)_c - sum_p (vec g)_p * basis[p][c] = 0 for each non-pivot column c
        for c in free:
            row = [0] * (d * d)
            for i, vi in enumerate(vec):
                if not vi:
                    continue
                row[i * d + c] = add[row[i * d + c]][vi]
                for r, p in zip(u.basis, pivots):
                    coef = r[c]
                    if coef:
                        k = i * d + p
                        row[k] = add[row[k]][neg[mul[vi][coef]]]
            out.append(row)
    return out


def intersection_algebra_dims(subspaces: Sequence[Subspace]) -> list[int]:
    """dim M_k for k = 0..len(subspaces), where M_k is the algebra of all
    d x d matrices g with w g <= w for the first k subspaces."""
    if not subspaces:
        raise ValueError("need at least one subspace to fix the ambient space")
    field, d = subspaces[0].field, subspaces[0].d
    for u in subspaces:
        if u.field != field or u.d != d:
            raise ValueError("subspaces live in different spaces")
    dims = [d * d]
    rows: list = []
    for u in subspaces:
        rows.extend(_constraints(field, u))
        if rows:
            red, rank = rref_rows(field, rows)
            rows = [r for r in red[:rank]]
        else:
            rank = 0
        dims.append(d * d - rank)
    return dims


def span_dims(subspaces: Sequence[Subspace]) -> list[int]:
    """a_k = dim <w_1, ..., w_k> for k = 0..len(subspaces)."""
    out = [0]
    acc: list = []
    for u in subspaces:
        acc = list(acc) + list(u.basis)
        red, rank = rref_rows(u.field, acc)
        acc = list(red[:rank])
        out.append(rank)
    return out
