"""Closed-form bounds and the inequality suite run against computed statistics.

Inequalities with base-2 logarithms are compared exactly after
exponentiating both sides into integers (``I < 5 log n`` becomes
``2**I < n**5``).  Only genuinely mixed expressions fall back to floats,
with a tolerance of ``EPS``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import log2

from .fq import prime_power
from .projective import gaussian_binomial
from .stats import StatsReport
from .witness import BoundReport

EPS = 1e-9


def thm31_bounds(d: int, m: int, q: int) -> tuple[int, int]:
    """(lower, upper) bounds on I(PGL_d(q)) acting on m-subspaces."""
    if d < 2 or not 1 <= m <= d - 1:
        raise ValueError(f"need d >= 2 and 1 <= m <= d-1, got d={d}, m={m}")
    if prime_power(q) is None:
        raise ValueError(f"{q} is not a prime power")
    upper = (m + 1) * d - 2 * m + 1
    lower = m * d - m * m + 1 if q == 2 else (m + 1) * d - m * m
    return lower, upper


def cyclic_chain_length(f: int) -> int:
    """Longest subgroup chain in a cyclic group of order f: prime factors with multiplicity."""
    if f < 1:
        raise ValueError("f must be >= 1")
    count, p = 0, 2
    while f > 1:
        while f % p == 0:
            f //= p
            count += 1
        p += 1
    return count


@dataclass
class GroupContext:
    """Facts about the group needed by individual checks; unset fields skip them."""

    n: int
    order: int
    transitive: bool | None = None
    primitive: bool | None = None
    soluble: bool | None = None
    family: str | None = None
    d: int | None = None
    m: int | None = None
    q: int | None = None
    companion_I: int | None = None
    """I(H, PG_m) for pair actions, H the linear-group part."""
    extras: dict = field(default_factory=dict)

    @property
    def f(self) -> int | None:
        if self.q is None:
            return None
        return prime_power(self.q)[1]

    @property
    def psl_simple(self) -> bool:
        return self.d is not None and (self.d, self.q) not in ((2, 2), (2, 3))


def degree_log_checks(d: int, m: int, q: int, n: int | None = None, rep: BoundReport | None = None) -> BoundReport:
    rep = rep if rep is not None else BoundReport()
    n = gaussian_binomial(d, m, q) if n is None else n
    e = m * (d - m)
    rep.add("degree-log", "log n > m(d-m) log q", {"d": d, "m": m, "q": q}, n, q**e, n > q**e)
    if q == 2 and 2 * m == d and m >= 2:
        # log n > d^2/4 + 1/2  <=>  n^2 > 2^(d^2/2 + 1)
        rhs = 2 ** (d * d // 2 + 1)
        rep.add("degree-log-half", "log n > d^2/4 + 1/2", {"d": d, "m": m, "q": q}, n * n, rhs, n * n > rhs)
    return rep


def field_degree_checks(d: int, m: int, q: int, rep: BoundReport | None = None) -> BoundReport:
    rep = rep if rep is not None else BoundReport()
    if not 1 <= m <= d / 2:
        return rep
    f = prime_power(q)[1]
    lhs = q ** (m * (d - m))
    if m == 1:
        # (d-1) log q >= log f + 1  <=>  q^(d-1) >= 2f
        rep.add("field-degree-m1", "m(d-m) log q >= log f + 1", {"d": d, "m": m, "q": q}, lhs, 2 * f, lhs >= 2 * f)
    else:
        rhs = 16 * f**3
        rep.add("field-degree-m2", "m(d-m) log q >= 3 log f + 4", {"d": d, "m": m, "q": q}, lhs, rhs, lhs >= rhs)
    return rep


def semilinear_checks(I: int, d: int, m: int, q: int, n: int, rep: BoundReport | None = None) -> BoundReport:
    """Case table bounding I(PGammaL_d(q)) on m-subspaces, m <= d/2."""
    rep = rep if rep is not None else BoundReport()
    f = prime_power(q)[1]
    inputs = {"d": d, "m": m, "q": q, "I": I, "n": n}
    if not 1 <= m <= d / 2:
        return rep
    if m == 1 and q == 2:
        bound = 2 * (d - 1) + 1
        rep.add("semilinear-case1", "I <= 2(d-1)+1", inputs, I, bound, I <= bound)
        rep.add("semilinear-case1-n", "2(d-1)+1 <= 2 log n + 1", inputs, 4 ** (d - 1), n * n, 4 ** (d - 1) <= n * n)
    elif m == 1:
        bound = Fraction(4, 3) * (d - 1) * log2(q) + 1 + log2(f)
        rep.add("semilinear-case2", "I <= 4/3 (d-1) log q + 1 + log f", inputs, I, float(bound), I <= bound + EPS)
        rep.add("semilinear-case2-n", "(d-1) log q <= log n", inputs, q ** (d - 1), n, q ** (d - 1) <= n)
    elif 2 * m == d and q == 2:
        bound = d * d // 2 + 1
        rep.add("semilinear-case3", "I <= d^2/2 + 1", inputs, I, bound, I <= bound)
        rep.add("semilinear-case3-n", "d^2/2 + 1 <= 2 log n", inputs, 2**bound, n * n, 2**bound <= n * n)
    else:
        e = 2 * m * (d - m)
        rep.add("semilinear-case4", "I <= 2m(d-m) log q + log f", inputs, 2**I, q**e * f, 2**I <= q**e * f)
        rep.add("semilinear-case4-n", "2m(d-m) log q <= 2 log n", inputs, q**e, n * n, q**e <= n * n)
    return rep


def bound_suite(stats: StatsReport, ctx: GroupContext) -> BoundReport:
    """Evaluate every inequality applicable to the statistics and context."""
    rep = BoundReport()
    n, order = ctx.n, ctx.order
    b, B, H, I, RC = stats.b, stats.B, stats.H, stats.I, stats.RC
    g = stats.greedy_size
    base = {"n": n, "order": order}

    def have(*xs):
        return all(x is not None for x in xs)

    # b <= B <= H <= I chain
    if have(b, B):
        rep.add("chain-b<=B", "b <= B", base, b, B, b <= B)
    if have(B, H):
        rep.add("chain-B<=H", "B <= H", base, B, H, B <= H)
    if have(H, I):
        rep.add("chain-H<=I", "H <= I", base, H, I, H <= I)
    if have(b, I):
        rep.add("chain-b<=I", "b <= I", base, b, I, b <= I)
        rep.add("chain-I<=blogn", "I <= b log n", base, 2**I, n**b, 2**I <= n**b)
        rep.add("greedy-range", "b <= greedy <= I", base, g, (b, I), b <= g <= I)
    if have(RC, H):
        rep.add("chain-RC<=H+1", "RC <= H + 1", base, RC, H + 1, RC <= H + 1)

    # logarithmic bounds on primitive groups
    if ctx.primitive:
        if have(I):
            rep.add("primitive-I<5logn", "I < 5 log n", base, 2**I, n**5, 2**I < n**5)
        rep.add("primitive-greedy<5logn", "greedy < 5 log n", base, 2**g, n**5, 2**g < n**5)
        if have(B):
            rep.add("primitive-B<5logn", "B < 5 log n", base, 2**B, n**5, 2**B < n**5)
        if have(H):
            rep.add("primitive-H<5logn", "H < 5 log n", base, 2**H, n**5, 2**H < n**5)
        if have(RC):
            rep.add("primitive-RC<5logn+1", "RC < 5 log n + 1", base, 2 ** (RC - 1), n**5, 2 ** (RC - 1) < n**5)

    # general order bounds
    if have(I):
        if ctx.soluble is False:
            rep.add("insoluble-I<log|G|-1", "I < log|G| - 1", base, 2 ** (I + 1), order, 2 ** (I + 1) < order)
        if ctx.transitive and n >= 5:
            rep.add("transitive-I<=log|G|-1", "I <= log|G| - 1", base, 2 ** (I + 1), order, 2 ** (I + 1) <= order)
        if ctx.transitive and have(b):
            rep.add("transitive-I<=(b-1)logn+1", "I <= (b-1) log n + 1", base, 2 ** (I - 1), n ** (b - 1), 2 ** (I - 1) <= n ** (b - 1))

    fam = ctx.family
    d, m, q = ctx.d, ctx.m, ctx.q
    if fam in ("pgl", "pgammal", "psl") and have(d, m, q):
        params = {"d": d, "m": m, "q": q}
        if fam == "pgl" and have(I):
            lo, hi = thm31_bounds(d, m, q)
            rep.add("subspace-I-range", "lower <= I <= upper", params, I, (lo, hi), lo <= I <= hi)
        degree_log_checks(d, m, q, n, rep)
        field_degree_checks(d, m, q, rep)
        if have(I) and (fam == "pgammal" or (fam == "pgl" and ctx.f == 1)):
            semilinear_checks(I, d, m, q, n, rep)
        if have(I) and ctx.psl_simple:
            rep.add("psl-I<3logn", "I < 3 log n", base, 2**I, n**3, 2**I < n**3)
    if fam in ("pair-sum", "pair-leq") and have(I):
        if have(ctx.companion_I):
            rhs = 2 * ctx.companion_I + 1
            rep.add("pair-I<=2I(H)+1", "I <= 2 I(H, PG_m) + 1", base, I, rhs, I <= rhs)
        if ctx.psl_simple:
            # I < 5(log n - 1)  <=>  2^I * 32 < n^5
            rep.add("pair-I<5(logn-1)", "I < 5(log n - 1)", base, 2**I * 32, n**5, 2**I * 32 < n**5)
    return rep
