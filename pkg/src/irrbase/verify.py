"""Per-cell verification of the subspace-action results over a (d, m, q) grid."""

from __future__ import annotations

from .bounds import degree_log_checks, field_degree_checks, thm31_bounds
from .fq import field_of_order
from .projective import ENUMERATION_CAP, build_action, gaussian_binomial
from .witness import (BoundReport, intersection_algebra_dims, span_dims, verify_witness,
                      witness_minimal_base_check, witness_sequence)

DEFAULT_ORDER_CAP = 1_000_000
DEFAULT_DEGREE_CAP = 2_000


def algebra_checks(chain, rep: BoundReport | None = None) -> tuple[BoundReport, list[int]]:
    """Dimension facts about M_0 > M_1 > ... along the guaranteed part of a chain."""
    rep = rep if rep is not None else BoundReport()
    d, m, q = chain.d, chain.m, chain.q
    omegas = chain.subspaces(chain.claimed_length)
    dims = intersection_algebra_dims(omegas)
    a = span_dims(omegas)
    b = [a[k + 1] - a[k] for k in range(len(omegas))]
    p = {"d": d, "m": m, "q": q}
    rep.add("M0", "dim M_0 = d^2", p, dims[0], d * d, dims[0] == d * d)
    rep.add("M1", "dim M_1 = d^2 - m(d-m)", p, dims[1], d * d - m * (d - m), dims[1] == d * d - m * (d - m))
    if len(omegas) >= 2:
        delta1 = dims[1] - dims[2]
        rep.add("delta1", "delta_1 = b_1(d - b_1)", p, delta1, b[1] * (d - b[1]), delta1 == b[1] * (d - b[1]))
    for k in range(2, len(omegas)):
        delta = dims[k] - dims[k + 1]
        need = max(1, b[k] * (d - m))
        rep.add("deltak", "delta_k >= max(1, b_k(d-m))", {**p, "k": k}, delta, need, delta >= need)
    if q > 2:
        rep.add("terminal", "M_l = F_q I", p, dims[-1], 1, dims[-1] == 1)
    return rep, dims


def verify_cell(d: int, m: int, q: int, *, order_cap: int = DEFAULT_ORDER_CAP,
                degree_cap: int = DEFAULT_DEGREE_CAP) -> dict:
    """Run every closed-form and constructive check for one (d, m, q).

    The minimal-base subsequence check is reported separately and does not
    affect ``pass``: it is an unproved claim and fails in some cells.
    """
    fld = field_of_order(q)
    lo, hi = thm31_bounds(d, m, q)
    chain = witness_sequence(d, m, fld)
    n = gaussian_binomial(d, m, q)
    action = None
    if n <= min(degree_cap, ENUMERATION_CAP):
        action = build_action("pgl", d, m, fld)
    rep = verify_witness(chain, action, order_cap=order_cap)
    if action is None:
        rep.modes["chain"] = "skipped: budget"
    rep.add("chain-length", "witness length", {"d": d, "m": m, "q": q}, chain.claimed_length, lo,
            chain.claimed_length == lo)
    _, dims = algebra_checks(chain, rep)
    degree_log_checks(d, m, q, n, rep)
    field_degree_checks(d, m, q, rep)

    subseq = None
    if rep.modes.get("chain") == "ran":
        subseq = witness_minimal_base_check(chain, action).to_dict()
    return {
        "d": d, "m": m, "q": q, "n": n,
        "I_lower": lo, "I_upper": hi,
        "witness": [str(s.omega) for s in chain.steps],
        "certificates": [
            None if s.certificate is None else {"x": s.certificate[0], "y": s.certificate[1], "scalar": s.scalar}
            for s in chain.steps
        ],
        "algebra_dims": dims,
        "checks": rep.to_dict(),
        "base_subsequence": subseq if subseq is not None else "skipped: budget",
        "pass": rep.passed,
    }


def grid(d_values, m_values, q_values):
    for d in d_values:
        ms = m_values if m_values is not None else range(1, d // 2 + 1)
        for m in ms:
            if not 1 <= m <= d - 1:
                continue
            for q in q_values:
                yield d, m, q
