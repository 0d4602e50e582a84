import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from irrbase.fq import field_make, field_of_order
from irrbase.permgroup import (PermGroup, alternating_group, cyclic_group, cycles, pointwise_stabilizer,
                               symmetric_group)
from irrbase.projective import build_action
from irrbase.stats import (BudgetExhausted, SearchBudget, compute_stats, greedy_base, height,
                           is_minimal_base, max_irredundant_base, max_minimal_base, min_base,
                           relational_complexity)
from oracles import Elements, brute_B, brute_b, brute_H, brute_I, literal_rc


def pgl(d, m, q):
    return build_action("pgl", d, m, field_of_order(q)).group()


S4 = symmetric_group(4)
PGL23 = pgl(2, 1, 3)
PGL32 = pgl(3, 1, 2)
DOUBLE_TRANSPOSITION = PermGroup(4, [cycles(4, [0, 1], [2, 3])])


def _stabilizer_strictly_drops(group, seq):
    orders = [pointwise_stabilizer(group, seq[:i]).order() for i in range(len(seq) + 1)]
    return all(a > b for a, b in zip(orders, orders[1:])) and orders[-1] == 1


def test_min_base_examples():
    assert min_base(S4)[0] == 3
    assert min_base(PGL32)[0] == 3
    assert min_base(PGL23)[0] == 3
    assert min_base(PermGroup(3)) == (0, ())


def test_max_irredundant_examples():
    assert max_irredundant_base(S4)[0] == 3
    assert max_irredundant_base(PGL23)[0] == 3
    length, witness = max_irredundant_base(pgl(3, 1, 3))
    assert length == 5
    assert _stabilizer_strictly_drops(pgl(3, 1, 3), list(witness))


def test_max_minimal_base_examples():
    assert max_minimal_base(S4)[0] == 3
    assert max_minimal_base(PGL23)[0] == 3
    assert max_minimal_base(DOUBLE_TRANSPOSITION)[0] == 1
    size, witness = max_minimal_base(PGL32)
    assert is_minimal_base(PGL32, witness)


def test_height_examples():
    assert height(symmetric_group(3))[0] == 2
    assert height(S4)[0] == 3
    b, B, H, I = (f(PGL32)[0] for f in (min_base, max_minimal_base, height, max_irredundant_base))
    assert b <= B <= H <= I


def test_rc_examples():
    assert relational_complexity(S4, 4).value == 2
    assert relational_complexity(PGL23, 4).value == 2
    c4 = cyclic_group(4)
    rc = relational_complexity(c4, 4).value
    assert rc == literal_rc(c4, 4)
    assert rc <= height(c4)[0] + 1


def test_rc_trivial_group_and_errors():
    assert relational_complexity(PermGroup(3)).value == 1
    with pytest.raises(ValueError):
        relational_complexity(S4, 1)


def test_rc_certificate_is_a_counterexample():
    res = relational_complexity(alternating_group(5))
    lam, sig = res.certificate
    k = res.value - 1
    assert len(lam) == len(sig)
    from itertools import combinations

    from oracles import tuple_orbit_ids
    g = alternating_group(5)
    full = tuple_orbit_ids(5, g.generators, len(lam))
    assert full[lam] != full[sig]
    part = tuple_orbit_ids(5, g.generators, k)
    for idx in combinations(range(len(lam)), k):
        assert part[tuple(lam[i] for i in idx)] == part[tuple(sig[i] for i in idx)]


def test_greedy_examples():
    assert len(greedy_base(S4)) == 3
    assert greedy_base(PermGroup(4)) == ()
    g13 = pgl(3, 1, 3)
    seq = greedy_base(g13)
    assert min_base(g13)[0] <= len(seq) <= 5
    assert 2 ** len(seq) < 13 ** 5
    assert _stabilizer_strictly_drops(g13, list(seq))


def test_budget_exhaustion_is_reported():
    with pytest.raises(BudgetExhausted):
        compute_stats(pgl(3, 1, 3), SearchBudget(node_cap=3))


def test_budget_rejects_bad_caps():
    with pytest.raises(ValueError):
        SearchBudget(node_cap=0)


def test_skipped_statistics():
    rep = compute_stats(S4, SearchBudget(enabled=frozenset({"b"})))
    assert rep.b == 3 and rep.I is None and rep.RC is None
    assert "I" in rep.skipped


ORACLE_GROUPS = [
    symmetric_group(3), S4, symmetric_group(5), alternating_group(4), alternating_group(5),
    cyclic_group(6), DOUBLE_TRANSPOSITION, PGL23, PGL32,
    PermGroup(5, [cycles(5, [0, 1, 2]), cycles(5, [3, 4])]),
    PermGroup(6, [cycles(6, [0, 1], [2, 3]), cycles(6, [0, 2], [4, 5])]),
]


@pytest.mark.parametrize("group", ORACLE_GROUPS, ids=lambda g: f"n{g.degree}-{g.order()}")
def test_against_element_oracle(group):
    E = Elements(group)
    assert min_base(group)[0] == brute_b(E)
    assert max_irredundant_base(group)[0] == brute_I(E)
    assert max_minimal_base(group)[0] == brute_B(E)
    assert height(group)[0] == brute_H(E)


@pytest.mark.parametrize("group", ORACLE_GROUPS[:9], ids=lambda g: f"n{g.degree}-{g.order()}")
def test_rc_against_literal_definition(group):
    assert relational_complexity(group, 5).value == literal_rc(group, 5)


perm_groups = st.integers(2, 6).flatmap(
    lambda n: st.lists(st.permutations(list(range(n))), min_size=1, max_size=2)
    .map(lambda gens, n=n: PermGroup(n, gens)))


@settings(max_examples=60, deadline=None)
@given(perm_groups)
def test_pruned_equals_unpruned(group):
    for f in (min_base, max_irredundant_base, max_minimal_base, height):
        assert f(group)[0] == f(group, prune=False)[0]


@settings(max_examples=40, deadline=None)
@given(perm_groups)
def test_random_groups_against_oracles(group):
    E = Elements(group)
    rep = compute_stats(group, rc_max_len=min(group.degree, 4))
    assert (rep.b, rep.I, rep.B, rep.H) == (brute_b(E), brute_I(E), brute_B(E), brute_H(E))
    assert rep.RC == literal_rc(group, min(group.degree, 4))
    assert rep.b <= rep.greedy_size <= rep.I


@pytest.mark.parametrize("group", [S4, PGL32, pgl(3, 1, 3), alternating_group(6)],
                         ids=["S4", "PGL3(2)", "PGL3(3)", "A6"])
def test_redundant_points_can_be_dropped_and_extended(group):
    rnd = random.Random(group.degree)
    for _ in range(10):
        seq = [rnd.randrange(group.degree) for _ in range(rnd.randint(1, 6))]
        kept = []
        for p in seq:
            if pointwise_stabilizer(group, kept + [p]).order() < pointwise_stabilizer(group, kept).order():
                kept.append(p)
        assert pointwise_stabilizer(group, kept).order() == pointwise_stabilizer(group, seq).order()
        current = pointwise_stabilizer(group, kept)
        while not current.is_trivial():
            p = next(x for x in range(group.degree) if any(g[x] != x for g in current.generators))
            kept.append(p)
            current = pointwise_stabilizer(group, kept)
        assert _stabilizer_strictly_drops(group, kept)
        assert len(kept) <= max_irredundant_base(group)[0]


def test_subgroup_pairs():
    # a subgroup never has larger I, and an index-2 supergroup adds at most one
    pairs = [(alternating_group(4), S4), (build_action("psl", 2, 1, field_make(3)).group(), PGL23),
             (alternating_group(5), symmetric_group(5))]
    for sub, sup in pairs:
        i_sub, i_sup = max_irredundant_base(sub)[0], max_irredundant_base(sup)[0]
        assert i_sub <= i_sup
        assert sup.order() == 2 * sub.order()
        assert i_sup <= i_sub + 1
