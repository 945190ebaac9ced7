import itertools
import random
from fractions import Fraction as F

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import bcopt as B
from bcopt.errors import CapacityError
from util import all_matchings, brute_max_weight, random_graph, random_matroid


def test_brute_force_opt_fig1(fig1):
    sol = B.brute_force_opt(fig1)
    assert sol.ids == (0, 2)
    assert sol.profit == F(11)
    assert sol.cost == F(2)


def test_brute_force_opt_canonical_tie_break():
    # two disjoint edges with equal profits: lexicographically smallest wins
    g = B.Graph(4, {0: (0, 1), 1: (2, 3)})
    els = [B.Element(0, F(5), F(1)), B.Element(1, F(5), F(1))]
    inst = B.BCInstance(els, B.MatchingConstraint(g), F(1))
    assert B.brute_force_opt(inst).ids == (0,)


def test_brute_force_opt_respects_size_gate(fig1):
    with pytest.raises(CapacityError):
        B.brute_force_opt(fig1, max_n=3)


def test_brute_force_opt_empty():
    inst = B.BCInstance([], B.MatchingConstraint(B.Graph(1, {})), F(0))
    sol = B.brute_force_opt(inst)
    assert sol.ids == () and sol.profit == 0


def test_iter_solutions_order(fig1):
    got = list(B.iter_solutions(fig1))
    assert got[0] == ()
    assert got == sorted(got)
    assert (0, 2) in got and (0, 1) not in got
    small = list(B.iter_solutions(fig1, candidates=[0, 2], max_size=1))
    assert small == [(), (0,), (2,)]


def test_iter_solutions_matches_brute_enumeration(corpus):
    for kind, i, inst in corpus[:8]:
        got = set(B.iter_solutions(inst))
        want = set()
        for k in range(inst.n + 1):
            for combo in itertools.combinations(inst.ids, k):
                if B.feasible(inst, combo):
                    want.add(combo)
        assert got == want


@settings(max_examples=150, deadline=None)
@given(st.integers(min_value=0, max_value=10**6))
def test_max_weight_matching_matches_enumeration(seed):
    rng = random.Random(seed)
    g = random_graph(rng, max_vertices=7, max_edges=10)
    w = {e: F(rng.randint(-3, 12)) for e in g.edge_ids}
    got = B.max_weight_matching(g, w)
    assert g.is_matching(set(got))
    assert sum((w[e] for e in got), F(0)) == brute_max_weight(all_matchings(g), w)


def test_max_weight_matching_drops_nonpositive():
    g = B.Graph(4, {0: (0, 1), 1: (2, 3)})
    got = B.max_weight_matching(g, {0: F(0), 1: F(-2)})
    assert got == frozenset()


def test_mi_extreme_chain_sizes():
    m1 = B.PartitionMatroid(range(4), [[0, 1], [2, 3]], [1, 1])
    m2 = B.PartitionMatroid(range(4), [[0, 3], [1, 2]], [1, 1])
    w = {0: F(10), 1: F(9), 2: F(8), 3: F(1)}
    chain = B.mi_extreme_chain(m1, m2, w)
    assert chain[0] == frozenset()
    assert [len(s) for s in chain] == list(range(len(chain)))
    # each level is a max-weight common independent set of its size
    common = [
        frozenset(c)
        for k in range(5)
        for c in itertools.combinations(range(4), k)
        if m1.independent_mask(sum(1 << e for e in c))
        and m2.independent_mask(sum(1 << e for e in c))
    ]
    for size, s in enumerate(chain):
        best = max(
            (sum((w[e] for e in c), F(0)) for c in common if len(c) == size),
            default=F(0),
        )
        assert sum((w[e] for e in s), F(0)) == best


@settings(max_examples=100, deadline=None)
@given(st.integers(min_value=0, max_value=10**6))
def test_common_independent_methods_agree(seed):
    rng = random.Random(seed)
    n = rng.randint(1, 8)
    ground = tuple(range(n))
    m1 = random_matroid(rng, ground)
    m2 = random_matroid(rng, ground)
    w = {e: F(rng.randint(-2, 12)) for e in ground}
    best = F(0)
    for k in range(n + 1):
        for combo in itertools.combinations(ground, k):
            mask = sum(1 << e for e in combo)
            if m1.independent_mask(mask) and m2.independent_mask(mask):
                tw = sum((w[e] for e in combo), F(0))
                best = max(best, tw)
    for method in ("auto", "augmenting", "enumeration"):
        got = B.max_weight_common_independent(m1, m2, w, method=method)
        assert sum((w[e] for e in got), F(0)) == best


def test_common_independent_enumeration_gate():
    m = B.UniformMatroid(range(21), 3)
    with pytest.raises(CapacityError):
        B.max_weight_common_independent(m, m, {e: F(1) for e in range(21)},
                                        method="enumeration")


def test_check_exchange_set_accepts_construction(fig1):
    sstar, alpha = B.two_approx(fig1)
    x = B.exset_matching(fig1, F(1, 2), alpha, 2)
    rep = B.check_exchange_set(fig1, F(1, 2), alpha, 2, x)
    assert rep.ok and rep.witness is None
    assert rep.stats["deltas_checked"] > 0


def test_check_exchange_set_rejects_with_witness(fig1):
    rep = B.check_exchange_set(fig1, F(1, 2), F(11), 2, [0])
    assert not rep.ok
    assert rep.witness == {"delta": [1, 3], "a": 1}
    rep2 = B.check_exchange_set(fig1, F(1, 2), F(11), 2, [1])
    assert not rep2.ok
    assert rep2.witness == {"delta": [0, 2], "a": 0}


def test_check_representative_fig1(fig1):
    res = B.repset(fig1, F(1, 2))
    rep = B.check_representative(fig1, F(1, 2), res.union)
    assert rep.ok
    # a representative set may not drop a uniquely profitable element
    # when the target is positive
    rep2 = B.check_representative(fig1, F(1, 8), [2, 3])
    assert not rep2.ok
    assert rep2.witness is not None


def test_check_representative_trivial_when_target_nonpositive(fig1):
    # at eps = 1/2 the (1-4eps) target is negative: anything passes
    rep = B.check_representative(fig1, F(1, 2), [])
    assert rep.ok
