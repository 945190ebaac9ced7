"""Shared brute-force helpers; deliberately independent of the library's
own search code so they can serve as oracles for it."""

import itertools
import random
from fractions import Fraction

import bcopt as B


def all_independent_sets(matroid):
    ids = matroid.ground_list
    out = []
    for k in range(len(ids) + 1):
        for combo in itertools.combinations(ids, k):
            mask = 0
            for e in combo:
                mask |= 1 << e
            if matroid.independent_mask(mask):
                out.append(frozenset(combo))
    return out


def explicit_copy(matroid):
    """Tabulate any small matroid into an ExplicitMatroid."""
    indep = set(all_independent_sets(matroid))
    maximal = [
        sorted(a)
        for a in indep
        if not any(e not in a and a | {e} in indep for e in matroid.ground_list)
    ]
    return B.ExplicitMatroid(matroid.ground_list, maximal)


def all_matchings(graph):
    ids = sorted(graph.edge_ids)
    for k in range(len(ids) + 1):
        for combo in itertools.combinations(ids, k):
            if graph.is_matching(set(combo)):
                yield frozenset(combo)


def brute_max_weight(sets, weights):
    best = Fraction(0)
    for s in sets:
        w = sum((weights[e] for e in s), Fraction(0))
        if w > best:
            best = w
    return best


def random_graph(rng: random.Random, max_vertices: int = 10, max_edges: int = 12):
    nv = rng.randint(2, max_vertices)
    m = rng.randint(0, max_edges)
    ends = {}
    for e in range(m):
        u = rng.randrange(nv)
        v = rng.randrange(nv)
        while v == u:
            v = rng.randrange(nv)
        ends[e] = (u, v)
    return B.Graph(nv, ends)


def random_matroid(rng: random.Random, ground):
    n = len(ground)
    kind = rng.choice(["uniform", "partition", "graphic", "linear"])
    if kind == "uniform":
        return B.UniformMatroid(ground, rng.randint(0, n))
    if kind == "partition":
        bc = rng.randint(1, max(1, n // 2))
        assign = [rng.randrange(bc) for _ in ground]
        blocks, caps = [], []
        for b in range(bc):
            members = [e for e, a in zip(ground, assign) if a == b]
            if members:
                blocks.append(members)
                caps.append(rng.randint(1, 2))
        return B.PartitionMatroid(ground, blocks, caps)
    if kind == "graphic":
        v = rng.randint(2, 5)
        ends = {}
        for e in ground:
            u = rng.randrange(v)
            w = rng.randrange(v)
            while w == u:
                w = rng.randrange(v)
            ends[e] = (u, w)
        return B.GraphicMatroid(B.Graph(v, ends))
    dim = rng.randint(1, 4)
    cols = {e: [rng.randint(0, 1) for _ in range(dim)] for e in ground}
    return B.LinearMatroid(cols, 2)


def opt_profit(inst) -> Fraction:
    return B.brute_force_opt(inst).profit
