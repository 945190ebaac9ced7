"""Exact reference solvers and combinatorial checkers.

Everything here is the slow, trustworthy side of the package: exhaustive
search with pruning, exact weighted matching (blossom via networkx),
weighted matroid intersection by augmenting paths, and the exchange-set /
representative-set definitions turned into decision procedures.

Deterministic tie-breaking throughout: enumeration visits candidate sets
in ascending lexicographic order of their sorted id tuples, so "first
strict improvement" yields the (profit desc, lex ids asc) canonical
winner.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Iterator, Mapping, Sequence

import networkx as nx

from .errors import CapacityError, InputError
from .graphs import Graph
from .matroids import Matroid
from .model import (
    BCInstance,
    ProfitClassing,
    Solution,
    profit_classes,
    scheme_params,
)


@dataclass(frozen=True)
class OracleReport:
    ok: bool
    witness: dict | None
    stats: dict


def brute_force_opt(inst: BCInstance, max_n: int = 24) -> Solution:
    """Exact optimum by pruned exhaustive search.

    Prunes by remaining-profit bound, budget, and the hereditary property
    (supersets of an infeasible set are never visited).  Ties resolve to
    the lexicographically smallest id set.
    """
    if inst.n > max_n:
        raise CapacityError(f"brute force over {inst.n} elements (bound {max_n})")
    cached = inst._cache.get("brute_opt")
    if cached is not None:
        return cached
    fv = inst.fast()
    n = inst.n
    P, C, B = fv.P, fv.C, fv.B
    ids = fv.ids
    suffix = [0] * (n + 1)
    for i in range(n - 1, -1, -1):
        suffix[i] = suffix[i + 1] + P[i]

    best_p = 0
    best_positions: tuple[int, ...] = ()
    chosen: list[int] = []

    if fv.kind == "matching":
        vm = fv.vm

        def rec_match(start: int, used: int, p: int, c: int) -> None:
            nonlocal best_p, best_positions
            for j in range(start, n):
                if p + suffix[j] <= best_p:
                    break
                m = vm[j]
                if used & m or c + C[j] > B:
                    continue
                chosen.append(j)
                np = p + P[j]
                if np > best_p:
                    best_p = np
                    best_positions = tuple(chosen)
                rec_match(j + 1, used | m, np, c + C[j])
                chosen.pop()

        rec_match(0, 0, 0, 0)
    else:
        m1, m2 = fv.m1, fv.m2

        def rec_mi(start: int, mask: int, p: int, c: int) -> None:
            nonlocal best_p, best_positions
            for j in range(start, n):
                if p + suffix[j] <= best_p:
                    break
                if c + C[j] > B:
                    continue
                cand = mask | (1 << ids[j])
                if not (m1.independent_mask(cand) and m2.independent_mask(cand)):
                    continue
                chosen.append(j)
                np = p + P[j]
                if np > best_p:
                    best_p = np
                    best_positions = tuple(chosen)
                rec_mi(j + 1, cand, np, c + C[j])
                chosen.pop()

        rec_mi(0, 0, 0, 0)

    sol = Solution.of(inst, tuple(ids[j] for j in best_positions))
    inst._cache["brute_opt"] = sol
    return sol


def iter_solutions(
    inst: BCInstance,
    candidates: Sequence[int] | None = None,
    max_size: int | None = None,
) -> Iterator[tuple[int, ...]]:
    """Yield every feasible-and-within-budget subset of the candidate
    ids (default: all elements), in ascending lexicographic order,
    starting with ().  Hereditary pruning keeps the walk proportional to
    the number of feasible sets."""
    pool = sorted(inst.id_set if candidates is None else candidates)
    for e in pool:
        if e not in inst.id_set:
            raise InputError(f"unknown element id: {e!r}")
    limit = len(pool) if max_size is None else max_size
    cost = inst.cost
    budget = inst.budget
    constraint = inst.constraint
    chosen: list[int] = []

    def rec(start: int, mask: int, c: Fraction) -> Iterator[tuple[int, ...]]:
        yield tuple(chosen)
        if len(chosen) >= limit:
            return
        for j in range(start, len(pool)):
            e = pool[j]
            nc = c + cost[e]
            if nc > budget:
                continue
            cand = mask | (1 << e)
            if not constraint.feasible_mask(cand):
                continue
            chosen.append(e)
            yield from rec(j + 1, cand, nc)
            chosen.pop()

    return rec(0, 0, Fraction(0))


def max_weight_matching(
    graph: Graph, weights: Mapping[int, Fraction]
) -> frozenset[int]:
    """A maximum-weight matching (edge ids), exact over the rationals.

    Non-positive-weight edges never help a maximum and are dropped;
    parallel edges collapse to their (max weight, min id) representative.
    Deterministic for fixed input, but the tie-break among equally good
    matchings is the blossom implementation's own.
    """
    chosen_rep: dict[tuple[int, int], tuple[Fraction, int]] = {}
    for e in graph.edge_ids:
        w = Fraction(weights[e])
        if w <= 0:
            continue
        pair = graph.edge_ends[e]
        cur = chosen_rep.get(pair)
        if cur is None or w > cur[0]:
            chosen_rep[pair] = (w, e)
    g = nx.Graph()
    g.add_nodes_from(range(graph.num_vertices))
    for pair in sorted(chosen_rep):
        w, e = chosen_rep[pair]
        g.add_edge(pair[0], pair[1], weight=w, eid=e)
    mate = nx.max_weight_matching(g, maxcardinality=False)
    out = []
    for u, v in mate:
        if u > v:
            u, v = v, u
        out.append(chosen_rep[(u, v)][1])
    return frozenset(out)


def _bit(e: int) -> int:
    return 1 << e


def mi_extreme_chain(
    m1: Matroid, m2: Matroid, weights: Mapping[int, Fraction]
) -> list[frozenset[int]]:
    """Chain of maximum-weight common independent sets, one per size,
    grown by shortest augmenting paths in the exchange graph.

    Returns [S_0, S_1, ..., S_k] where S_i is a max-weight common
    independent set of size i and S_k is the overall maximum (growth
    stops when the best augmenting path no longer gains weight).
    Elements of non-positive weight are ignored.
    """
    if m1.ground != m2.ground:
        raise InputError("the two matroids must share a ground set")
    elems = [e for e in m1.ground_list if Fraction(weights[e]) > 0]
    w = {e: Fraction(weights[e]) for e in elems}
    smask = 0
    chain = [frozenset()]
    while True:
        step = _best_augmenting_path(m1, m2, w, elems, smask)
        if step is None:
            break
        length, _, seq = step
        if length >= 0:
            break
        for v in seq:
            smask ^= _bit(v)
        chain.append(frozenset(e for e in elems if smask & _bit(e)))
    return chain


def _best_augmenting_path(
    m1: Matroid,
    m2: Matroid,
    w: Mapping[int, Fraction],
    elems: Sequence[int],
    smask: int,
) -> tuple[Fraction, int, tuple[int, ...]] | None:
    """Minimum (total length, hop count, lexicographic node sequence)
    source→sink path in the exchange graph of the current set.

    Node length is −w outside the set, +w inside; sources are elements
    addable in the first matroid, sinks addable in the second.  The
    min-length min-hop choice is what keeps the augmented set extreme.
    """
    inside = [e for e in elems if smask & _bit(e)]
    outside = [e for e in elems if not smask & _bit(e)]
    x1 = [x for x in outside if m1.independent_mask(smask | _bit(x))]
    x2set = {x for x in outside if m2.independent_mask(smask | _bit(x))}
    if not x1 or not x2set:
        return None
    arcs: dict[int, list[int]] = {e: [] for e in elems}
    for y in inside:
        swapped = smask ^ _bit(y)
        for x in outside:
            cand = swapped | _bit(x)
            if m1.independent_mask(cand):
                arcs[y].append(x)
            if m2.independent_mask(cand):
                arcs[x].append(y)
    length = {e: (w[e] if smask & _bit(e) else -w[e]) for e in elems}

    # dp[v] = best (length, path) reaching v with exactly h arcs
    dp: dict[int, tuple[Fraction, tuple[int, ...]]] = {
        v: (length[v], (v,)) for v in sorted(x1)
    }
    best: tuple[Fraction, int, tuple[int, ...]] | None = None
    node_count = len(elems)
    for hops in range(node_count):
        for v in sorted(dp):
            if v in x2set:
                cand = (dp[v][0], hops, dp[v][1])
                if best is None or cand < best:
                    best = cand
        nxt: dict[int, tuple[Fraction, tuple[int, ...]]] = {}
        for u in sorted(dp):
            base_len, base_path = dp[u]
            for v in arcs[u]:
                if v in base_path:
                    continue
                cand = (base_len + length[v], base_path + (v,))
                cur = nxt.get(v)
                if cur is None or cand < cur:
                    nxt[v] = cand
        dp = nxt
        if not dp:
            break
    return best


def max_weight_common_independent(
    m1: Matroid,
    m2: Matroid,
    weights: Mapping[int, Fraction],
    method: str = "auto",
    max_enum: int = 20,
) -> frozenset[int]:
    """A maximum-weight common independent set of two matroids.

    method="augmenting" (the default under "auto") runs the exchange
    graph algorithm; method="enumeration" exhaustively checks all
    common independent sets (n ≤ max_enum, canonical lex tie-break) and
    exists as the independent cross-check.
    """
    if m1.ground != m2.ground:
        raise InputError("the two matroids must share a ground set")
    if method in ("auto", "augmenting"):
        return mi_extreme_chain(m1, m2, weights)[-1]
    if method != "enumeration":
        raise InputError(f"unknown method {method!r}")
    n = len(m1.ground_list)
    if n > max_enum:
        raise CapacityError(f"enumeration over {n} elements (bound {max_enum})")
    pool = [e for e in m1.ground_list if Fraction(weights[e]) > 0]
    w = {e: Fraction(weights[e]) for e in pool}
    best_w = Fraction(0)
    best: tuple[int, ...] = ()
    chosen: list[int] = []

    def rec(start: int, mask: int, acc: Fraction) -> None:
        nonlocal best_w, best
        for j in range(start, len(pool)):
            e = pool[j]
            cand = mask | _bit(e)
            if not (m1.independent_mask(cand) and m2.independent_mask(cand)):
                continue
            chosen.append(e)
            na = acc + w[e]
            if na > best_w:
                best_w = na
                best = tuple(chosen)
            rec(j + 1, cand, na)
            chosen.pop()

    rec(0, 0, Fraction(0))
    return frozenset(best)


def check_exchange_set(
    inst: BCInstance,
    eps: Fraction,
    alpha: Fraction,
    r: int,
    exchange_set: Iterable[int],
    classing: ProfitClassing | None = None,
    max_n: int = 24,
) -> OracleReport:
    """Decide whether X is an exchange set for profit class r.

    Checks the definition literally: for every constraint-feasible set
    Δ with |Δ| ≤ q_eff (budget ignored) and every a ∈ (Δ ∩ K_r) \\ X,
    some b ∈ (K_r ∩ X) \\ Δ has c(b) ≤ c(a) and Δ − a + b feasible.
    """
    if inst.n > max_n:
        raise CapacityError(f"exchange check over {inst.n} elements (bound {max_n})")
    params = scheme_params(inst, eps)
    if classing is None:
        classing = profit_classes(inst, eps, alpha)
    members = set(classing.classes.get(r, ()))
    xset = set(exchange_set)
    if not xset <= inst.id_set:
        raise InputError("exchange set contains unknown element ids")
    if not xset <= members:
        raise InputError("exchange set must be a subset of the profit class")
    q = params.q_eff
    swap_pool = sorted(xset, key=lambda b: (inst.cost[b], b))
    constraint = inst.constraint
    cost = inst.cost
    deltas = 0
    probes = 0

    ids = sorted(inst.id_set)
    chosen: list[int] = []

    def covered(delta_mask: int, delta: tuple[int, ...]) -> dict | None:
        nonlocal probes
        for a in delta:
            if a not in members or a in xset:
                continue
            ca = cost[a]
            found = False
            for b in swap_pool:
                if cost[b] > ca:
                    break
                bb = _bit(b)
                if delta_mask & bb:
                    continue
                probes += 1
                if constraint.feasible_mask((delta_mask ^ _bit(a)) | bb):
                    found = True
                    break
            if not found:
                return {"delta": list(delta), "a": a}
        return None

    witness: dict | None = None

    def rec(start: int, mask: int) -> bool:
        nonlocal deltas, witness
        deltas += 1
        bad = covered(mask, tuple(chosen))
        if bad is not None:
            witness = bad
            return False
        if len(chosen) >= q:
            return True
        for j in range(start, len(ids)):
            e = ids[j]
            cand = mask | _bit(e)
            if not constraint.feasible_mask(cand):
                continue
            chosen.append(e)
            ok = rec(j + 1, cand)
            chosen.pop()
            if not ok:
                return False
        return True

    ok = rec(0, 0)
    return OracleReport(
        ok=ok,
        witness=witness,
        stats={"deltas_checked": deltas, "swap_probes": probes, "q_eff": q},
    )


def check_representative(
    inst: BCInstance,
    eps: Fraction,
    rep: Iterable[int],
    max_n: int = 24,
) -> OracleReport:
    """Decide whether R is a representative set: some solution avoiding
    the profitable non-members (profit > ε·OPT) reaches (1−4ε)·OPT."""
    if inst.n > max_n:
        raise CapacityError(
            f"representative check over {inst.n} elements (bound {max_n})"
        )
    rset = set(rep)
    if not rset <= inst.id_set:
        raise InputError("representative set contains unknown element ids")
    opt = brute_force_opt(inst, max_n)
    eps = Fraction(eps)
    target = (1 - 4 * eps) * opt.profit
    heavy = {e.id for e in inst.elements if e.profit > eps * opt.profit}
    allowed = sorted((inst.id_set - heavy) | (rset & heavy))
    stats = {
        "opt": str(opt.profit),
        "target": str(target),
        "heavy": len(heavy),
        "allowed": len(allowed),
    }
    if target <= 0:
        return OracleReport(ok=True, witness=None, stats=stats)

    cost = inst.cost
    profit = inst.profit
    constraint = inst.constraint
    best = Fraction(0)

    def rec(start: int, mask: int, p: Fraction, c: Fraction) -> bool:
        nonlocal best
        if p >= target:
            best = max(best, p)
            return True
        for j in range(start, len(allowed)):
            e = allowed[j]
            nc = c + cost[e]
            if nc > inst.budget:
                continue
            cand = mask | _bit(e)
            if not constraint.feasible_mask(cand):
                continue
            if rec(j + 1, cand, p + profit[e], nc):
                return True
        best = max(best, p)
        return False

    ok = rec(0, 0, Fraction(0), Fraction(0))
    stats["best_found"] = str(best)
    return OracleReport(ok=ok, witness=None if ok else dict(stats), stats=stats)
