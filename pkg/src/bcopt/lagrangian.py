"""Lagrangian relaxation, bisection search, and patching.

Together these realize the non-profitable-solver contract: a feasible
solution with p(S) ≥ OPT − 2·max p(e).  The exhaustive strategy meets it
trivially; the Lagrangian strategy meets it through the classic
two-solution patching, validated instance-by-instance by the test
corpus.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable

from .errors import InputError
from .graphs import connected_components_edges
from .model import BCInstance, Solution, better
from .oracles import (
    brute_force_opt,
    max_weight_common_independent,
    max_weight_matching,
    mi_extreme_chain,
)


@dataclass(frozen=True)
class LagrangianCertificate:
    """Bracketing output of the bisection.

    s_minus is feasible (cost ≤ β) and optimal for the relaxation at
    lam_hi; s_plus, when present, is infeasible and optimal at lam_lo.
    lam_lo == lam_hi means an exact breakpoint: both sets are optimal at
    that single λ.  lam and value describe the feasible side.
    """

    lam: Fraction
    lam_lo: Fraction
    lam_hi: Fraction
    s_minus: frozenset[int]
    s_plus: frozenset[int] | None
    value: Fraction
    probes: int


def relaxation_solve(
    inst: BCInstance, lam: Fraction | int
) -> tuple[frozenset[int], Fraction]:
    """Maximize p(S) − λ·c(S) over the constraint (budget ignored).

    Zero-cost elements are force-included afterwards in descending
    (profit, then id) order whenever the constraint permits; they never
    lower the objective.
    """
    lam = Fraction(lam)
    if lam < 0:
        raise InputError("lambda must be nonnegative")
    weights = {e.id: e.profit - lam * e.cost for e in inst.elements}
    c = inst.constraint
    if c.kind == "matching":
        chosen = set(max_weight_matching(c.graph, weights))
    else:
        chosen = set(max_weight_common_independent(c.m1, c.m2, weights))
    free = [e for e in inst.elements if e.cost == 0 and e.id not in chosen]
    free.sort(key=lambda e: (-e.profit, e.id))
    mask = inst.mask_of(chosen)
    for e in free:
        cand = mask | (1 << e.id)
        if c.feasible_mask(cand):
            chosen.add(e.id)
            mask = cand
    value = sum((weights[e] for e in chosen), Fraction(0))
    return frozenset(chosen), value


def lagrangian_search(inst: BCInstance, max_probes: int = 64) -> LagrangianCertificate:
    """Bisection on λ with a fixed probe budget.

    The midpoint is the intersection of the two bracket lines when that
    is informative, which snaps onto exact breakpoints; otherwise the
    plain midpoint.  Tracks the probe count across all oracle calls.
    """
    probes = 0

    def probe(lam: Fraction) -> tuple[frozenset[int], Fraction, Fraction]:
        nonlocal probes
        probes += 1
        s, value = relaxation_solve(inst, lam)
        return s, value, inst.cost_of(s)

    zero = Fraction(0)
    s0, v0, c0 = probe(zero)
    if c0 <= inst.budget:
        return LagrangianCertificate(
            lam=zero,
            lam_lo=zero,
            lam_hi=zero,
            s_minus=s0,
            s_plus=None,
            value=v0,
            probes=probes,
        )
    positive_costs = [e.cost for e in inst.elements if e.cost > 0]
    # c0 > budget ≥ 0 implies some cost is positive
    lam_cap = (sum((e.profit for e in inst.elements), Fraction(0)) + 1) / min(
        positive_costs
    )
    s_hi, _, cost_hi = probe(lam_cap)
    if cost_hi > inst.budget:
        raise AssertionError("relaxation at the lambda cap must be feasible")
    lam_lo, s_lo = zero, s0
    lam_hi = lam_cap

    def line_value(s: frozenset[int], lam: Fraction) -> Fraction:
        return inst.profit_of(s) - lam * inst.cost_of(s)

    exact: Fraction | None = None
    while probes < max_probes:
        p_lo, c_lo = inst.profit_of(s_lo), inst.cost_of(s_lo)
        p_hi, c_hi = inst.profit_of(s_hi), inst.cost_of(s_hi)
        cross = (p_lo - p_hi) / (c_lo - c_hi)
        if cross == lam_lo or cross == lam_hi:
            # bracket lines already meet at a probed λ: exact breakpoint
            exact = cross
            break
        s_mid, v_mid, cost_mid = probe(cross)
        if v_mid == line_value(s_lo, cross):
            exact = cross
            break
        if cost_mid <= inst.budget:
            lam_hi, s_hi = cross, s_mid
        else:
            lam_lo, s_lo = cross, s_mid

    if exact is not None:
        return LagrangianCertificate(
            lam=exact,
            lam_lo=exact,
            lam_hi=exact,
            s_minus=s_hi,
            s_plus=s_lo,
            value=line_value(s_hi, exact),
            probes=probes,
        )
    return LagrangianCertificate(
        lam=lam_hi,
        lam_lo=lam_lo,
        lam_hi=lam_hi,
        s_minus=s_hi,
        s_plus=s_lo,
        value=line_value(s_hi, lam_hi),
        probes=probes,
    )


def _orientations(graph, comp: list[int]) -> list[list[int]]:
    """Edge sequences tracing the component (a path or a cycle in the
    symmetric difference of two matchings: max degree 2)."""
    adj: dict[int, list[int]] = {}
    for e in comp:
        u, v = graph.edge_ends[e]
        adj.setdefault(u, []).append(e)
        adj.setdefault(v, []).append(e)
    ends = sorted(v for v, es in adj.items() if len(es) == 1)

    def walk(start_vertex: int, first_edge: int) -> list[int]:
        seq = [first_edge]
        used = {first_edge}
        u, v = graph.edge_ends[first_edge]
        at = v if u == start_vertex else u
        while True:
            nxt = [e for e in adj[at] if e not in used]
            if not nxt:
                return seq
            e = nxt[0]
            seq.append(e)
            used.add(e)
            u, v = graph.edge_ends[e]
            at = v if u == at else u

    if ends:  # path: one walk from each endpoint
        out = []
        for sv in ends:
            out.append(walk(sv, adj[sv][0]))
        return out
    # cycle: every rotation in both directions
    out = []
    for e in sorted(comp):
        u, v = graph.edge_ends[e]
        out.append(walk(u, e))
        out.append(walk(v, e))
    return out


def patch_matching(inst: BCInstance, cert: LagrangianCertificate) -> Solution:
    """Combine the two bracket matchings into the best feasible set.

    Swaps whole components of s_minus △ s_plus in ascending cost-delta
    order while the budget holds; the component that first crosses the
    budget is walked edge-by-edge (every traversal order), recording
    every prefix that is still a matching within budget.  Returns the
    best feasible set seen anywhere in the process.
    """
    if inst.constraint.kind != "matching":
        raise InputError("patch_matching requires a matching constraint")
    best = better(Solution.of(inst, ()), Solution.of(inst, cert.s_minus))
    if cert.s_plus is None:
        return Solution.of(inst, cert.s_minus)
    plus_sol = Solution.of(inst, cert.s_plus)
    if plus_sol.feasible:
        best = better(best, plus_sol)
    graph = inst.constraint.graph
    diff = sorted(cert.s_minus ^ cert.s_plus)
    comps = connected_components_edges(graph, diff)

    def delta_cost(comp: list[int]) -> Fraction:
        gain = sum((inst.cost[e] for e in comp if e in cert.s_plus), Fraction(0))
        drop = sum((inst.cost[e] for e in comp if e in cert.s_minus), Fraction(0))
        return gain - drop

    comps.sort(key=lambda comp: (delta_cost(comp), comp[0]))
    current = set(cert.s_minus)
    cur_cost = inst.cost_of(current)
    for comp in comps:
        dc = delta_cost(comp)
        if cur_cost + dc <= inst.budget:
            current ^= set(comp)
            cur_cost += dc
            best = better(best, Solution.of(inst, current))
            continue
        # first budget-crossing component: edge-by-edge prefix walk
        for seq in _orientations(graph, comp):
            state = set(current)
            for e in seq:
                state ^= {e}
                if graph.is_matching(state) and inst.cost_of(state) <= inst.budget:
                    best = better(best, Solution.of(inst, state))
        break
    assert best is not None and best.feasible
    return best


def patch_intersection(inst: BCInstance, cert: LagrangianCertificate) -> Solution:
    """Best-effort patching for matroid-intersection constraints.

    Candidates: s_minus itself; s_plus when feasible; s_minus greedily
    extended by elements of s_plus \\ s_minus in descending profit while
    common independence and the budget hold; and every budget-feasible
    set of the per-size optimal chain at the certificate's λ.  The
    contract inequality is enforced by the corpus tests, not claimed.
    """
    if inst.constraint.kind != "matroid_intersection":
        raise InputError("patch_intersection requires an intersection constraint")
    best = better(Solution.of(inst, ()), Solution.of(inst, cert.s_minus))
    if cert.s_plus is None:
        return Solution.of(inst, cert.s_minus)
    plus_sol = Solution.of(inst, cert.s_plus)
    if plus_sol.feasible:
        best = better(best, plus_sol)
    c = inst.constraint
    chosen = set(cert.s_minus)
    mask = inst.mask_of(chosen)
    cur_cost = inst.cost_of(chosen)
    extras = sorted(
        cert.s_plus - cert.s_minus, key=lambda e: (-inst.profit[e], e)
    )
    for e in extras:
        if cur_cost + inst.cost[e] > inst.budget:
            continue
        cand = mask | (1 << e)
        if c.feasible_mask(cand):
            chosen.add(e)
            mask = cand
            cur_cost += inst.cost[e]
    best = better(best, Solution.of(inst, chosen))
    weights = {e.id: e.profit - cert.lam * e.cost for e in inst.elements}
    for link in mi_extreme_chain(c.m1, c.m2, weights):
        sol = Solution.of(inst, link)
        if sol.feasible:
            best = better(best, sol)
    assert best is not None and best.feasible
    return best


def non_profitable_solve(
    inst: BCInstance,
    strategy: str = "auto",
    max_exhaustive: int = 24,
) -> Solution:
    """Solution with p(S) ≥ OPT − 2·max p(e).

    exhaustive: exact optimum (capacity-gated).  lagrangian: bisection
    plus patching.  auto: exhaustive when the instance fits the gate,
    else lagrangian.
    """
    if strategy not in ("auto", "exhaustive", "lagrangian"):
        raise InputError(f"unknown strategy {strategy!r}")
    if inst.n == 0:
        return Solution.of(inst, ())
    if strategy == "auto":
        strategy = "exhaustive" if inst.n <= max_exhaustive else "lagrangian"
    if strategy == "exhaustive":
        return brute_force_opt(inst, max_exhaustive)
    cert = lagrangian_search(inst)
    if inst.constraint.kind == "matching":
        return patch_matching(inst, cert)
    return patch_intersection(inst, cert)
