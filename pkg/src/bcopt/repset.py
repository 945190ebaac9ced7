"""The 2-approximation that seeds α and the per-class assembly of the
representative set."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import InputError
from .exchange import exset_matching, exset_matroid_intersection
from .lagrangian import non_profitable_solve
from .model import (
    BCInstance,
    ProfitClassing,
    SchemeParams,
    Solution,
    better,
    profit_classes,
    scheme_params,
)
from .oracles import brute_force_opt, iter_solutions


def two_approx(inst: BCInstance) -> tuple[Solution, Fraction]:
    """A solution S* with OPT/2 ≤ p(S*) ≤ OPT, and α = p(S*).

    Enumerates every feasible F with |F| ≤ 4; for each, the rest of the
    instance is filtered to elements no more profitable than F's
    cheapest profit and handed to the non-profitable solver.  If an
    optimal solution has ≤ 4 elements some F hits it exactly; otherwise
    F = its top-4 profits caps the filtered maximum at OPT/4 and the
    Lemma 7 loss at OPT/2.  The value is independent of ε, so the
    result is cached on the instance.
    """
    cached = inst._cache.get("two_approx")
    if cached is not None:
        return cached
    best: Solution | None = None
    for pinned in iter_solutions(inst, max_size=4):
        if pinned:
            threshold = min(inst.profit[e] for e in pinned)
            keep = [
                e.id
                for e in inst.elements
                if e.id not in pinned and e.profit <= threshold
            ]
            sub_constraint = inst.constraint.derive(pinned, keep)
            kept = set(sub_constraint.ground)
            sub = BCInstance(
                [e for e in inst.elements if e.id in kept],
                sub_constraint,
                inst.budget - inst.cost_of(pinned),
                derived=True,
            )
            tail = non_profitable_solve(sub)
            candidate = Solution.of(inst, set(pinned) | set(tail.ids))
        else:
            candidate = non_profitable_solve(inst)
            candidate = Solution.of(inst, candidate.ids)
        best = better(best, candidate)
    assert best is not None and best.feasible
    result = (best, best.profit)
    inst._cache["two_approx"] = result
    return result


@dataclass(frozen=True)
class RepSetResult:
    alpha: Fraction
    sstar: Solution
    params: SchemeParams
    classing: ProfitClassing | None
    per_class_sets: dict[int, frozenset[int]]
    union: frozenset[int]


def repset(
    inst: BCInstance,
    eps: Fraction,
    alpha_mode: str = "two-approx",
) -> RepSetResult:
    """Representative set: per nonempty profit class, the matching or
    intersection exchange set; their union is R.  α = 0 (all-zero
    profits) short-circuits to R = ∅."""
    if alpha_mode not in ("two-approx", "exact"):
        raise InputError(f"unknown alpha mode {alpha_mode!r}")
    params = scheme_params(inst, eps)
    if alpha_mode == "exact":
        sstar = brute_force_opt(inst)
    else:
        sstar, _ = two_approx(inst)
    alpha = sstar.profit
    if alpha == 0:
        return RepSetResult(
            alpha=alpha,
            sstar=sstar,
            params=params,
            classing=None,
            per_class_sets={},
            union=frozenset(),
        )
    classing = profit_classes(inst, eps, alpha)
    per_class: dict[int, frozenset[int]] = {}
    union: set[int] = set()
    for r in sorted(classing.classes):
        if inst.constraint.kind == "matching":
            xset = exset_matching(inst, eps, alpha, r, classing=classing)
        else:
            xset = exset_matroid_intersection(inst, eps, alpha, r, classing=classing)
        per_class[r] = xset
        union |= xset
    return RepSetResult(
        alpha=alpha,
        sstar=sstar,
        params=params,
        classing=classing,
        per_class_sets=per_class,
        union=frozenset(union),
    )
