"""Top-level approximation scheme: enumerate profitable prefixes from
the representative set, solve each residual with the non-profitable
solver, return the best combination."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import CapacityError, InputError
from .lagrangian import non_profitable_solve
from .model import BCInstance, Solution, better, residual, _rat
from .oracles import iter_solutions
from .repset import RepSetResult, repset


@dataclass(frozen=True)
class EnumerationRecord:
    pinned: tuple[int, ...]
    tail: tuple[int, ...]
    combined: Solution
    fallback: bool


@dataclass(frozen=True)
class EptasRun:
    solution: Solution
    epsilon: Fraction
    alpha: Fraction
    rep: RepSetResult
    enumerated: int
    fallbacks: int
    records: tuple[EnumerationRecord, ...]


def eptas_run(
    inst: BCInstance,
    eps: Fraction,
    strategy: str = "auto",
    alpha_mode: str = "two-approx",
    max_exhaustive: int = 24,
    collect: bool = False,
) -> EptasRun:
    """Full scheme run with a report.

    Every solution-of-I subset F of R with |F| ≤ ⌊1/ε⌋ is enumerated
    (depth-first with hereditary and budget pruning; the winner is
    order-independent because comparison is (profit, lex)); the residual
    of each F goes to the non-profitable solver.  A capacity error from
    an exhaustive residual solve downgrades that branch to the
    Lagrangian strategy and is recorded.
    """
    rep = repset(inst, eps, alpha_mode=alpha_mode)
    eps = rep.params.epsilon
    alpha = rep.alpha
    cap = int(1 / eps)  # ⌊1/ε⌋ exact: Fraction floor division
    best = Solution.of(inst, ())
    records: list[EnumerationRecord] = []
    enumerated = 0
    fallbacks = 0
    for pinned in iter_solutions(inst, candidates=sorted(rep.union), max_size=cap):
        enumerated += 1
        sub = residual(inst, eps, alpha, pinned)
        fallback = False
        try:
            tail = non_profitable_solve(sub, strategy, max_exhaustive)
        except CapacityError:
            if strategy != "exhaustive":
                raise
            tail = non_profitable_solve(sub, "lagrangian", max_exhaustive)
            fallback = True
            fallbacks += 1
        combined = Solution.of(inst, set(pinned) | set(tail.ids))
        assert combined.feasible
        best = better(best, combined)
        if collect:
            records.append(
                EnumerationRecord(
                    pinned=tuple(pinned),
                    tail=tuple(tail.ids),
                    combined=combined,
                    fallback=fallback,
                )
            )
    assert best is not None
    return EptasRun(
        solution=best,
        epsilon=eps,
        alpha=alpha,
        rep=rep,
        enumerated=enumerated,
        fallbacks=fallbacks,
        records=tuple(records),
    )


def eptas_core(
    inst: BCInstance,
    eps: Fraction,
    strategy: str = "auto",
    alpha_mode: str = "two-approx",
    max_exhaustive: int = 24,
) -> Solution:
    """Solution with p ≥ (1−8ε)·OPT."""
    return eptas_run(
        inst, eps, strategy=strategy, alpha_mode=alpha_mode,
        max_exhaustive=max_exhaustive,
    ).solution


def approximate(
    inst: BCInstance,
    eps: Fraction,
    strategy: str = "auto",
    alpha_mode: str = "two-approx",
    max_exhaustive: int = 24,
) -> Solution:
    """Solution with p ≥ (1−ε)·OPT, by running the core scheme at ε/8."""
    eps = _rat(eps)
    if not 0 < eps < 1:
        raise InputError(f"epsilon must be in (0, 1), got {eps}")
    return eptas_run(
        inst, eps / 8, strategy=strategy, alpha_mode=alpha_mode,
        max_exhaustive=max_exhaustive,
    ).solution
