"""Core problem model: budgeted instances over a matching or
matroid-intersection constraint, scheme parameters, profit classes, and
residual instances.

All arithmetic on profits, costs, budgets and class boundaries is exact
(fractions.Fraction); nothing on the decision path touches floats.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from .errors import DegenerateAlpha, InputError
from .graphs import Graph
from .matroids import Matroid
from .matroids import restrict as matroid_restrict
from .matroids import thin as matroid_thin


def _rat(x: Fraction | int) -> Fraction:
    if isinstance(x, bool) or not isinstance(x, (int, Fraction)):
        raise InputError(f"expected an exact rational, got {x!r}")
    return Fraction(x)


@dataclass(frozen=True)
class Element:
    id: int
    profit: Fraction
    cost: Fraction


class MatchingConstraint:
    """Feasible sets are matchings of the underlying graph; the ground
    set is the graph's edge ids."""

    kind = "matching"

    def __init__(self, graph: Graph):
        self.graph = graph
        self.ground_list = graph.edge_ids
        self.ground = frozenset(self.ground_list)
        self.ground_mask = 0
        for e in self.ground_list:
            self.ground_mask |= 1 << e

    def feasible_mask(self, mask: int) -> bool:
        if mask & ~self.ground_mask:
            raise InputError("mask has bits outside the ground set")
        used = 0
        vm = self.graph._vmask
        rest = mask
        while rest:
            low = rest & -rest
            rest ^= low
            m = vm[low.bit_length() - 1]
            if used & m:
                return False
            used |= m
        return True

    def restrict(self, keep: Iterable[int]) -> "MatchingConstraint":
        return MatchingConstraint(self.graph.restrict(keep))

    def derive(self, pinned: Iterable[int], keep: Iterable[int]) -> "MatchingConstraint":
        """Constraint for a residual instance: edges sharing a vertex
        with the pinned matching disappear, then restrict to keep."""
        g = self.graph.without_vertices_of(pinned)
        kept = [e for e in keep if e in g.edge_ends]
        return MatchingConstraint(g.restrict(kept))

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, MatchingConstraint):
            return NotImplemented
        return self.graph == other.graph

    def __repr__(self) -> str:
        return f"MatchingConstraint({self.graph!r})"


class MatroidIntersectionConstraint:
    """Feasible sets are common independent sets of two matroids over
    the same ground set."""

    kind = "matroid_intersection"

    def __init__(self, m1: Matroid, m2: Matroid):
        if m1.ground != m2.ground:
            raise InputError("the two matroids must share a ground set")
        self.m1 = m1
        self.m2 = m2
        self.ground = m1.ground
        self.ground_list = m1.ground_list
        self.ground_mask = m1.ground_mask

    def feasible_mask(self, mask: int) -> bool:
        return self.m1.independent_mask(mask) and self.m2.independent_mask(mask)

    def restrict(self, keep: Iterable[int]) -> "MatroidIntersectionConstraint":
        keep = tuple(keep)
        return MatroidIntersectionConstraint(
            matroid_restrict(self.m1, keep), matroid_restrict(self.m2, keep)
        )

    def derive(
        self, pinned: Iterable[int], keep: Iterable[int]
    ) -> "MatroidIntersectionConstraint":
        pinned = tuple(pinned)
        keep = tuple(keep)
        return MatroidIntersectionConstraint(
            matroid_restrict(matroid_thin(self.m1, pinned), keep),
            matroid_restrict(matroid_thin(self.m2, pinned), keep),
        )

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, MatroidIntersectionConstraint):
            return NotImplemented
        return self.m1 == other.m1 and self.m2 == other.m2

    def __repr__(self) -> str:
        return f"MatroidIntersectionConstraint({self.m1!r}, {self.m2!r})"


Constraint = MatchingConstraint | MatroidIntersectionConstraint


class BCInstance:
    """A budgeted constrained instance (E, C, c, p, β).

    Top-level instances require element ids 0..n-1; instances derived by
    residual construction keep their parent's ids (pass derived=True).
    """

    def __init__(
        self,
        elements: Iterable[Element],
        constraint: Constraint,
        budget: Fraction | int,
        *,
        derived: bool = False,
    ):
        elems = sorted(elements, key=lambda e: e.id)
        ids = [e.id for e in elems]
        if len(set(ids)) != len(ids):
            raise InputError("duplicate element ids")
        for e in elems:
            if not isinstance(e.id, int) or e.id < 0:
                raise InputError(f"bad element id: {e.id!r}")
            if _rat(e.profit) < 0:
                raise InputError(f"element {e.id}: negative profit")
            if _rat(e.cost) < 0:
                raise InputError(f"element {e.id}: negative cost")
        if not derived and ids != list(range(len(ids))):
            raise InputError("element ids must be 0..n-1")
        if frozenset(ids) != constraint.ground:
            raise InputError("constraint ground set must equal the element ids")
        budget = _rat(budget)
        if budget < 0:
            raise InputError("budget must be nonnegative")
        self.elements: tuple[Element, ...] = tuple(
            Element(e.id, _rat(e.profit), _rat(e.cost)) for e in elems
        )
        self.constraint = constraint
        self.budget = budget
        self.ids: tuple[int, ...] = tuple(ids)
        self.id_set: frozenset[int] = frozenset(ids)
        self.profit: dict[int, Fraction] = {e.id: e.profit for e in self.elements}
        self.cost: dict[int, Fraction] = {e.id: e.cost for e in self.elements}
        self.derived = derived
        self._cache: dict = {}

    @property
    def n(self) -> int:
        return len(self.elements)

    @property
    def max_profit(self) -> Fraction:
        if not self.elements:
            return Fraction(0)
        return max(e.profit for e in self.elements)

    def profit_of(self, ids: Iterable[int]) -> Fraction:
        return sum((self.profit[e] for e in ids), Fraction(0))

    def cost_of(self, ids: Iterable[int]) -> Fraction:
        return sum((self.cost[e] for e in ids), Fraction(0))

    def mask_of(self, ids: Iterable[int]) -> int:
        m = 0
        for e in ids:
            if e not in self.id_set:
                raise InputError(f"unknown element id: {e!r}")
            m |= 1 << e
        return m

    def constraint_ok(self, ids: Iterable[int]) -> bool:
        return self.constraint.feasible_mask(self.mask_of(ids))

    def is_solution(self, ids: Iterable[int]) -> bool:
        ids = tuple(ids)
        return self.constraint_ok(ids) and self.cost_of(ids) <= self.budget

    def fast(self) -> "_FastView":
        view = self._cache.get("fast")
        if view is None:
            view = _FastView(self)
            self._cache["fast"] = view
        return view

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, BCInstance):
            return NotImplemented
        return (
            self.elements == other.elements
            and self.budget == other.budget
            and self.constraint == other.constraint
        )

    def __repr__(self) -> str:
        return (
            f"BCInstance(n={self.n}, kind={self.constraint.kind}, "
            f"budget={self.budget})"
        )


class _FastView:
    """Integer-scaled mirror of an instance for hot loops.

    Profits and costs are scaled by the lcm of their denominators (the
    budget shares the cost scale), so comparisons on the scaled integers
    agree exactly with the Fraction originals.
    """

    __slots__ = ("ids", "pos", "P", "C", "B", "sp", "sc", "kind", "vm", "m1", "m2")

    def __init__(self, inst: BCInstance):
        self.ids = inst.ids
        self.pos = {e: i for i, e in enumerate(inst.ids)}
        sp = math.lcm(*(e.profit.denominator for e in inst.elements), 1)
        sc = math.lcm(
            *(e.cost.denominator for e in inst.elements), inst.budget.denominator, 1
        )
        self.sp = sp
        self.sc = sc
        self.P = tuple(int(e.profit * sp) for e in inst.elements)
        self.C = tuple(int(e.cost * sc) for e in inst.elements)
        self.B = int(inst.budget * sc)
        self.kind = inst.constraint.kind
        if inst.constraint.kind == "matching":
            g = inst.constraint.graph
            self.vm = tuple(g._vmask[e] for e in inst.ids)
            self.m1 = self.m2 = None
        else:
            self.vm = None
            self.m1 = inst.constraint.m1
            self.m2 = inst.constraint.m2


def feasible(inst: BCInstance, ids: Iterable[int]) -> bool:
    """True iff the set is in M(C) and fits the budget."""
    return inst.is_solution(ids)


@dataclass(frozen=True)
class Solution:
    ids: tuple[int, ...]
    profit: Fraction
    cost: Fraction
    feasible: bool

    @staticmethod
    def of(inst: BCInstance, ids: Iterable[int]) -> "Solution":
        ids = tuple(sorted(set(ids)))
        return Solution(
            ids,
            inst.profit_of(ids),
            inst.cost_of(ids),
            inst.is_solution(ids),
        )

    def key(self) -> tuple:
        """Sort key for the deterministic (profit desc, lexicographically
        smallest id tuple asc) order; smaller key wins."""
        return (-self.profit, self.ids)


def better(a: Solution | None, b: Solution | None) -> Solution | None:
    if a is None:
        return b
    if b is None:
        return a
    return a if a.key() <= b.key() else b


@dataclass(frozen=True)
class SchemeParams:
    epsilon: Fraction
    q_nominal: int
    q_eff: int
    k_eff: int
    n_cap: int
    class_count: int


def _check_epsilon(eps: Fraction | int) -> Fraction:
    eps = _rat(eps)
    if not 0 < eps <= Fraction(1, 2):
        raise InputError(f"epsilon must be in (0, 1/2], got {eps}")
    return eps


def q_of(eps: Fraction) -> int:
    """⌈ε^(−1/ε)⌉ computed exactly: the least m with m^a·a^b ≥ b^b for
    ε = a/b in lowest terms."""
    a, b = eps.numerator, eps.denominator
    target = b**b
    scale = a**b

    def ok(m: int) -> bool:
        return m**a * scale >= target

    hi = 1
    while not ok(hi):
        hi *= 2
    if hi == 1:
        return 1
    lo = hi // 2  # fails ok() by construction
    while lo + 1 < hi:
        mid = (lo + hi) // 2
        if ok(mid):
            hi = mid
        else:
            lo = mid
    return hi


def class_count_of(eps: Fraction) -> int:
    """⌊log_{1−ε}(ε/2)⌋ + 1 = max{k : (1−ε)^k ≥ ε/2} + 1, exactly."""
    one_minus = 1 - eps
    threshold = eps / 2
    k = 0
    power = Fraction(1)
    while power * one_minus >= threshold:
        power *= one_minus
        k += 1
    return k + 1


def scheme_params(inst: BCInstance, eps: Fraction | int) -> SchemeParams:
    eps = _check_epsilon(eps)
    q = q_of(eps)
    q_eff = min(q, inst.n)
    k_eff = max(1, 6 * q_eff)
    if inst.constraint.kind == "matching":
        # no matching exceeds ⌊|V|/2⌋, so the cap keeps greedy maximal
        n_cap = min(3 * q_eff, inst.constraint.graph.num_vertices // 2 + 1)
    else:
        n_cap = min(3 * q_eff, inst.n)
    n_cap = max(1, n_cap)
    return SchemeParams(
        epsilon=eps,
        q_nominal=q,
        q_eff=q_eff,
        k_eff=k_eff,
        n_cap=n_cap,
        class_count=class_count_of(eps),
    )


@dataclass(frozen=True)
class ProfitClassing:
    alpha: Fraction
    epsilon: Fraction
    classes: dict[int, tuple[int, ...]]

    def class_of(self, element_id: int) -> int | None:
        for r, members in self.classes.items():
            if element_id in members:
                return r
        return None


def profit_classes(
    inst: BCInstance, eps: Fraction | int, alpha: Fraction | int
) -> ProfitClassing:
    """Partition the profitable elements into geometric profit bands:
    class r holds {e : p(e)/(2α) ∈ ((1−ε)^r, (1−ε)^{r−1}]} intersected
    with {e : p(e) > εα}."""
    eps = _check_epsilon(eps)
    alpha = _rat(alpha)
    if alpha < 0:
        raise InputError("alpha must be nonnegative")
    if alpha == 0:
        raise DegenerateAlpha("alpha = 0: profit classes undefined")
    count = class_count_of(eps)
    powers = [Fraction(1)]
    for _ in range(count):
        powers.append(powers[-1] * (1 - eps))
    cutoff = eps * alpha
    two_alpha = 2 * alpha
    classes: dict[int, list[int]] = {}
    for e in inst.elements:
        if e.profit <= cutoff:
            continue
        ratio = e.profit / two_alpha
        for r in range(1, count + 1):
            if powers[r] < ratio <= powers[r - 1]:
                classes.setdefault(r, []).append(e.id)
                break
    return ProfitClassing(
        alpha=alpha,
        epsilon=eps,
        classes={r: tuple(sorted(v)) for r, v in sorted(classes.items())},
    )


def low_profit_ids(
    inst: BCInstance, eps: Fraction | int, alpha: Fraction | int
) -> tuple[int, ...]:
    """E(α): elements with p(e) ≤ 2εα."""
    eps = _check_epsilon(eps)
    threshold = 2 * eps * _rat(alpha)
    return tuple(e.id for e in inst.elements if e.profit <= threshold)


def residual(
    inst: BCInstance,
    eps: Fraction | int,
    alpha: Fraction | int,
    pinned: Iterable[int],
) -> BCInstance:
    """Residual instance: ground E(α)\\F, constraint thinned by F,
    budget reduced by c(F).  Any solution T of the residual makes
    T ∪ F a solution of the parent."""
    pinned = tuple(sorted(set(pinned)))
    unknown = [e for e in pinned if e not in inst.id_set]
    if unknown:
        raise InputError(f"unknown element ids: {unknown}")
    if not inst.constraint_ok(pinned):
        raise InputError("pinned set violates the constraint")
    spent = inst.cost_of(pinned)
    if spent > inst.budget:
        raise InputError("pinned set exceeds the budget")
    pin_set = set(pinned)
    keep = [e for e in low_profit_ids(inst, eps, alpha) if e not in pin_set]
    sub_constraint = inst.constraint.derive(pinned, keep)
    kept_ids = set(sub_constraint.ground)
    elems = [e for e in inst.elements if e.id in kept_ids]
    return BCInstance(
        elems, sub_constraint, inst.budget - spent, derived=True
    )
