"""Matroid oracles: concrete families, combinators, greedy bases, and an
axiom checker.

Ground elements are non-negative integer ids; independence queries go
through bitmasks with bit position = element id, so masks built against a
parent matroid remain valid for its restrictions/thinnings/truncations.
All oracles memoize mask queries; dict operations are atomic under the
GIL, so shared use from threads is safe (at worst a value is computed
twice).
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from .errors import InputError
from .graphs import Graph


def _mask_of(ids: Iterable[int]) -> int:
    m = 0
    for e in ids:
        m |= 1 << e
    return m


def _ids_of(mask: int) -> tuple[int, ...]:
    out = []
    while mask:
        low = mask & -mask
        out.append(low.bit_length() - 1)
        mask ^= low
    return tuple(out)


class Matroid:
    """Base oracle: a ground set of ids plus an independence predicate.

    Subclasses implement _indep_mask; queries arriving through
    independent_mask are memoized per instance.
    """

    kind = "abstract"

    def __init__(self, ground: Iterable[int]):
        ids = sorted(set(ground))
        for e in ids:
            if not isinstance(e, int) or e < 0:
                raise InputError(f"bad element id: {e!r}")
        self.ground: frozenset[int] = frozenset(ids)
        self.ground_list: tuple[int, ...] = tuple(ids)
        self.ground_mask: int = _mask_of(ids)
        self._memo: dict[int, bool] = {0: True}

    def is_independent(self, ids: Iterable[int]) -> bool:
        mask = 0
        for e in ids:
            bit = 1 << e
            if not bit & self.ground_mask:
                raise InputError(f"element {e!r} not in ground set")
            mask |= bit
        return self.independent_mask(mask)

    def independent_mask(self, mask: int) -> bool:
        if mask & ~self.ground_mask:
            raise InputError("mask has bits outside the ground set")
        got = self._memo.get(mask)
        if got is None:
            got = self._indep_mask(mask)
            self._memo[mask] = got
        return got

    def _indep_mask(self, mask: int) -> bool:
        raise NotImplementedError

    def __repr__(self) -> str:
        return f"<{type(self).__name__} kind={self.kind} n={len(self.ground)}>"


class UniformMatroid(Matroid):
    kind = "uniform"

    def __init__(self, ground: Iterable[int], rank: int):
        super().__init__(ground)
        if not isinstance(rank, int) or rank < 0:
            raise InputError(f"bad rank: {rank!r}")
        self.rank = rank

    def _indep_mask(self, mask: int) -> bool:
        return mask.bit_count() <= self.rank

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, UniformMatroid):
            return NotImplemented
        return self.ground == other.ground and self.rank == other.rank


class PartitionMatroid(Matroid):
    """Independent = at most capacity[i] elements from block i.
    Blocks must partition the ground set exactly."""

    kind = "partition"

    def __init__(
        self,
        ground: Iterable[int],
        blocks: Sequence[Iterable[int]],
        capacities: Sequence[int],
    ):
        super().__init__(ground)
        if len(blocks) != len(capacities):
            raise InputError("blocks and capacities differ in length")
        block_masks: list[int] = []
        seen = 0
        for i, blk in enumerate(blocks):
            bm = 0
            for e in blk:
                bit = 1 << e
                if not bit & self.ground_mask:
                    raise InputError(f"block {i}: element {e} not in ground set")
                if bit & bm:
                    raise InputError(f"block {i}: duplicate element {e}")
                bm |= bit
            if bm & seen:
                raise InputError(f"block {i} overlaps an earlier block")
            seen |= bm
            cap = capacities[i]
            if not isinstance(cap, int) or cap < 0:
                raise InputError(f"bad capacity: {cap!r}")
            block_masks.append(bm)
        if seen != self.ground_mask:
            raise InputError("blocks do not cover the ground set")
        self.blocks = tuple(frozenset(_ids_of(bm)) for bm in block_masks)
        self.capacities = tuple(capacities)
        self._block_masks = tuple(block_masks)

    def _indep_mask(self, mask: int) -> bool:
        for bm, cap in zip(self._block_masks, self.capacities):
            if (mask & bm).bit_count() > cap:
                return False
        return True

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, PartitionMatroid):
            return NotImplemented
        # blocks are unordered as a family
        return self.ground == other.ground and sorted(
            (sorted(b), c) for b, c in zip(self.blocks, self.capacities)
        ) == sorted((sorted(b), c) for b, c in zip(other.blocks, other.capacities))


class GraphicMatroid(Matroid):
    """Ground = edge ids of a graph; independent = acyclic edge sets."""

    kind = "graphic"

    def __init__(self, graph: Graph):
        super().__init__(graph.edge_ids)
        self.graph = graph

    def _indep_mask(self, mask: int) -> bool:
        parent: dict[int, int] = {}

        def find(x: int) -> int:
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        ends = self.graph.edge_ends
        for e in _ids_of(mask):
            u, v = ends[e]
            for w in (u, v):
                if w not in parent:
                    parent[w] = w
            ru, rv = find(u), find(v)
            if ru == rv:
                return False
            parent[ru] = rv
        return True

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, GraphicMatroid):
            return NotImplemented
        return self.graph == other.graph


class LinearMatroid(Matroid):
    """Columns of a matrix; independent = linearly independent columns.

    field is "Q" for the rationals or an integer prime p for GF(p).
    Rational entries are kept as Fractions; elimination is exact.
    """

    kind = "linear"

    def __init__(
        self,
        columns: Mapping[int, Sequence[Fraction | int]],
        field: str | int = "Q",
    ):
        super().__init__(columns.keys())
        if field == "Q":
            self.field: str | int = "Q"
        elif isinstance(field, int) and field >= 2:
            for d in range(2, field):
                if d * d > field:
                    break
                if field % d == 0:
                    raise InputError(f"field order {field} is not prime")
            self.field = field
        else:
            raise InputError(f"bad field: {field!r}")
        dims = {len(col) for col in columns.values()}
        if len(dims) > 1:
            raise InputError("columns have mixed dimensions")
        self.dim = dims.pop() if dims else 0
        cols: dict[int, tuple] = {}
        for e, col in columns.items():
            if self.field == "Q":
                cols[e] = tuple(Fraction(x) for x in col)
            else:
                p = self.field
                vals = []
                for x in col:
                    if isinstance(x, Fraction):
                        if x.denominator != 1:
                            raise InputError("GF(p) entries must be integers")
                        x = x.numerator
                    if not isinstance(x, int):
                        raise InputError(f"bad GF({p}) entry: {x!r}")
                    vals.append(x % p)
                cols[e] = tuple(vals)
        self.columns = cols

    def _indep_mask(self, mask: int) -> bool:
        ids = _ids_of(mask)
        if len(ids) > self.dim:
            return False
        rows = [list(self.columns[e]) for e in ids]  # column vectors as rows
        if self.field == "Q":
            return _rank_q(rows) == len(ids)
        return _rank_gfp(rows, self.field) == len(ids)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, LinearMatroid):
            return NotImplemented
        return self.field == other.field and self.columns == other.columns


def _rank_q(rows: list[list[Fraction]]) -> int:
    rank = 0
    ncols = len(rows[0]) if rows else 0
    col = 0
    r = 0
    while r < len(rows) and col < ncols:
        pivot = None
        for i in range(r, len(rows)):
            if rows[i][col] != 0:
                pivot = i
                break
        if pivot is None:
            col += 1
            continue
        rows[r], rows[pivot] = rows[pivot], rows[r]
        pv = rows[r][col]
        for i in range(r + 1, len(rows)):
            f = rows[i][col] / pv
            if f:
                for j in range(col, ncols):
                    rows[i][j] -= f * rows[r][j]
        rank += 1
        r += 1
        col += 1
    return rank


def _rank_gfp(rows: list[list[int]], p: int) -> int:
    rank = 0
    ncols = len(rows[0]) if rows else 0
    col = 0
    r = 0
    while r < len(rows) and col < ncols:
        pivot = None
        for i in range(r, len(rows)):
            if rows[i][col] % p:
                pivot = i
                break
        if pivot is None:
            col += 1
            continue
        rows[r], rows[pivot] = rows[pivot], rows[r]
        inv = pow(rows[r][col], p - 2, p)
        for i in range(r + 1, len(rows)):
            f = rows[i][col] * inv % p
            if f:
                for j in range(col, ncols):
                    rows[i][j] = (rows[i][j] - f * rows[r][j]) % p
        rank += 1
        r += 1
        col += 1
    return rank


class ExplicitMatroid(Matroid):
    """Independence given by an explicit family of maximal independent
    sets (independent = subset of some listed set).  An empty family is
    normalized to {∅}.

    from_table builds an oracle from a raw list of independent sets with
    no closure applied; that mode exists to construct axiom violations
    for testing and cannot be serialized.
    """

    kind = "explicit"

    def __init__(self, ground: Iterable[int], maximal_sets: Iterable[Iterable[int]]):
        super().__init__(ground)
        masks = sorted({_mask_of(s) for s in maximal_sets})
        for m in masks:
            if m & ~self.ground_mask:
                raise InputError("maximal set leaves the ground set")
        self.maximal_masks: tuple[int, ...] | None = tuple(masks) if masks else (0,)
        self._table: frozenset[int] | None = None

    @classmethod
    def from_table(
        cls, ground: Iterable[int], independent_sets: Iterable[Iterable[int]]
    ) -> "ExplicitMatroid":
        self = cls(ground, [])
        self.maximal_masks = None
        self._table = frozenset(_mask_of(s) for s in independent_sets)
        for m in self._table:
            if m & ~self.ground_mask:
                raise InputError("independent set leaves the ground set")
        return self

    @property
    def maximal_independent_sets(self) -> tuple[frozenset[int], ...]:
        if self.maximal_masks is None:
            raise InputError("raw-table explicit matroid has no maximal-set form")
        return tuple(frozenset(_ids_of(m)) for m in self.maximal_masks)

    def _indep_mask(self, mask: int) -> bool:
        if self._table is not None:
            return mask in self._table
        assert self.maximal_masks is not None
        return any(not mask & ~mm for mm in self.maximal_masks)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, ExplicitMatroid):
            return NotImplemented
        return (
            self.ground == other.ground
            and self.maximal_masks == other.maximal_masks
            and self._table == other._table
        )


class _Restriction(Matroid):
    kind = "restriction"

    def __init__(self, parent: Matroid, keep_mask: int):
        super().__init__(_ids_of(keep_mask))
        self.parent = parent

    def _indep_mask(self, mask: int) -> bool:
        return self.parent.independent_mask(mask)


class _Thinning(Matroid):
    """Contraction by an independent set F: S independent here iff
    S ∪ F is independent in the parent."""

    kind = "thinning"

    def __init__(self, parent: Matroid, fmask: int):
        super().__init__(_ids_of(parent.ground_mask & ~fmask))
        self.parent = parent
        self.fmask = fmask

    def _indep_mask(self, mask: int) -> bool:
        return self.parent.independent_mask(mask | self.fmask)


class _Truncation(Matroid):
    kind = "truncation"

    def __init__(self, parent: Matroid, limit: int):
        super().__init__(parent.ground_list)
        self.parent = parent
        self.limit = limit

    def _indep_mask(self, mask: int) -> bool:
        return mask.bit_count() <= self.limit and self.parent.independent_mask(mask)


def restrict(matroid: Matroid, keep: Iterable[int]) -> Matroid:
    """Restriction to the elements in keep."""
    keep_mask = _mask_of(keep)
    if keep_mask & ~matroid.ground_mask:
        raise InputError("restriction set leaves the ground set")
    return _Restriction(matroid, keep_mask)


def thin(matroid: Matroid, remove: Iterable[int]) -> Matroid:
    """Contraction by an independent set (ground shrinks by it)."""
    fmask = _mask_of(remove)
    if fmask & ~matroid.ground_mask:
        raise InputError("thinning set leaves the ground set")
    if not matroid.independent_mask(fmask):
        raise InputError("thinning set must be independent")
    return _Thinning(matroid, fmask)


def truncate(matroid: Matroid, limit: int) -> Matroid:
    """Cap independent-set size at limit."""
    if not isinstance(limit, int) or limit < 0:
        raise InputError(f"bad truncation limit: {limit!r}")
    return _Truncation(matroid, limit)


def min_cost_basis(matroid: Matroid, cost: Mapping[int, Fraction]) -> frozenset[int]:
    """Greedy minimum-cost basis, scanning elements by (cost, id).

    For a valid matroid oracle this is an exact minimum-cost maximal
    independent set; ties resolve to the lexicographically smallest ids.
    """
    chosen = 0
    for e in sorted(matroid.ground_list, key=lambda x: (cost[x], x)):
        cand = chosen | (1 << e)
        if matroid.independent_mask(cand):
            chosen = cand
    return frozenset(_ids_of(chosen))


@dataclass(frozen=True)
class AxiomReport:
    ok: bool
    mode: str
    sets_checked: int
    pairs_checked: int
    witness: dict | None


def axiom_check(matroid: Matroid, samples: int = 2000, seed: int = 0) -> AxiomReport:
    """Verify the hereditary and exchange axioms.

    Exhaustive for ground sets of up to 14 elements (every independent
    set, every exchange pair up to the standard |A| = |B|+1 reduction);
    random sampling beyond that.  Never raises on a violation: the first
    counterexample is returned in the report.
    """
    n = len(matroid.ground_list)
    if n <= 14:
        return _axiom_check_exhaustive(matroid)
    return _axiom_check_sampled(matroid, samples, seed)


def _axiom_check_exhaustive(matroid: Matroid) -> AxiomReport:
    ids = matroid.ground_list
    n = len(ids)
    full = (1 << n) - 1
    bit_to_global = [1 << e for e in ids]

    gmask = [0] * (1 << n)
    for m in range(1, 1 << n):
        low = m & -m
        gmask[m] = gmask[m ^ low] | bit_to_global[low.bit_length() - 1]
    indep = [matroid.independent_mask(gmask[m]) for m in range(1 << n)]

    sets_checked = 1
    if not indep[0]:
        return AxiomReport(False, "exhaustive", 1, 0, {"axiom": "empty"})

    for m in range(1, 1 << n):
        if not indep[m]:
            continue
        sets_checked += 1
        rest = m
        while rest:
            low = rest & -rest
            rest ^= low
            if not indep[m ^ low]:
                return AxiomReport(
                    False,
                    "exhaustive",
                    sets_checked,
                    0,
                    {
                        "axiom": "hereditary",
                        "set": _globals(m, ids),
                        "subset": _globals(m ^ low, ids),
                    },
                )

    # maxind[T] = size of the largest independent subset of T, computed
    # from the raw table so it stays honest for non-matroids.
    maxind = [0] * (1 << n)
    for m in range(1, 1 << n):
        if indep[m]:
            maxind[m] = m.bit_count()
        else:
            best = 0
            rest = m
            while rest:
                low = rest & -rest
                rest ^= low
                v = maxind[m ^ low]
                if v > best:
                    best = v
            maxind[m] = best

    # B violates exchange iff some independent A with |A| = |B|+1 avoids
    # every element addable to B; equivalently the largest independent
    # subset of (ground minus addable(B)) exceeds |B|.
    pairs_checked = 0
    for b in range(1 << n):
        if not indep[b]:
            continue
        ext = 0
        rest = full & ~b
        while rest:
            low = rest & -rest
            rest ^= low
            if indep[b | low]:
                ext |= low
        pairs_checked += 1
        allowed = full & ~ext
        if maxind[allowed] > b.bit_count():
            a = _find_indep_subset(indep, allowed, b.bit_count() + 1, n)
            return AxiomReport(
                False,
                "exhaustive",
                sets_checked,
                pairs_checked,
                {
                    "axiom": "exchange",
                    "A": _globals(a, ids),
                    "B": _globals(b, ids),
                },
            )
    return AxiomReport(True, "exhaustive", sets_checked, pairs_checked, None)


def _find_indep_subset(indep: list[bool], allowed: int, size: int, n: int) -> int:
    for m in range(1 << n):
        if m.bit_count() == size and not m & ~allowed and indep[m]:
            return m
    raise AssertionError("witness promised by maxind but not found")


def _globals(local_mask: int, ids: tuple[int, ...]) -> list[int]:
    return [ids[b] for b in range(local_mask.bit_length()) if local_mask >> b & 1]


def _axiom_check_sampled(matroid: Matroid, samples: int, seed: int) -> AxiomReport:
    rng = random.Random(seed)
    ids = list(matroid.ground_list)
    if not matroid.independent_mask(0):
        return AxiomReport(False, "sampled", 1, 0, {"axiom": "empty"})

    def random_independent() -> int:
        rng.shuffle(ids)
        mask = 0
        for e in ids:
            cand = mask | (1 << e)
            if matroid.independent_mask(cand):
                mask = cand
            if rng.random() < 0.25:
                break
        return mask

    sets_checked = 1
    pairs_checked = 0
    for _ in range(samples):
        a = random_independent()
        b = random_independent()
        for m in (a, b):
            sets_checked += 1
            rest = m
            while rest:
                low = rest & -rest
                rest ^= low
                if not matroid.independent_mask(m ^ low):
                    return AxiomReport(
                        False,
                        "sampled",
                        sets_checked,
                        pairs_checked,
                        {
                            "axiom": "hereditary",
                            "set": _ids_of(m),
                            "subset": _ids_of(m ^ low),
                        },
                    )
        if a.bit_count() == b.bit_count():
            continue
        if a.bit_count() < b.bit_count():
            a, b = b, a
        pairs_checked += 1
        rest = a & ~b
        found = False
        while rest:
            low = rest & -rest
            rest ^= low
            if matroid.independent_mask(b | low):
                found = True
                break
        if not found:
            return AxiomReport(
                False,
                "sampled",
                sets_checked,
                pairs_checked,
                {"axiom": "exchange", "A": _ids_of(a), "B": _ids_of(b)},
            )
    return AxiomReport(True, "sampled", sets_checked, pairs_checked, None)
