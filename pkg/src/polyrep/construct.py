"""Families satisfying (J) and (K) for given (m, k), and the polygon
representations built from them."""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from . import graycode
from .combinatorics import PrefixMatrix, SetFamily, check_J_fast, check_K, from_prefix, staircase
from .geometry import BOUNDED, CANONICAL_UNBOUNDED, CLOSED, OPEN, Polygon, ProductRep
from .minimize import BudgetExceeded, lower_bound, search_columns

DEFAULT_BUDGET = 20_000
# general matrix search enumerates all 2**n columns per node
MATRIX_SEARCH_MAX_N = 8
GRAY_PREFIX_MAX_N = 12


class InvalidPolygon(ValueError):
    pass


def _columns_from_transitions(transitions) -> list[int]:
    cols = [0]
    for b in transitions:
        cols.append(cols[-1] ^ (1 << b))
    return cols


def gray_prefix(m: int, n: int, k: int) -> list[int] | None:
    """Columns of an arc of m steps along an n-bit Gray cycle in which no bit
    flips more than k times, or None.

    Any arc of a Gray cycle, shifted so it starts at zero, is again a valid
    prefix matrix: its columns are distinct and neighbours differ in one
    bit.  Arcs of the reflected code and of the catalogued long-run code are
    tried from every starting point in both directions.
    """
    N = 1 << n
    if m + 1 > N:
        return None
    codes = [graycode.reflected(n)]
    entry = graycode.catalog().get(n)
    if entry is not None:
        codes.append(entry.code)
    for code in codes:
        for trans in (code.transitions, code.transitions[::-1]):
            counts = [0] * n
            for b in trans[:m]:
                counts[b] += 1
            for start in range(N):
                if max(counts) <= k:
                    window = [trans[(start + t) % N] for t in range(m)]
                    return _columns_from_transitions(window)
                counts[trans[start]] -= 1
                counts[trans[(start + m) % N]] += 1
    return None


def gray_path(m: int, n: int, k: int, budget: int | None = DEFAULT_BUDGET) -> list[int] | None:
    """Depth-first search for an m-step path from 0 in the n-cube visiting
    distinct vertices, with every bit flipped at most k times.

    Bits are introduced in increasing order and the least-flipped bit is
    tried first.  Returns None when the space is exhausted or the budget
    runs out.
    """
    if n * k < m or m + 1 > (1 << n):
        return None
    counts = [0] * n
    visited = {0}
    path: list[int] = []
    nodes = [0]

    def rec(cur: int, used: int) -> bool:
        if len(path) == m:
            return True
        remaining = m - len(path)
        if sum(k - c for c in counts) < remaining:
            return False
        for b in sorted(range(min(used + 1, n)), key=lambda b: (counts[b], b)):
            nxt = cur ^ (1 << b)
            if counts[b] >= k or nxt in visited:
                continue
            nodes[0] += 1
            if budget is not None and nodes[0] > budget:
                return False
            counts[b] += 1
            visited.add(nxt)
            path.append(b)
            if rec(nxt, max(used, b + 1)):
                return True
            path.pop()
            visited.discard(nxt)
            counts[b] -= 1
        return False

    if rec(0, 0):
        return _columns_from_transitions(path)
    return None


def _family(n: int, cols: list[int]) -> SetFamily:
    return from_prefix(PrefixMatrix.from_columns(n, cols))


def _valid(fam: SetFamily, k: int) -> bool:
    return check_J_fast(fam) is None and check_K(fam, k) is None


@lru_cache(maxsize=None)
def _construct(m: int, k: int, budget: int) -> SetFamily:
    if m == 0:
        return SetFamily(0, ())
    best = staircase(m)
    for n in range(lower_bound(m, k), m):
        found = None
        if n <= GRAY_PREFIX_MAX_N:
            cols = gray_prefix(m, n, k)
            if cols is not None:
                found = _family(n, cols)
        if found is None:
            cols = gray_path(m, n, k, budget)
            if cols is not None:
                found = _family(n, cols)
        if found is None and n <= MATRIX_SEARCH_MAX_N:
            try:
                # each node scans 2**n columns, so wide searches get fewer nodes
                cols = search_columns(m, n, k, CLOSED, max(1, budget >> max(0, n - 6)))
            except BudgetExceeded:
                cols = None
            if cols is not None:
                found = _family(n, cols)
        if found is not None and _valid(found, k):
            best = found
            break
    if k > 1:
        # a family that works for k-1 also works for k
        smaller = _construct(m, k - 1, budget)
        if smaller.n < best.n:
            best = smaller
    return best


def construct_family(m: int, k: int, budget: int = DEFAULT_BUDGET) -> SetFamily:
    """A family over {1..m} satisfying (J) and (K) with few members.

    For n = max(ceil(m/k), ceil(log2(m+1))) upward this tries, in order, an
    arc of a Gray cycle, a budgeted search for a Gray path with at most k
    flips per bit, and a budgeted search over general prefix matrices.  The
    singleton family is the fallback at n = m.
    """
    if m < 0 or k < 1:
        raise ValueError("need m >= 0 and k >= 1")
    fam = _construct(m, k, budget)
    if not _valid(fam, k):
        raise AssertionError(f"constructed family for m={m}, k={k} fails (J)/(K)")
    return fam


def construct_representation(P: Polygon, k: int, mode: str = OPEN,
                             budget: int = DEFAULT_BUDGET) -> ProductRep:
    """Products of at most k edge forms describing P (closed) or its interior (open).

    A canonical unbounded polygon uses a (J)-family on its edges 1..m.  A
    bounded polygon uses the single factor of edge 0 plus a (J)-family on
    the remaining edges 1..m, which run consecutively.  The same family
    serves both modes.
    """
    if mode not in (OPEN, CLOSED):
        raise ValueError(f"unknown mode {mode!r}")
    if not isinstance(P, Polygon):
        raise InvalidPolygon("expected a validated Polygon")
    fam = construct_family(P.m, k, budget)
    members = [tuple(s) for s in fam.members]
    if P.kind == BOUNDED:
        members = [(0,)] + members
    elif P.kind != CANONICAL_UNBOUNDED:
        raise InvalidPolygon(f"unknown polygon kind {P.kind!r}")
    return ProductRep(tuple(members), mode)


def polygon_lower_bound(P: Polygon, k: int) -> int:
    """A lower bound on the number of products for this polygon.

    For canonical polygons this is the combinatorial bound on n(m, k); for
    bounded ones only edge coverage is used, ceil(#edges / k).
    """
    if P.kind == CANONICAL_UNBOUNDED:
        return lower_bound(P.m, k)
    return -(-len(P.edges) // k)


@dataclass(frozen=True)
class BoundsReport:
    m: int
    k: int
    lower_n: int
    achieved_n: int
    sandwich_N: tuple[int, int]
    s_ratio: Fraction  # m/k
    s_log: float  # log2(m)

    @property
    def s_mk(self) -> float:
        return max(float(self.s_ratio), self.s_log)


def theoretical_bounds(m: int, k: int, budget: int = DEFAULT_BUDGET) -> BoundsReport:
    """Lower bound, constructed size, and the bracket for the worst case over
    all m-gons: [lower(m, k), 1 + achieved(m-1, k)]."""
    if m < 1 or k < 1:
        raise ValueError("need m >= 1 and k >= 1")
    lower = lower_bound(m, k)
    achieved = construct_family(m, k, budget).n
    upper_N = 1 + construct_family(m - 1, k, budget).n
    return BoundsReport(m, k, lower, achieved, (lower, upper_N), Fraction(m, k), math.log2(m))
