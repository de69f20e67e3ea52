"""Exact values of n(m, k) (open mode, condition I) and its closed
counterpart (condition J) for small m.

The search builds the prefix matrix column by column: column 0 is zero,
every later column is an n-bit row mask.  A brute-force enumeration over set
families is kept alongside as an independent check.
"""

from __future__ import annotations

import itertools
import json
import time
from dataclasses import dataclass
from functools import reduce
from pathlib import Path

from .combinatorics import (PrefixMatrix, SetFamily, check_I, check_I_prime, check_J, check_J_prime, check_K,
                           check_K_prime, from_prefix)
from .geometry import CLOSED, OPEN

MODES = (OPEN, CLOSED)
DEFAULT_BUDGET = 5_000_000


class BudgetExceeded(Exception):
    def __init__(self, lo: int, hi: int, nodes: int):
        super().__init__(f"search budget exceeded after {nodes} nodes; minimum lies in [{lo}, {hi}]")
        self.lo, self.hi, self.nodes = lo, hi, nodes


class TooLarge(ValueError):
    pass


def lower_bound(m: int, k: int) -> int:
    """max(ceil(m/k), ceil(log2(m+1)))."""
    if m == 0:
        return 0
    return max(-(-m // k), (m).bit_length())


@dataclass
class ExactResult:
    m: int
    k: int
    mode: str
    n_min: int
    witness: SetFamily
    nodes: int
    seconds: float


class _Budget(Exception):
    pass


def search_columns(m: int, n: int, k: int, mode: str, budget: int | None = None,
                   stats: dict | None = None) -> list[int] | None:
    """Columns 0..m of an n-row prefix matrix satisfying (I') or (J') and
    (K'), or None if none exists.  Rows are kept in non-increasing
    lexicographic order, which loses no solutions since every condition is
    invariant under row permutations.

    Raises :class:`BudgetExceeded` (with ``lo = n``) when ``stats["nodes"]``
    passes ``budget``.
    """
    if mode not in MODES:
        raise ValueError(f"unknown mode {mode!r}")
    stats = {"nodes": 0} if stats is None else stats
    stats.setdefault("nodes", 0)
    if n == 0:
        return [0] if m == 0 else None
    if (1 << n) < m + 1 or n * k < m:
        return None
    closed = mode == CLOSED
    values = range(1, 1 << n)
    cols = [0]
    mem = [0]  # mem[j]: rows whose set contains j
    used = {0}
    changes = [0] * n
    spare = [n * k]

    def closes_intervals(j: int, right: int) -> bool:
        # every interval a..j-1 needs a row with odd parity that avoids a-1 and j
        b = cols[j - 1]
        for a in range(1, j):
            if not (cols[a - 1] ^ b) & ~mem[a - 1] & ~right:
                return False
        return True

    def rec(j: int, tied: int) -> bool:
        prev = cols[-1]
        order = sorted((v for v in values if v not in used), key=lambda v: (bin(v ^ prev).count("1"), v))
        for c in order:
            diff = prev ^ c
            if tied & ~c & (c >> 1):
                continue
            bits = [i for i in range(n) if diff >> i & 1]
            if any(changes[i] >= k for i in bits) or spare[0] - len(bits) < m - j:
                continue
            if closed and j >= 2 and not closes_intervals(j, diff):
                continue
            stats["nodes"] += 1
            if budget is not None and stats["nodes"] > budget:
                raise _Budget
            for i in bits:
                changes[i] += 1
            spare[0] -= len(bits)
            cols.append(c)
            mem.append(diff)
            used.add(c)
            if j == m:
                ok = not closed or closes_intervals(m + 1, 0)
            else:
                ok = rec(j + 1, tied & ~(c ^ (c >> 1)))
            if ok:
                return True
            used.discard(c)
            mem.pop()
            cols.pop()
            spare[0] += len(bits)
            for i in bits:
                changes[i] -= 1
        return False

    try:
        found = m == 0 or rec(1, (1 << (n - 1)) - 1)
    except _Budget:
        raise BudgetExceeded(n, m, stats["nodes"]) from None
    if not found:
        return None
    # full re-check of the incremental pruning
    M = PrefixMatrix.from_columns(n, cols)
    cond = check_J_prime(M) if closed else check_I_prime(M)
    if not (cond and check_K_prime(M, k)):
        raise AssertionError(f"search produced an invalid matrix for m={m}, n={n}, k={k}, {mode}")
    return list(cols)


def exact_n(m: int, k: int, mode: str = OPEN, budget: int | None = DEFAULT_BUDGET) -> ExactResult:
    """Minimal family size for (I)&(K) (``open``) or (J)&(K) (``closed``)."""
    if m < 1 or k < 1:
        raise ValueError("need m >= 1 and k >= 1")
    t0 = time.perf_counter()
    stats = {"nodes": 0}
    n = lower_bound(m, k)
    while True:
        try:
            cols = search_columns(m, n, k, mode, budget, stats)
        except BudgetExceeded as exc:
            raise BudgetExceeded(n, m, exc.nodes) from None
        if cols is not None:
            witness = from_prefix(PrefixMatrix.from_columns(n, cols))
            return ExactResult(m, k, mode, n, witness, stats["nodes"], time.perf_counter() - t0)
        n += 1


def witness_ok(result: ExactResult) -> bool:
    """Replay the witness through the set-based checkers."""
    fam = result.witness
    cond = check_I(fam) if result.mode == OPEN else check_J(fam)
    return cond is None and check_K(fam, result.k) is None and fam.n == result.n_min


def brute_oracle(m: int, k: int, mode: str = OPEN) -> int:
    """Minimal family size by enumerating combinations of subsets.

    Shares nothing with :func:`exact_n`: it works on plain Python sets and
    enumerates families of distinct nonempty subsets of size <= k.
    """
    if m > 7:
        raise TooLarge("the brute-force oracle is limited to m <= 7")
    if m < 1 or k < 1:
        raise ValueError("need m >= 1 and k >= 1")
    ground = range(1, m + 1)
    intervals = [set(range(a, b + 1)) for a in ground for b in range(a, m + 1)]
    subsets = [set(c) for r in range(1, min(k, m) + 1) for c in itertools.combinations(ground, r)]

    def serves(S: set, iv: set) -> bool:
        if len(S & iv) % 2 == 0:
            return False
        if mode == CLOSED:
            return min(iv) - 1 not in S and max(iv) + 1 not in S
        return True

    cover = [sum(1 << t for t, iv in enumerate(intervals) if serves(S, iv)) for S in subsets]
    full = (1 << len(intervals)) - 1
    for n in range(1, m + 1):
        for combo in itertools.combinations(cover, n):
            if reduce(lambda x, y: x | y, combo) == full:
                return n
    raise AssertionError("singletons always satisfy both conditions")


# -- tables and cache ---------------------------------------------------------


def load_cache(path: str | Path) -> dict:
    p = Path(path)
    return json.loads(p.read_text()) if p.exists() else {}


def save_cache(cache: dict, path: str | Path) -> None:
    Path(path).write_text(json.dumps(cache, indent=1, sort_keys=True) + "\n")


def cache_key(m: int, k: int, mode: str) -> str:
    return f"{m},{k},{mode}"


def exact_cached(m: int, k: int, mode: str, cache: dict | None,
                 budget: int | None = DEFAULT_BUDGET) -> ExactResult:
    key = cache_key(m, k, mode)
    if cache is not None and key in cache:
        rec = cache[key]
        witness = SetFamily.from_sets(m, rec["witness"])
        return ExactResult(m, k, mode, rec["n_min"], witness, rec["nodes"], 0.0)
    res = exact_n(m, k, mode, budget)
    if cache is not None:
        cache[key] = {"n_min": res.n_min, "nodes": res.nodes, "witness": [list(s) for s in res.witness.members]}
    return res


def monotonicity_report(table: dict[tuple[int, int, str], int]) -> list[str]:
    """Describe every cell that breaks monotonicity in k (nonincreasing) or
    in m (nondecreasing).  An empty list means both hold on the table."""
    issues = []
    for (m, k, mode), v in sorted(table.items()):
        nxt = table.get((m, k + 1, mode))
        if nxt is not None and nxt > v:
            issues.append(f"{mode}: n({m},{k + 1})={nxt} > n({m},{k})={v}")
        nxt = table.get((m + 1, k, mode))
        if nxt is not None and nxt < v:
            issues.append(f"{mode}: n({m + 1},{k})={nxt} < n({m},{k})={v}")
    return issues

