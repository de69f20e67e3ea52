"""Cyclic Gray codes, their bit-run profiles, and a depth-first search for
codes whose shortest bit run is long.

A code of width n is stored as its 2**n columns, each an int whose bit i-1
is row i.  Column 0 is always zero.
"""

from __future__ import annotations

import json
import random
from dataclasses import dataclass
from importlib import resources
from pathlib import Path
from typing import Iterator, Sequence

from .combinatorics import PrefixMatrix

DEFAULT_BUDGET = 2_000_000
CATALOG_MAX_N = 7


class InvalidGrayCode(ValueError):
    pass


class NotFound(Exception):
    """No code reached the target.  ``exhausted`` is True only when the
    search space was fully explored, i.e. no such code exists."""

    def __init__(self, n: int, target: int, exhausted: bool, nodes: int):
        what = "no such code exists" if exhausted else "budget exceeded"
        super().__init__(f"n={n}, target={target}: {what} after {nodes} nodes")
        self.exhausted = exhausted
        self.nodes = nodes


class OutOfRange(ValueError):
    pass


class TooLong(ValueError):
    pass


@dataclass(frozen=True)
class GrayCode:
    n: int
    columns: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "columns", tuple(self.columns))

    @classmethod
    def from_transitions(cls, n: int, transitions: Sequence[int]) -> GrayCode:
        cols = [0]
        for b in transitions[:-1]:
            cols.append(cols[-1] ^ (1 << b))
        code = cls(n, tuple(cols))
        code.validate()
        if list(transitions) != code.transitions:
            raise InvalidGrayCode("transition sequence does not close the cycle")
        return code

    @property
    def transitions(self) -> list[int]:
        """Bit flipped between column j-1 and column j, for j = 1..2**n (cyclically)."""
        N = len(self.columns)
        return [(self.columns[j - 1] ^ self.columns[j % N]).bit_length() - 1 for j in range(1, N + 1)]

    def validate(self) -> None:
        N = 1 << self.n
        if len(self.columns) != N:
            raise InvalidGrayCode(f"expected {N} columns, got {len(self.columns)}")
        if self.columns[0] != 0:
            raise InvalidGrayCode("first column must be zero")
        if len(set(self.columns)) != N or any(c < 0 or c >= N for c in self.columns):
            raise InvalidGrayCode("columns must be the distinct n-bit vectors")
        for j in range(N):
            diff = self.columns[j] ^ self.columns[(j + 1) % N]
            if diff & (diff - 1) or not diff:
                raise InvalidGrayCode(f"columns {j} and {(j + 1) % N} differ in more than one bit")

    def __str__(self) -> str:
        return "\n".join(format(c, f"0{self.n}b") for c in self.columns)


def reflected(n: int) -> GrayCode:
    if n < 1:
        raise ValueError("n must be positive")
    return GrayCode(n, tuple(i ^ (i >> 1) for i in range(1 << n)))


@dataclass(frozen=True)
class RunProfile:
    runs: tuple[tuple[int, ...], ...]  # cyclic run lengths per row
    min_run: int


def run_profile(code: GrayCode) -> RunProfile:
    N = len(code.columns)
    runs = []
    for i in range(code.n):
        bits = [c >> i & 1 for c in code.columns]
        changes = [j for j in range(N) if bits[j - 1] != bits[j]]
        if not changes:
            runs.append((N,))
            continue
        lengths = [changes[t + 1] - changes[t] for t in range(len(changes) - 1)]
        lengths.append(changes[0] + N - changes[-1])
        runs.append(tuple(lengths))
    return RunProfile(tuple(runs), min(min(r) for r in runs))


def prefix_matrix(code: GrayCode, m: int) -> PrefixMatrix:
    """The first m+1 columns of the code."""
    if m < 0 or m + 1 > len(code.columns):
        raise TooLong(f"a {code.n}-bit code has only {len(code.columns)} columns")
    return PrefixMatrix.from_columns(code.n, code.columns[: m + 1])


# -- search -------------------------------------------------------------------


class _Budget(Exception):
    pass


def iter_codes(n: int, target: int = 1, budget: int | None = DEFAULT_BUDGET,
               canonical: bool = True, stats: dict | None = None,
               seed: int | None = None, order: str = "degree") -> Iterator[GrayCode]:
    """Yield every Gray code with all bit runs at least ``target`` long.

    The search extends a transition sequence one flip at a time.  A bit may
    flip only ``target`` or more steps after its previous flip, and its last
    flip must leave room for the wrap-around run back to its first flip.
    With ``canonical`` set, bits are introduced in increasing order, which
    keeps one code per row permutation.  Candidate bits are tried least
    recently flipped first, so the order is deterministic.

    ``stats["nodes"]`` counts extensions tried; ``stats["complete"]`` is set
    once the search space has been exhausted.  When the budget runs out the
    generator stops early with ``complete`` False.
    """
    if n < 1 or target < 1:
        raise ValueError("need n >= 1 and target >= 1")
    stats = {} if stats is None else stats
    stats.update(nodes=0, complete=False)
    N = 1 << n
    visited = bytearray(N)
    visited[0] = 1
    last = [None] * n
    first = [None] * n
    trans: list[int] = []
    rng = random.Random(seed) if seed is not None else None

    def allowed(b: int, s: int) -> bool:
        if last[b] is None:
            return True
        return s - last[b] >= target and first[b] + N - s >= target

    def free_degree(v: int) -> int:
        return sum(1 for i in range(n) if not visited[v ^ (1 << i)])

    def stranded(cur: int, nxt: int) -> bool:
        # the start needs a free neighbour to close the cycle through, and an
        # unvisited neighbour of the vertex just left needs two usable cycle
        # neighbours: unvisited ones, the new head, or the start
        if not free_degree(0) and nxt & (nxt - 1):
            return True
        for i in range(n):
            w = cur ^ (1 << i)
            if visited[w] or w == nxt:
                continue
            avail = free_degree(w) + (w & (w - 1) == 0) + (bin(w ^ nxt).count("1") == 1)
            if avail < 2:
                return True
        return False

    def disconnected(head: int, remaining: int) -> bool:
        # the unvisited vertices must all be reachable from the head
        seen = {head}
        stack = [head]
        reached = 0
        while stack:
            v = stack.pop()
            for i in range(n):
                w = v ^ (1 << i)
                if not visited[w] and w not in seen:
                    seen.add(w)
                    stack.append(w)
                    reached += 1
        return reached < remaining

    def rec(cur: int, used: int) -> Iterator[list[int]]:
        s = len(trans) + 1
        if s == N:
            if cur & (cur - 1) == 0:
                b = cur.bit_length() - 1
                if allowed(b, s):
                    yield trans + [b]
            return
        limit = min(used + 1, n) if canonical else n
        cands = []
        for b in range(limit):
            nxt = cur ^ (1 << b)
            if visited[nxt] or not allowed(b, s):
                continue
            recency = -1 if last[b] is None else last[b]
            tie = rng.random() if rng else 0
            if order == "degree":
                cands.append((free_degree(nxt), tie, recency, b))
            else:
                cands.append((recency, tie, free_degree(nxt), b))
        cands.sort()
        for *_, b in cands:
            nxt = cur ^ (1 << b)
            stats["nodes"] += 1
            if budget is not None and stats["nodes"] > budget:
                raise _Budget
            visited[nxt] = 1
            if s < N - 1 and (stranded(cur, nxt) or disconnected(nxt, N - 1 - s)):
                visited[nxt] = 0
                continue
            prev_last, prev_first = last[b], first[b]
            last[b] = s
            if first[b] is None:
                first[b] = s
            trans.append(b)
            yield from rec(nxt, max(used, b + 1))
            trans.pop()
            visited[nxt] = 0
            last[b], first[b] = prev_last, prev_first

    try:
        for t in rec(0, 0):
            yield GrayCode.from_transitions(n, t)
    except _Budget:
        return
    stats["complete"] = True


def search_long_run(n: int, target: int, budget: int | None = DEFAULT_BUDGET) -> GrayCode:
    """First code whose shortest bit run is >= target.

    Two cheap probes (least recently flipped first, then fewest free
    neighbours first) get a quarter of the budget each; the rest goes to a
    full degree-ordered search.  Every phase is deterministic.  Raises
    :class:`NotFound`, whose ``exhausted`` flag separates a proof of
    non-existence from a budget stop.
    """
    nodes = 0
    if budget is None:
        phases = [("degree", None)]
    else:
        share = max(1, budget // 4)
        phases = [("recency", share), ("degree", share), ("degree", budget - 2 * share)]
    for order, limit in phases:
        stats: dict = {}
        for code in iter_codes(n, target, limit, stats=stats, order=order):
            return code
        nodes += stats["nodes"]
        if stats["complete"]:
            raise NotFound(n, target, True, nodes)
    raise NotFound(n, target, False, nodes)


# -- persisted search results -------------------------------------------------


@dataclass(frozen=True)
class CatalogEntry:
    n: int
    best_min_run: int
    budget: int
    transitions: tuple[int, ...]
    optimal: bool  # the search for best_min_run + 1 completed without a hit

    @property
    def code(self) -> GrayCode:
        return GrayCode.from_transitions(self.n, self.transitions)

    def to_json(self) -> dict:
        return {"n": self.n, "best_min_run": self.best_min_run, "budget": self.budget,
                "optimal": self.optimal, "transitions": list(self.transitions)}


def build_catalog(max_n: int = CATALOG_MAX_N, budget: int = DEFAULT_BUDGET) -> list[CatalogEntry]:
    entries = []
    for n in range(1, max_n + 1):
        best, target, optimal = None, 1, False
        while True:
            try:
                code = search_long_run(n, target, budget)
            except NotFound as exc:
                optimal = exc.exhausted
                break
            best = code
            target = run_profile(code).min_run + 1
        entries.append(CatalogEntry(n, run_profile(best).min_run, budget,
                                    tuple(best.transitions), optimal))
    return entries


def save_catalog(entries: Sequence[CatalogEntry], path: str | Path) -> None:
    data = [e.to_json() for e in entries]
    Path(path).write_text(json.dumps(data, indent=1) + "\n")


def load_catalog(path: str | Path | None = None) -> dict[int, CatalogEntry]:
    if path is None:
        text = resources.files("polyrep").joinpath("data/gray_catalog.json").read_text()
    else:
        text = Path(path).read_text()
    out = {}
    for rec in json.loads(text):
        out[rec["n"]] = CatalogEntry(rec["n"], rec["best_min_run"], rec["budget"],
                                     tuple(rec["transitions"]), rec["optimal"])
    return out


_CATALOG: dict[int, CatalogEntry] | None = None


def catalog() -> dict[int, CatalogEntry]:
    global _CATALOG
    if _CATALOG is None:
        _CATALOG = load_catalog()
    return _CATALOG


def best_min_run(n: int) -> int:
    """Longest shortest-run found by the catalogued search for width n."""
    entries = catalog()
    if n not in entries:
        raise OutOfRange(f"n={n} is outside the catalogued range 1..{max(entries)}")
    return entries[n].best_min_run
