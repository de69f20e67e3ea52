"""Set families over {1..m}, the interval-parity conditions and the
prefix-parity matrix.

Members are stored as int bitmasks (bit ``j-1`` stands for element ``j``);
Python ints have no width limit, so large ground sets need no special path.

Conditions on a family S_1..S_n of subsets of {1..m}:

* (I)  every interval {a..b} meets some S_i in an odd number of elements;
* (J)  as (I), with the additional requirement that a-1 and b+1 are not in
  that S_i;
* (K)  every |S_i| <= k.

The prefix matrix M' has column j equal to the parities |S_i & {1..j}| mod 2.
Under this transform (I), (J), (K) become (I'), (J'), (K').
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from typing import Iterable, Sequence


class NonzeroFirstColumn(ValueError):
    pass


def popcount(x: int) -> int:
    return bin(x).count("1")


def interval_mask(a: int, b: int) -> int:
    """Bitmask of the elements a..b (1-based, inclusive)."""
    return ((1 << (b - a + 1)) - 1) << (a - 1)


def mask_to_set(mask: int) -> tuple[int, ...]:
    out = []
    j = 1
    while mask:
        if mask & 1:
            out.append(j)
        mask >>= 1
        j += 1
    return tuple(out)


def set_to_mask(elements: Iterable[int]) -> int:
    mask = 0
    for j in elements:
        mask |= 1 << (j - 1)
    return mask


@dataclass(frozen=True)
class SetFamily:
    m: int
    masks: tuple[int, ...]

    def __post_init__(self):
        if self.m < 0:
            raise ValueError("ground set size must be non-negative")
        object.__setattr__(self, "masks", tuple(self.masks))
        full = (1 << self.m) - 1
        for mask in self.masks:
            if mask < 0 or mask & ~full:
                raise ValueError(f"member {mask_to_set(mask)} is not a subset of 1..{self.m}")

    @classmethod
    def from_sets(cls, m: int, members: Iterable[Iterable[int]]) -> SetFamily:
        masks = []
        for member in members:
            member = list(member)
            if len(set(member)) != len(member):
                raise ValueError(f"member {member} has repeated elements; use simplify_family")
            for j in member:
                if not 1 <= j <= m:
                    raise ValueError(f"element {j} outside 1..{m}")
            masks.append(set_to_mask(member))
        return cls(m, tuple(masks))

    @property
    def n(self) -> int:
        return len(self.masks)

    @property
    def members(self) -> list[tuple[int, ...]]:
        return [mask_to_set(mask) for mask in self.masks]

    def canonical(self) -> SetFamily:
        return SetFamily(self.m, tuple(sorted(self.masks)))

    def shifted(self, offset: int) -> list[tuple[int, ...]]:
        """Members with every element shifted by ``offset`` (for edge labels)."""
        return [tuple(j + offset for j in s) for s in self.members]

    def to_json(self) -> dict:
        return {"m": self.m, "members": [list(s) for s in self.members]}

    @classmethod
    def from_json(cls, data: dict) -> SetFamily:
        return cls.from_sets(int(data["m"]), data["members"])


def staircase(m: int) -> SetFamily:
    """The singleton family {1}, ..., {m}."""
    return SetFamily(m, tuple(1 << j for j in range(m)))


# -- conditions on families (direct, O(n m^2)) -------------------------------


def check_I(fam: SetFamily) -> tuple[int, int] | None:
    """First interval (a, b), in lexicographic order, violating (I); None if (I) holds."""
    for a in range(1, fam.m + 1):
        for b in range(a, fam.m + 1):
            iv = interval_mask(a, b)
            if not any(popcount(s & iv) % 2 for s in fam.masks):
                return (a, b)
    return None


def check_J(fam: SetFamily) -> tuple[int, int] | None:
    """First interval violating (J); None if (J) holds."""
    for a in range(1, fam.m + 1):
        for b in range(a, fam.m + 1):
            iv = interval_mask(a, b)
            nbrs = set_to_mask(j for j in (a - 1, b + 1) if 1 <= j <= fam.m)
            if not any(popcount(s & iv) % 2 and not s & nbrs for s in fam.masks):
                return (a, b)
    return None


def check_K(fam: SetFamily, k: int) -> int | None:
    """1-based index of the first member with more than k elements; None if (K) holds."""
    if k < 1:
        raise ValueError("k must be positive")
    for i, s in enumerate(fam.masks, start=1):
        if popcount(s) > k:
            return i
    return None


def covers_all(fam: SetFamily) -> bool:
    union = 0
    for s in fam.masks:
        union |= s
    return union == (1 << fam.m) - 1


# -- the same conditions through prefix parities (O(m^2) word operations) ----


def parity_columns(fam: SetFamily) -> list[int]:
    """Columns of M' as row bitmasks (bit i-1 for row i), columns 0..m."""
    cols = [0]
    for j in range(fam.m):
        col = cols[-1]
        for i, s in enumerate(fam.masks):
            if s >> j & 1:
                col ^= 1 << i
        cols.append(col)
    return cols


def element_columns(fam: SetFamily) -> list[int]:
    """``mem[j]`` = rows whose member contains j, for j = 0..m+1 (ends empty)."""
    mem = [0] * (fam.m + 2)
    for i, s in enumerate(fam.masks):
        for j in mask_to_set(s):
            mem[j] |= 1 << i
    return mem


def check_I_fast(fam: SetFamily) -> tuple[int, int] | None:
    cols = parity_columns(fam)
    for a in range(1, fam.m + 1):
        for b in range(a, fam.m + 1):
            if cols[a - 1] == cols[b]:
                return (a, b)
    return None


def check_J_fast(fam: SetFamily) -> tuple[int, int] | None:
    cols = parity_columns(fam)
    mem = element_columns(fam)
    for a in range(1, fam.m + 1):
        for b in range(a, fam.m + 1):
            if not (cols[a - 1] ^ cols[b]) & ~mem[a - 1] & ~mem[b + 1]:
                return (a, b)
    return None


# -- prefix matrix ------------------------------------------------------------


@dataclass(frozen=True)
class PrefixMatrix:
    """Binary n x (m+1) matrix with columns indexed 0..m."""

    n: int
    m: int
    rows: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        object.__setattr__(self, "rows", tuple(tuple(r) for r in self.rows))
        if len(self.rows) != self.n:
            raise ValueError("row count does not match n")
        for r in self.rows:
            if len(r) != self.m + 1 or any(v not in (0, 1) for v in r):
                raise ValueError("rows must be 0/1 sequences of length m+1")

    @classmethod
    def from_columns(cls, n: int, columns: Sequence[int]) -> PrefixMatrix:
        m = len(columns) - 1
        rows = tuple(tuple(c >> i & 1 for c in columns) for i in range(n))
        return cls(n, m, rows)

    @property
    def columns(self) -> list[int]:
        cols = [0] * (self.m + 1)
        for i, r in enumerate(self.rows):
            for j, v in enumerate(r):
                if v:
                    cols[j] |= 1 << i
        return cols

    def to_strings(self) -> list[str]:
        return ["".join(map(str, r)) for r in self.rows]

    @classmethod
    def from_strings(cls, rows: Sequence[str], m: int | None = None) -> PrefixMatrix:
        parsed = [tuple(int(ch) for ch in r) for r in rows]
        if m is None:
            if not parsed:
                raise ValueError("m is required for an empty matrix")
            m = len(parsed[0]) - 1
        return cls(len(parsed), m, parsed)


def to_prefix(fam: SetFamily) -> PrefixMatrix:
    rows = []
    for s in fam.masks:
        bit, row = 0, [0]
        for j in range(fam.m):
            bit ^= s >> j & 1
            row.append(bit)
        rows.append(tuple(row))
    return PrefixMatrix(fam.n, fam.m, tuple(rows))


def from_prefix(M: PrefixMatrix) -> SetFamily:
    masks = []
    for r in M.rows:
        if r[0] != 0:
            raise NonzeroFirstColumn("column 0 of a prefix matrix must be zero")
        masks.append(set_to_mask(j for j in range(1, M.m + 1) if r[j - 1] != r[j]))
    return SetFamily(M.m, tuple(masks))


def check_I_prime(M: PrefixMatrix) -> bool:
    """The m+1 columns are pairwise distinct."""
    cols = [tuple(r[j] for r in M.rows) for j in range(M.m + 1)]
    return len(set(cols)) == len(cols)


def check_J_prime(M: PrefixMatrix) -> bool:
    """For every 0 <= a < b <= m some row has M[a-1] = M[a] != M[b] = M[b+1],
    with out-of-range columns -1 and m+1 copying their neighbours."""
    cols = M.columns
    ext = [cols[0]] + cols + [cols[-1]]  # ext[j+1] is column j
    for a in range(M.m + 1):
        steady_left = ~(ext[a] ^ ext[a + 1])
        for b in range(a + 1, M.m + 1):
            if not steady_left & ~(ext[b + 1] ^ ext[b + 2]) & (ext[a + 1] ^ ext[b + 1]):
                return False
    return True


def check_J_prime_rows(M: PrefixMatrix) -> bool:
    """Entry-by-entry form of :func:`check_J_prime`, kept as a reference."""

    def entry(r, j):
        return r[min(max(j, 0), M.m)]

    for a in range(M.m + 1):
        for b in range(a + 1, M.m + 1):
            if not any(
                entry(r, a - 1) == entry(r, a) != entry(r, b) == entry(r, b + 1) for r in M.rows
            ):
                return False
    return True


def bit_changes(M: PrefixMatrix) -> list[int]:
    return [sum(r[j - 1] != r[j] for j in range(1, M.m + 1)) for r in M.rows]


def check_K_prime(M: PrefixMatrix, k: int) -> bool:
    return all(c <= k for c in bit_changes(M))


# -- squarefree reduction -----------------------------------------------------


def simplify_family(m: int, members: Iterable[Iterable[int]]) -> SetFamily:
    """Reduce multiset members to their odd-multiplicity elements and drop
    members that become empty.  No member grows, so (K) is preserved.
    """
    masks = []
    for member in members:
        counts = Counter(member)
        for j in counts:
            if not 1 <= j <= m:
                raise ValueError(f"element {j} outside 1..{m}")
        mask = set_to_mask(j for j, c in counts.items() if c % 2)
        if mask:
            masks.append(mask)
    return SetFamily(m, tuple(masks))
