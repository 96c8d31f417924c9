"""Set partitions of site indices {0..n-1} into k non-empty blocks.

Enumeration walks restricted-growth strings in lexicographic order, so
the output order is deterministic and duplicate-free.  A restricted
growth string a[0..n-1] has a[0] = 0 and a[i] <= max(a[:i]) + 1; block j
collects the positions labelled j, which automatically orders blocks by
their smallest element.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator

from .errors import NotProperSubset, OutOfRange

MAX_SITES = 14


@dataclass(frozen=True)
class Partition:
    """Blocks of a set partition, each sorted, ordered by smallest element."""

    blocks: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        blocks = tuple(tuple(int(s) for s in b) for b in self.blocks)
        object.__setattr__(self, "blocks", blocks)
        seen: set[int] = set()
        for b in blocks:
            if not b:
                raise ValueError("empty block in partition")
            if list(b) != sorted(set(b)):
                raise ValueError(f"block {b} not sorted/distinct")
            if seen & set(b):
                raise ValueError(f"block {b} overlaps another block")
            seen |= set(b)
        if seen != set(range(len(seen))):
            raise ValueError(f"blocks do not cover a contiguous site range: {blocks}")
        if blocks != tuple(sorted(blocks, key=lambda b: b[0])):
            raise ValueError("blocks not ordered by smallest element")

    @property
    def num_sites(self) -> int:
        return sum(len(b) for b in self.blocks)

    @property
    def num_blocks(self) -> int:
        return len(self.blocks)

    @classmethod
    def from_blocks(cls, blocks: Iterable[Iterable[int]]) -> "Partition":
        """Canonicalize arbitrary block order into a Partition."""
        canon = tuple(sorted((tuple(sorted(b)) for b in blocks), key=lambda b: b[0]))
        return cls(canon)

    def __str__(self) -> str:
        sep = "," if self.num_sites > 10 else ""
        return "|".join(sep.join(str(s) for s in b) for b in self.blocks)


def _rgs_blocks(labels: list[int], k: int) -> Partition:
    blocks: list[list[int]] = [[] for _ in range(k)]
    for site, lab in enumerate(labels):
        blocks[lab].append(site)
    return Partition(tuple(tuple(b) for b in blocks))


def _iter_rgs(n: int, k: int) -> Iterator[Partition]:
    labels = [0] * n

    def rec(pos: int, used: int):
        if pos == n:
            if used == k:
                yield _rgs_blocks(labels, k)
            return
        # prune: remaining positions cannot raise the label count to k
        if used + (n - pos) < k:
            return
        top = min(used, k - 1)
        for v in range(top + 1):
            labels[pos] = v
            yield from rec(pos + 1, max(used, v + 1))

    yield from rec(0, 0)


def k_partitions(n: int, k: int) -> list[Partition]:
    """All partitions of {0..n-1} into exactly k blocks.

    Returns S(n, k) partitions (Stirling numbers of the second kind) in
    lexicographic order of their restricted-growth strings.
    """
    if not isinstance(n, int) or not isinstance(k, int):
        raise OutOfRange("n and k must be integers")
    if not 1 <= k <= n:
        raise OutOfRange(f"need 1 <= k <= n, got k={k}, n={n}")
    if n > MAX_SITES:
        raise OutOfRange(f"n={n} exceeds the enumeration cap {MAX_SITES}")
    return list(_iter_rgs(n, k))


def bipartitions(n: int) -> list[Partition]:
    """All 2-block partitions of {0..n-1}; there are 2^(n-1) - 1 of them."""
    if not isinstance(n, int) or n < 2:
        raise OutOfRange(f"bipartitions need n >= 2, got {n}")
    return k_partitions(n, 2)


def complement(sites: Iterable[int], n: int) -> tuple[int, ...]:
    """Sites of {0..n-1} not in `sites`; `sites` must be a proper subset."""
    s = set(int(x) for x in sites)
    full = set(range(n))
    if not s or not s <= full:
        raise NotProperSubset(f"{sorted(s)} is not a non-empty subset of range({n})")
    rest = full - s
    if not rest:
        raise NotProperSubset(f"{sorted(s)} is the full site range; empty complement")
    return tuple(sorted(rest))
