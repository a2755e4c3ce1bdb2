"""Brute-force counts of broken k-diamond partitions, straight from the poset.

A k-elongated diamond is a head node, then k pairs of nodes, then a tail
node.  The head dominates both members of the first pair, every member of
a pair dominates both members of the next pair, and both members of the
last pair dominate the tail.  Diamonds are chained by identifying each
tail with the next head.

A broken k-diamond partition is two such chains: the a-side, whose first
head a_1 is free, and the b-side, whose first diamond has no head at all
(its first pair b_2, b_3 is unbounded from above).  Entries are
nonnegative integers; only finitely many are nonzero.

Node labels follow the usual indexing: on the a-side diamond j (j >= 0)
has head a_{1+j(2k+1)}, pairs (a_{h+1}, a_{h+2}), ..., and tail
a_{h+2k+1}; the b-side is the same with b_1 missing.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Iterator


@dataclass(frozen=True)
class DiamondConfig:
    """Node values a_1, a_2, ... and b_2, b_3, ...; omitted trailing entries are 0."""

    k: int
    a_values: tuple[int, ...] = ()
    b_values: tuple[int, ...] = ()

    def __post_init__(self):
        if self.k < 1:
            raise ValueError("k must be >= 1")
        object.__setattr__(self, "a_values", tuple(int(v) for v in self.a_values))
        object.__setattr__(self, "b_values", tuple(int(v) for v in self.b_values))

    @property
    def weight(self) -> int:
        return sum(self.a_values) + sum(self.b_values)


def _chain_ok(values: list[int], k: int, headless: bool) -> bool:
    """Check one side.  ``values[0]`` is the first head, ignored when ``headless``."""
    block = 2 * k + 1
    # pad so that the last nonzero entry's diamond is complete and followed by a zero head
    n_blocks = (len(values) - 1) // block + 2
    vals = values + [0] * (n_blocks * block + 1 - len(values))
    for j in range(n_blocks):
        h = j * block
        bound = None if (headless and j == 0) else vals[h]
        for i in range(k):
            x, y = vals[h + 1 + 2 * i], vals[h + 2 + 2 * i]
            if bound is not None and (x > bound or y > bound):
                return False
            bound = min(x, y)
        if vals[h + block] > bound:
            return False
    return True


def validate_config(c: DiamondConfig) -> tuple[bool, int]:
    """Return ``(valid, weight)`` for a concrete configuration."""
    if any(v < 0 for v in c.a_values + c.b_values):
        return False, c.weight
    a = list(c.a_values) or [0]
    # slot 0 stands in for the missing b_1
    b = [0] + list(c.b_values)
    ok = _chain_ok(a, c.k, headless=False) and _chain_ok(b, c.k, headless=True)
    return ok, c.weight


class _ChainCounter:
    """Memoized counts for one value of k."""

    def __init__(self, k: int):
        self.k = k
        self.pairs = lru_cache(maxsize=None)(self._pairs)
        self.chain = lru_cache(maxsize=None)(self._chain)

    def _pairs(self, bound: int, i: int, weight: int) -> dict[int, int]:
        """Fillings of pairs i..k-1 under ``bound`` plus the tail, of total weight ``weight``.

        Returns {tail value: count}; the tail itself counts toward ``weight``.
        """
        if i == self.k:
            return {weight: 1} if weight <= bound else {}
        out: dict[int, int] = {}
        for x in range(min(bound, weight) + 1):
            for y in range(min(bound, weight - x) + 1):
                for t, c in self.pairs(min(x, y), i + 1, weight - x - y).items():
                    out[t] = out.get(t, 0) + c
        return out

    def _chain(self, head: int, rest: int) -> int:
        """Chains below a head of value ``head`` whose other nodes sum to ``rest``."""
        if head == 0:
            return 1 if rest == 0 else 0
        total = 0
        for w in range(rest + 1):
            for tail, c in self.pairs(head, 0, w).items():
                # w includes the tail, which is the next head; rest - w is what lies beyond it
                total += c * self.chain(tail, rest - w)
        return total

    def a_side(self, s: int) -> int:
        return sum(self.chain(h, s - h) for h in range(s + 1))

    def b_side(self, s: int) -> int:
        if s == 0:
            return 1
        total = 0
        for w in range(s + 1):
            for tail, c in self.pairs(s, 0, w).items():
                total += c * self.chain(tail, s - w)
        return total


def count_broken_diamonds(k: int, n: int) -> int:
    """Delta_k(n): the number of broken k-diamond partitions of ``n``."""
    if k < 1:
        raise ValueError("k must be >= 1")
    if n < 0:
        return 0
    cc = _ChainCounter(k)
    return sum(cc.a_side(s) * cc.b_side(n - s) for s in range(n + 1))


def count_table(k: int, max_n: int) -> list[int]:
    """[Delta_k(0), ..., Delta_k(max_n)] sharing one memo table."""
    cc = _ChainCounter(k)
    a = [cc.a_side(s) for s in range(max_n + 1)]
    b = [cc.b_side(s) for s in range(max_n + 1)]
    return [sum(a[s] * b[n - s] for s in range(n + 1)) for n in range(max_n + 1)]


def _chains(k: int, head: int | None, total: int) -> Iterator[list[int]]:
    """Every list of node values following ``head`` that sums to ``total``.

    ``head=None`` starts a headless chain.  Lists end with a zero tail.
    """
    if head == 0 or (head is None and total == 0):
        if total == 0:
            yield []
        return

    def fill(bound, i, remaining):
        if i == k:
            for t in range(min(bound, remaining) + 1):
                yield [t], remaining - t
            return
        for x in range(min(bound, remaining) + 1):
            for y in range(min(bound, remaining - x) + 1):
                for tail, left in fill(min(x, y), i + 1, remaining - x - y):
                    yield [x, y] + tail, left

    start = total if head is None else head
    for block, left in fill(start, 0, total):
        if block[-1] == 0 and left == 0:
            yield block
            continue
        for rest in _chains(k, block[-1], left):
            yield block + rest


def _trim(values: list[int]) -> tuple[int, ...]:
    while values and values[-1] == 0:
        values = values[:-1]
    return tuple(values)


def enumerate_broken_diamonds(k: int, n: int) -> Iterator[DiamondConfig]:
    """Every broken k-diamond partition of ``n``, one configuration each."""
    for s in range(n + 1):
        b_list = list(_chains(k, None, n - s))
        for head in range(s + 1):
            for a_rest in _chains(k, head, s - head):
                for b in b_list:
                    yield DiamondConfig(k, _trim([head] + a_rest), _trim(b))
