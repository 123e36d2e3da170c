"""Brute-force enumeration and pattern containment.

Containment uses strict inequalities throughout: an occurrence of a pattern
of length m is m positions, left to right, carrying pairwise distinct values
in the same relative order as the pattern. Repeated values never witness a
pattern.

Counting walks the words in lexicographic order and abandons a prefix as
soon as it contains the pattern; every avoider is still visited one by one.
"""

from __future__ import annotations

import bisect
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations, permutations
from math import factorial, prod
from typing import Iterator, List, Optional, Sequence, Tuple

from patavoid.core import (
    CompositionQuery,
    DomainError,
    Pattern,
    PatternLike,
    Word,
    as_pattern,
    as_spec,
)

S3: Tuple[Pattern, ...] = tuple(Pattern(p) for p in permutations((1, 2, 3)))


@dataclass(frozen=True)
class AvoidanceCount:
    """An exact count together with the size of the space it was drawn from."""

    value: int
    total: int

    def __post_init__(self):
        if not 0 <= self.value <= self.total:
            raise ValueError(f"count {self.value} outside [0, {self.total}]")

    def __int__(self):
        return self.value

    def __index__(self):
        return self.value

    def __eq__(self, other):
        if isinstance(other, AvoidanceCount):
            return self.value == other.value and self.total == other.total
        if isinstance(other, int):
            return self.value == other
        return NotImplemented

    def __hash__(self):
        return hash(self.value)


def default_jobs() -> int:
    try:
        return max(1, int(os.environ.get("PATAVOID_JOBS", "1")))
    except ValueError:
        return 1


# -- symmetries ---------------------------------------------------------------


def reverse_word(w: Sequence[int]) -> Word:
    return tuple(reversed(w))


def complement_word(w: Sequence[int], k: int) -> Word:
    """Map letter ``i`` to ``k + 1 - i``; all letters must lie in 1..k."""
    if any(not 1 <= x <= k for x in w):
        raise DomainError(f"complement needs letters in 1..{k}")
    return tuple(k + 1 - x for x in w)


def reverse_pattern(p: PatternLike) -> Pattern:
    return Pattern(reverse_word(as_pattern(p).perm))


def complement_pattern(p: PatternLike) -> Pattern:
    p = as_pattern(p)
    return Pattern(complement_word(p.perm, p.m))


# -- containment ----------------------------------------------------------------


def _standardize(values: Sequence[int]) -> Tuple[int, ...]:
    ranks = {v: r for r, v in enumerate(sorted(values), start=1)}
    return tuple(ranks[v] for v in values)


def contains_naive(w: Sequence[int], p: PatternLike) -> bool:
    """Reference check over all position subsets; O(L^m)."""
    perm = as_pattern(p).perm
    m = len(perm)
    for idx in combinations(range(len(w)), m):
        vals = [w[i] for i in idx]
        if len(set(vals)) == m and _standardize(vals) == perm:
            return True
    return False


def _longest_increasing(w: Sequence[int]) -> int:
    # patience sorting, strict
    tails: List[int] = []
    for x in w:
        pos = bisect.bisect_left(tails, x)
        if pos == len(tails):
            tails.append(x)
        else:
            tails[pos] = x
    return len(tails)


def _contains3(w: Sequence[int], perm: Tuple[int, ...]) -> bool:
    n = len(w)
    if n < 3:
        return False
    if perm == (1, 2, 3) or perm == (3, 2, 1):
        sign = 1 if perm == (1, 2, 3) else -1
        # middle element with a smaller (larger) value on the left and a
        # larger (smaller) one on the right
        best = sign * w[0]
        left_ok = [False] * n
        for j in range(1, n):
            left_ok[j] = best < sign * w[j]
            best = min(best, sign * w[j])
        best = sign * w[-1]
        for j in range(n - 2, 0, -1):
            if left_ok[j] and best > sign * w[j]:
                return True
            best = max(best, sign * w[j])
        return False
    a, b, c = perm
    # Fix the middle position j. The outer element on the side where it must
    # be the most extreme is summarized by a running extremum; the other side
    # is scanned.
    if (a, b, c) in ((1, 3, 2), (3, 1, 2)):
        # left value a is an extremum relative to both others
        lo_side = a == 1
        for j in range(1, n - 1):
            left = w[:j]
            ext = min(left) if lo_side else max(left)
            mid = w[j]
            if lo_side:
                if ext < mid and any(ext < x < mid for x in w[j + 1 :]):
                    return True
            elif ext > mid and any(mid < x < ext for x in w[j + 1 :]):
                return True
        return False
    # (2,1,3), (2,3,1): right value is the extremum
    hi_side = c == 3
    for j in range(1, n - 1):
        right = w[j + 1 :]
        ext = max(right) if hi_side else min(right)
        mid = w[j]
        if hi_side:
            if ext > mid and any(mid < x < ext for x in w[:j]):
                return True
        elif ext < mid and any(ext < x < mid for x in w[:j]):
            return True
    return False


def contains(w: Sequence[int], p: PatternLike) -> bool:
    """True iff ``w`` contains ``p`` (strict inequalities)."""
    perm = as_pattern(p).perm
    m = len(perm)
    if m > len(w):
        return False
    if perm == tuple(range(1, m + 1)):
        return _longest_increasing(w) >= m
    if perm == tuple(range(m, 0, -1)):
        return _longest_increasing([-x for x in w]) >= m
    if m == 3:
        return _contains3(w, perm)
    scan = PrefixScanner(perm)
    for x in w:
        if scan.completes(x):
            return True
        scan = scan.push(x)
    return False


def avoids(w: Sequence[int], p: PatternLike) -> bool:
    return not contains(w, p)


class PrefixScanner:
    """Incremental containment state for a prefix that avoids ``perm``.

    For each length l < m the scanner remembers, as open value intervals,
    which next values would extend some occurrence of ``perm[:l]`` in the
    prefix to an occurrence of ``perm[:l+1]``. A value completes the
    pattern iff it falls in one of the length m-1 intervals.
    """

    __slots__ = ("perm", "levels", "_gaps")

    def __init__(self, perm: Tuple[int, ...], levels=None):
        self.perm = perm
        m = len(perm)
        if levels is None:
            levels = tuple(frozenset() for _ in range(m - 1))
        self.levels = levels
        self._gaps = None

    def _interval(self, t: Tuple[int, ...]) -> Tuple[float, float]:
        nxt = self.perm[len(t)]
        lo = max((x for x, q in zip(t, self.perm) if q < nxt), default=float("-inf"))
        hi = min((x for x, q in zip(t, self.perm) if q > nxt), default=float("inf"))
        return lo, hi

    def completes(self, v: int) -> bool:
        if self._gaps is None:
            self._gaps = [self._interval(t) for t in self.levels[-1]]
        return any(lo < v < hi for lo, hi in self._gaps)

    def push(self, v: int) -> "PrefixScanner":
        m = len(self.perm)
        new = [set(level) for level in self.levels]
        new[0].add((v,))
        for length in range(1, m - 1):
            for t in self.levels[length - 1]:
                lo, hi = self._interval(t)
                if lo < v < hi:
                    new[length].add(t + (v,))
        return PrefixScanner(self.perm, tuple(frozenset(s) for s in new))


class Triple:
    """Bitmask containment state for a pattern of length 3.

    A state is ``(seen, blocked)``: the set of values already placed and the
    set of values that would complete an occurrence. Values must lie in
    ``0..top``.
    """

    def __init__(self, perm: Tuple[int, ...], top: int):
        a, b, c = perm
        self.start = (0, 0)
        self._table = [[0] * (top + 1) for _ in range(top + 1)]
        for u in range(top + 1):
            for v in range(top + 1):
                if u == v or (u < v) != (a < b):
                    continue
                mask = 0
                for x in range(top + 1):
                    if x not in (u, v) and (u < x) == (a < c) and (v < x) == (b < c):
                        mask |= 1 << x
                self._table[u][v] = mask
        self._steps: dict = {}

    def blocked(self, state, v: int) -> bool:
        return bool(state[1] >> v & 1)

    def step(self, state, v: int):
        seen, blocked = state
        key = (seen, v)
        add = self._steps.get(key)
        if add is None:
            add, rest = 0, seen
            while rest:
                low = rest & -rest
                rest ^= low
                add |= self._table[low.bit_length() - 1][v]
            self._steps[key] = add
        return seen | (1 << v), blocked | add


class General:
    """Containment state for any pattern, backed by :class:`PrefixScanner`."""

    def __init__(self, perm: Tuple[int, ...]):
        self.start = PrefixScanner(perm)

    def blocked(self, state, v: int) -> bool:
        return state.completes(v)

    def step(self, state, v: int):
        return state.push(v)


@lru_cache(maxsize=64)
def kernel(perm: Tuple[int, ...], top: int):
    """Prefix-containment tracker for ``perm`` over letters ``0..top``."""
    return Triple(perm, top) if len(perm) == 3 else General(perm)


# -- multiset permutations ------------------------------------------------------


def multinomial(mult: Sequence[int]) -> int:
    return factorial(sum(mult)) // prod(factorial(a) for a in mult)


def enumerate_multiset_permutations(spec) -> Iterator[Word]:
    """Yield every permutation of M(spec) once, in lexicographic order."""
    w = list(as_spec(spec).letters())
    n = len(w)
    while True:
        yield tuple(w)
        # next permutation
        i = n - 2
        while i >= 0 and w[i] >= w[i + 1]:
            i -= 1
        if i < 0:
            return
        j = n - 1
        while w[j] <= w[i]:
            j -= 1
        w[i], w[j] = w[j], w[i]
        w[i + 1 :] = reversed(w[i + 1 :])


def _avoiders_multiset(counts: List[int], kern, state, prefix: List[int]) -> Iterator[Word]:
    if not any(counts):
        yield tuple(prefix)
        return
    for idx, c in enumerate(counts):
        v = idx + 1
        if c == 0 or kern.blocked(state, v):
            continue
        counts[idx] -= 1
        prefix.append(v)
        yield from _avoiders_multiset(counts, kern, kern.step(state, v), prefix)
        prefix.pop()
        counts[idx] += 1


def _count_multiset(counts: List[int], left: int, kern, state) -> int:
    if left == 0:
        return 1
    total = 0
    for idx, c in enumerate(counts):
        v = idx + 1
        if c == 0 or kern.blocked(state, v):
            continue
        counts[idx] -= 1
        total += _count_multiset(counts, left - 1, kern, kern.step(state, v))
        counts[idx] += 1
    return total


def iter_avoiders_multiset(spec, p: PatternLike) -> Iterator[Word]:
    """Yield the permutations of M(spec) avoiding ``p``, lexicographically."""
    mult = as_spec(spec).mult
    kern = kernel(as_pattern(p).perm, len(mult))
    yield from _avoiders_multiset(list(mult), kern, kern.start, [])


def _count_multiset_first(args) -> int:
    mult, perm, first = args
    counts = list(mult)
    counts[first - 1] -= 1
    kern = kernel(perm, len(mult))
    return _count_multiset(counts, sum(counts), kern, kern.step(kern.start, first))


def count_avoiders_multiset(spec, p: PatternLike, *, naive: bool = False, jobs: Optional[int] = None) -> AvoidanceCount:
    """Number of permutations of M(spec) avoiding ``p``.

    ``naive=True`` enumerates every permutation and applies
    :func:`contains_naive`; the default prunes containing prefixes.
    ``jobs`` > 1 splits the work by first letter across processes.
    """
    spec = as_spec(spec)
    pat = as_pattern(p)
    total = multinomial(spec.mult)
    if naive:
        value = sum(1 for w in enumerate_multiset_permutations(spec) if not contains_naive(w, pat))
        return AvoidanceCount(value, total)
    if spec.size == 0:
        return AvoidanceCount(1, 1)
    tasks = [(spec.mult, pat.perm, i) for i, a in enumerate(spec.mult, start=1) if a]
    value = sum(_map(_count_multiset_first, tasks, jobs))
    return AvoidanceCount(value, total)


def _map(fn, tasks, jobs):
    jobs = default_jobs() if jobs is None else jobs
    if jobs <= 1 or len(tasks) <= 1:
        return [fn(t) for t in tasks]
    with ProcessPoolExecutor(max_workers=min(jobs, len(tasks))) as pool:
        return list(pool.map(fn, tasks))


# -- compositions ---------------------------------------------------------------


def _part_range(q: CompositionQuery, remaining: int, parts_left: Optional[int]) -> range:
    lo = q.min_part
    hi = remaining if q.max_part is None else min(remaining, q.max_part)
    if parts_left is not None:
        if parts_left == 1:
            return range(remaining, remaining + 1) if lo <= remaining <= hi else range(0)
        # leave room for the remaining parts
        hi = min(hi, remaining - lo * (parts_left - 1))
        if q.max_part is not None:
            lo = max(lo, remaining - q.max_part * (parts_left - 1))
    return range(lo, hi + 1)


def _compositions(q: CompositionQuery, remaining: int, parts_left, prefix: List[int], kern, state):
    if parts_left == 0 or (parts_left is None and remaining == 0):
        if remaining == 0:
            yield tuple(prefix)
        return
    nxt = None if parts_left is None else parts_left - 1
    for part in _part_range(q, remaining, parts_left):
        if kern is not None and kern.blocked(state, part):
            continue
        prefix.append(part)
        yield from _compositions(q, remaining - part, nxt, prefix, kern, kern and kern.step(state, part))
        prefix.pop()


def enumerate_compositions(q: CompositionQuery) -> Iterator[Word]:
    """Yield every composition matching ``q`` once, in lexicographic order."""
    return _compositions(q, q.n, q.k, [], None, None)


def iter_avoiding_compositions(q: CompositionQuery, p: PatternLike) -> Iterator[Word]:
    """Yield the compositions matching ``q`` that avoid ``p``, lexicographically."""
    kern = kernel(as_pattern(p).perm, q.n)
    return _compositions(q, q.n, q.k, [], kern, kern.start)


def _count_compositions(q, remaining, parts_left, kern, state) -> int:
    if parts_left == 0 or (parts_left is None and remaining == 0):
        return 1 if remaining == 0 else 0
    nxt = None if parts_left is None else parts_left - 1
    total = 0
    for part in _part_range(q, remaining, parts_left):
        if not kern.blocked(state, part):
            total += _count_compositions(q, remaining - part, nxt, kern, kern.step(state, part))
    return total


def _count_compositions_first(args) -> int:
    q, perm, first = args
    nxt = None if q.k is None else q.k - 1
    kern = kernel(perm, q.n)
    return _count_compositions(q, q.n - first, nxt, kern, kern.step(kern.start, first))


def count_compositions(q: CompositionQuery) -> int:
    """Total number of compositions matching ``q`` (dynamic programming, no enumeration)."""

    @lru_cache(maxsize=None)
    def ways(remaining: int, parts_left) -> int:
        if parts_left == 0 or (parts_left is None and remaining == 0):
            return int(remaining == 0)
        nxt = None if parts_left is None else parts_left - 1
        return sum(ways(remaining - part, nxt) for part in _part_range(q, remaining, parts_left))

    return ways(q.n, q.k)


def count_avoiding_compositions(
    q: CompositionQuery, p: PatternLike, *, naive: bool = False, jobs: Optional[int] = None
) -> AvoidanceCount:
    """Number of compositions matching ``q`` that avoid ``p``."""
    pat = as_pattern(p)
    if naive:
        value = total = 0
        for w in enumerate_compositions(q):
            total += 1
            value += not contains_naive(w, pat)
        return AvoidanceCount(value, total)
    total = count_compositions(q)
    if q.k == 0 or (q.k is None and q.n == 0):
        return AvoidanceCount(total, total)
    tasks = [(q, pat.perm, part) for part in _part_range(q, q.n, q.k)]
    return AvoidanceCount(sum(_map(_count_compositions_first, tasks, jobs)), total)
