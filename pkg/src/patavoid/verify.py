"""Named verification sweeps run by ``patavoid verify``.

Each suite returns a :class:`SuiteResult`; on failure ``counterexample``
holds the first offending case.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Callable, Dict, Iterator, List, Optional, Tuple

from patavoid.avoidance import (
    S3,
    contains,
    count_avoiders_multiset,
    count_avoiding_compositions,
    enumerate_multiset_permutations,
)
from patavoid.bijection import swap_schedule, theta_adjacent
from patavoid.core import CompositionQuery, Pattern
from patavoid.genfun import composition_gf, f132_via_gf, sanity_check_eq1_vs_eq2

PAPER_SEQUENCE = (1, 2, 4, 8, 16, 31, 60, 114, 214, 398, 732, 1334, 2410)


@dataclass
class SuiteResult:
    name: str
    checks: int = 0
    counterexample: Optional[dict] = None
    notes: Dict[str, object] = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return self.counterexample is None

    def fail(self, **case) -> "SuiteResult":
        self.counterexample = case
        return self


def vectors(max_k: int, max_total: int) -> Iterator[Tuple[int, ...]]:
    """All multiplicity vectors with 1..max_k positive entries summing to at most max_total."""
    for k in range(1, max_k + 1):
        for total in range(k, max_total + 1):
            for cut in itertools.combinations(range(1, total), k - 1):
                bounds = (0,) + cut + (total,)
                yield tuple(b - a for a, b in zip(bounds, bounds[1:]))


def thm1(n_max: int = 13, jobs=None) -> SuiteResult:
    res = SuiteResult("thm1")
    for n in range(1, n_max + 1):
        for p in S3:
            got = count_avoiding_compositions(CompositionQuery(n), p, jobs=jobs).value
            res.checks += 1
            want = PAPER_SEQUENCE[n - 1] if n <= len(PAPER_SEQUENCE) else None
            if want is not None and got != want:
                return res.fail(n=n, pattern=str(p), count=got, expected=want)
    return res


def thm2(n_max: int = 12, jobs=None) -> SuiteResult:
    res = SuiteResult("thm2")
    for n in range(0, n_max + 1):
        for k in range(0, n + 1):
            for flavor in ("positive", "nonnegative"):
                q = CompositionQuery(n, flavor, k)
                counts = {str(p): count_avoiding_compositions(q, p, jobs=jobs).value for p in S3}
                res.checks += 1
                if len(set(counts.values())) != 1:
                    return res.fail(n=n, k=k, flavor=flavor, counts=counts)
    return res


def multiset_table(max_k: int, max_total: int, jobs=None) -> Dict[Tuple[int, ...], Dict[str, int]]:
    return {
        a: {str(p): count_avoiders_multiset(a, p, jobs=jobs).value for p in S3}
        for a in vectors(max_k, max_total)
    }


def thm3(max_k: int = 4, max_total: int = 10, jobs=None, table=None) -> SuiteResult:
    res = SuiteResult("thm3")
    table = table if table is not None else multiset_table(max_k, max_total, jobs)
    for a, counts in table.items():
        res.checks += 1
        if len(set(counts.values())) != 1:
            return res.fail(mult=list(a), counts=counts)
    return res


def symmetry(max_k: int = 4, max_total: int = 10, jobs=None, table=None) -> SuiteResult:
    res = SuiteResult("symmetry")
    table = table if table is not None else multiset_table(max_k, max_total, jobs)
    for a, counts in table.items():
        for b in set(itertools.permutations(a)):
            res.checks += 1
            if table[b] != counts:
                return res.fail(mult=list(a), permuted=list(b), counts=counts, permuted_counts=table[b])
    return res


def bijection(max_k: int = 4, max_total: int = 9, patterns=("123", "1234")) -> SuiteResult:
    """Theta is a bijection M(a) -> M(b) preserving avoidance, for every rearrangement b of a."""
    res = SuiteResult("bijection")
    pats = [Pattern.parse(p) for p in patterns]
    step_cache: Dict[Tuple[Tuple[int, ...], int], Tuple[int, ...]] = {}
    hits: Dict[Tuple[int, ...], Tuple[bool, ...]] = {}

    def step(w, i):
        key = (w, i)
        out = step_cache.get(key)
        if out is None:
            out = step_cache[key] = theta_adjacent(w, i)
        return out

    def signature(w):
        sig = hits.get(w)
        if sig is None:
            sig = hits[w] = tuple(contains(w, p) for p in pats)
        return sig

    words: Dict[Tuple[int, ...], List[Tuple[int, ...]]] = {}
    for a in vectors(max_k, max_total):
        words[a] = list(enumerate_multiset_permutations(a))
    for a, source in words.items():
        for b in sorted(set(itertools.permutations(a))):
            schedule = swap_schedule(a, b)
            images = set()
            for w in source:
                y = w
                for i in schedule:
                    y = step(y, i)
                images.add(y)
                res.checks += 1
                if signature(w) != signature(y):
                    return res.fail(source=list(a), target=list(b), word=list(w), image=list(y))
            if len(images) != len(source) or images != set(words[b]):
                return res.fail(source=list(a), target=list(b), reason="not a bijection onto M(target)")
    return res


def gf_cross(n_max: int = 13, jobs=None) -> SuiteResult:
    res = SuiteResult("gf-cross")
    for n in range(1, n_max + 1):
        for max_part in sorted({1, 2, 3, n}):
            series = composition_gf(n, max_part)
            brute = count_avoiding_compositions(CompositionQuery(n, max_part=max_part), "132", jobs=jobs).value
            res.checks += 1
            if series.coeff(n) != brute:
                return res.fail(n=n, max_part=max_part, series=series.coeff(n), brute=brute)
    for a in itertools.product(range(0, 4), repeat=3):
        res.checks += 1
        got, want = f132_via_gf(a).value, count_avoiders_multiset(a, "132").value
        if got != want:
            return res.fail(mult=list(a), gf=got, brute=want)
    for n_max, k in ((10, 3), (8, 4), (6, 2)):
        res.checks += 1
        if not sanity_check_eq1_vs_eq2(n_max, k):
            return res.fail(n_max=n_max, k=k, reason="x_i = x^i substitution disagrees")
    return res


SUITES: Dict[str, Callable[..., SuiteResult]] = {
    "thm1": thm1,
    "thm2": thm2,
    "thm3": thm3,
    "symmetry": symmetry,
    "bijection": lambda jobs=None: bijection(),
    "gf-cross": gf_cross,
}
