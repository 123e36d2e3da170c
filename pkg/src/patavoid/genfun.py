"""Generating functions for 3-pattern avoidance.

``composition_gf`` expands the univariate series counting avoiding
compositions of n with parts <= k. Its i-th summand is

    1/(1-x^i) * prod_{j != i, j <= k} (1-x^i) / ((1-x^(j-i)) (1-x^i-x^j)).

For j < i the factor 1-x^(j-i) is a Laurent polynomial; rewriting it as
-x^(j-i) (1-x^(i-j)) pulls out one sign and x^(i-j) per such j, so the
summand is (-1)^(i-1) x^(i(i-1)/2) times a product of factors with unit
constant term. ``plan_terms`` records that bookkeeping.

``g_k_series`` expands the multivariate series whose coefficient of
x_1^a_1 ... x_k^a_k counts the (132)-avoiding permutations of M(a).
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations
from typing import List, Optional, Sequence, Tuple

from patavoid.avoidance import AvoidanceCount, multinomial
from patavoid.core import ConsistencyError, as_spec
from patavoid.series import MultiPoly, TruncSeries, mp_exact_div, polys


@dataclass(frozen=True)
class GfTermPlan:
    """The i-th summand as sign * x**net_shift * prod(numer) / prod(denom).

    Each factor is a tuple of exponents ``(d1, d2, ...)`` standing for
    ``1 - x**d1 - x**d2 - ...``; ``numer_power`` may be negative, in which
    case ``(1 - x**i)`` moves to the denominator.
    """

    i: int
    sign: int
    net_shift: int
    numer: Tuple[int, ...]
    numer_power: int
    denom: Tuple[Tuple[int, ...], ...]


def plan_terms(max_part: int) -> List[GfTermPlan]:
    k = max_part
    plans = []
    for i in range(1, k + 1):
        sign, shift = 1, 0
        denom = []
        for j in range(1, k + 1):
            if j == i:
                continue
            if j < i:
                # 1 - x^(j-i) = -x^(j-i) * (1 - x^(i-j))
                sign = -sign
                shift += i - j
            denom.append((abs(i - j),))
            denom.append((i, j))
        plans.append(GfTermPlan(i, sign, shift, (i,), k - 2, tuple(denom)))
    return plans


def factor_series(exps: Sequence[int], order: int) -> TruncSeries:
    """The polynomial ``1 - sum(x**d for d in exps)`` as a series."""
    terms = {0: 1}
    for d in exps:
        terms[d] = terms.get(d, 0) - 1
    return TruncSeries.from_terms(terms, order)


def term_series(plan: GfTermPlan, n_max: int) -> TruncSeries:
    """The planned summand, exact up to ``x**n_max``."""
    order = n_max - plan.net_shift
    if order < 0:
        return TruncSeries.zero(n_max)
    s = TruncSeries.one(order)
    base = factor_series(plan.numer, order)
    for _ in range(max(plan.numer_power, 0)):
        s = s * base
    for _ in range(max(-plan.numer_power, 0)):
        s = s / base
    for exps in plan.denom:
        s = s / factor_series(exps, order)
    return (s * plan.sign).shift(plan.net_shift)


def composition_gf(n_max: int, max_part: Optional[int] = None) -> TruncSeries:
    """Series counting compositions of n into parts <= max_part that avoid any pattern of S3.

    ``max_part=None`` means no bound, which is the same as ``max_part=n_max``
    for coefficients up to ``x**n_max``.
    """
    if n_max < 0:
        raise ValueError("n_max must be >= 0")
    k = n_max if max_part is None else max_part
    if k < 1:
        raise ValueError("max_part must be >= 1")
    total = TruncSeries.zero(n_max)
    for plan in plan_terms(k):
        total = total + term_series(plan, n_max)
    if total.offset < 0 or any(c < 0 for c in total.coeffs):
        raise ConsistencyError(f"composition series has a negative exponent or coefficient: {total}")
    return total


def composition_counts(n_max: int, max_part: Optional[int] = None) -> List[int]:
    """Coefficients for n = 1..n_max."""
    return composition_gf(n_max, max_part).to_list(start=1)


# -- multivariate ------------------------------------------------------------------


@lru_cache(maxsize=None)
def g_k_numerator(k: int) -> MultiPoly:
    """Numerator over the common denominator prod_{p<q} (x_p - x_q)(1 - x_p - x_q).

    Term i carries sign (-1)**(i-1) because its own Vandermonde factors
    (x_i - x_j) with j < i appear as (x_j - x_i) in the common product.
    """
    x = polys(k)
    one = MultiPoly.constant(1, k)
    total = MultiPoly(k)
    for i in range(k):
        term = x[i] ** (k - 1) * (one - x[i]) ** (k - 2)
        for p, q in combinations(range(k), 2):
            if i not in (p, q):
                term = term * (x[p] - x[q]) * (one - x[p] - x[q])
        total = total + (term if i % 2 == 0 else -term)
    return total


@lru_cache(maxsize=None)
def vandermonde(k: int) -> MultiPoly:
    x = polys(k)
    v = MultiPoly.constant(1, k)
    for p, q in combinations(range(k), 2):
        v = v * (x[p] - x[q])
    return v


@lru_cache(maxsize=None)
def g_k_quotient(k: int) -> MultiPoly:
    """The polynomial numerator left once the Vandermonde factor cancels."""
    return mp_exact_div(g_k_numerator(k), vandermonde(k))


def _pair_geometric(k: int, p: int, q: int, caps: Sequence[int]) -> MultiPoly:
    """1/(1 - x_p - x_q) truncated to ``caps``: coefficient C(a+b, a) on x_p^a x_q^b."""
    terms = {}
    for a in range(caps[p] + 1):
        for b in range(caps[q] + 1):
            e = [0] * k
            e[p], e[q] = a, b
            terms[tuple(e)] = multinomial((a, b))
    return MultiPoly(k, terms, caps)


def g_k_series(k: int, caps: Sequence[int]) -> MultiPoly:
    """Expansion of g_k truncated to the per-variable degree bounds ``caps``."""
    if k < 2:
        raise ValueError("g_k needs k >= 2")
    caps = tuple(caps)
    if len(caps) != k:
        raise ValueError(f"need {k} caps, got {len(caps)}")
    result = g_k_quotient(k).with_caps(caps)
    for p, q in combinations(range(k), 2):
        result = result * _pair_geometric(k, p, q, caps)
    if any(c < 0 for c in result.terms.values()):
        raise ConsistencyError("g_k expansion has a negative coefficient")
    return result


def f132_via_gf(spec) -> AvoidanceCount:
    """(132)-avoiding permutations of M(spec), read off the g_k expansion."""
    mult = as_spec(spec).mult
    total = multinomial(mult)
    if len(mult) < 2:
        return AvoidanceCount(1, total)
    return AvoidanceCount(g_k_series(len(mult), mult).coeff(mult), total)


def sanity_check_eq1_vs_eq2(n_max: int, k: int) -> bool:
    """Whether putting x_i = x**i in g_k reproduces the part-bounded composition series."""
    if k == 1:
        return composition_gf(n_max, 1).to_list() == [1] * (n_max + 1)
    caps = [n_max // i for i in range(1, k + 1)]
    return g_k_series(k, caps).substitute_powers(n_max) == composition_gf(n_max, k)
