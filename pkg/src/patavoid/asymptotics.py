"""Growth of avoiding compositions with bounded parts.

With parts <= k the counting series is rational, and its pole nearest the
origin is the root of x + x^2 = 1, so c(n, k) ~ K(k) * r**n with r the
golden ratio.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from patavoid.genfun import composition_gf

R = (1 + math.sqrt(5)) / 2
S = (1 - math.sqrt(5)) / 2


@dataclass(frozen=True)
class GrowthEstimate:
    k: int
    K: float
    rate: float = R


def K_of_k(k: int) -> float:
    """Amplitude of c(n, k) ~ K(k) r^n."""
    if k < 2:
        raise ValueError("K(k) is defined for k >= 2")
    r = R
    first = second = 1.0
    for j in range(3, k + 1):
        first *= (1 - 1 / r) / ((1 - r ** (1 - j)) * (1 - 1 / r - r ** (-j)))
        second *= (1 - r**-2) / ((1 - r ** (2 - j)) * (1 - r**-2 - r ** (-j)))
    return r / ((r - 1) * (r - S)) * (r * first - second)


def estimate(k: int) -> GrowthEstimate:
    return GrowthEstimate(k, K_of_k(k))


def K_infinity(tolerance: float = 1e-10, k_max: int = 10_000) -> float:
    """Limit of K(k): raise k until successive values differ by less than ``tolerance``."""
    if tolerance <= 0:
        raise ValueError("tolerance must be positive")
    prev = K_of_k(2)
    for k in range(3, k_max + 1):
        cur = K_of_k(k)
        if abs(cur - prev) < tolerance:
            return cur
        prev = cur
    raise RuntimeError(f"K(k) did not settle within {k_max} terms")


def min_modulus_root(i: int, j: int, tol: float = 1e-13) -> float:
    """The root of x^i + x^j = 1 in (0, 1), by bisection."""
    if not 1 <= i < j:
        raise ValueError("need 1 <= i < j")
    lo, hi = 0.0, 1.0
    while hi - lo > tol:
        mid = (lo + hi) / 2
        if mid**i + mid**j < 1:
            lo = mid
        else:
            hi = mid
    return (lo + hi) / 2


def growth_check(n: int, k: int) -> float:
    """c(n, k) / (K(k) r^n), from exact counts."""
    c = composition_gf(n, k).coeff(n)
    return c / (K_of_k(k) * R**n)
