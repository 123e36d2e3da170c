"""Exact integer arithmetic on truncated power series and sparse polynomials.

``TruncSeries`` is a univariate Laurent series known exactly up to a
declared truncation order; results never claim more precision than their
inputs carry. ``MultiPoly`` is a sparse polynomial in ``x_1..x_k`` with
optional per-variable degree caps.

No floating point and no rationals: every series we invert has constant
term +1 or -1, so coefficients stay integral.
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass
from typing import Dict, Mapping, Optional, Sequence, Tuple

from patavoid.core import PatavoidError

Exponent = Tuple[int, ...]


class InversionError(PatavoidError, ArithmeticError):
    """The series has no inverse with integer coefficients."""


class DivisibilityError(PatavoidError, ArithmeticError):
    """Polynomial division left a nonzero remainder."""


@dataclass(frozen=True)
class TruncSeries:
    """sum(coeffs[t] * x**(offset + t)), exact for exponents <= ``order``.

    The stored ``offset`` is the valuation: the first coefficient is nonzero
    unless the series is zero, in which case ``offset == order + 1``.
    """

    offset: int
    coeffs: Tuple[int, ...]
    order: int

    def __post_init__(self):
        coeffs = list(self.coeffs[: max(0, self.order - self.offset + 1)])
        offset = self.offset
        skip = 0
        while skip < len(coeffs) and coeffs[skip] == 0:
            skip += 1
        offset += skip
        coeffs = coeffs[skip:]
        if not coeffs:
            offset = self.order + 1
        coeffs += [0] * (self.order - offset + 1 - len(coeffs))
        object.__setattr__(self, "offset", offset)
        object.__setattr__(self, "coeffs", tuple(int(c) for c in coeffs))

    @classmethod
    def from_coeffs(cls, coeffs: Sequence[int], order: int, offset: int = 0) -> "TruncSeries":
        return cls(offset, tuple(coeffs), order)

    @classmethod
    def from_terms(cls, terms: Mapping[int, int], order: int) -> "TruncSeries":
        """Series of the Laurent polynomial ``{exponent: coeff}``, cut at ``order``."""
        if not terms:
            return cls.zero(order)
        lo = min(terms)
        coeffs = [0] * (max(order - lo + 1, 0))
        for e, c in terms.items():
            if e <= order:
                coeffs[e - lo] += c
        return cls(lo, tuple(coeffs), order)

    @classmethod
    def zero(cls, order: int) -> "TruncSeries":
        return cls(order + 1, (), order)

    @classmethod
    def one(cls, order: int) -> "TruncSeries":
        return cls(0, (1,), order)

    @classmethod
    def monomial(cls, exponent: int, order: int, coeff: int = 1) -> "TruncSeries":
        return cls(exponent, (coeff,), order)

    def is_zero(self) -> bool:
        return not self.coeffs

    def coeff(self, e: int) -> int:
        if e > self.order:
            raise ValueError(f"coefficient of x^{e} is beyond truncation order {self.order}")
        if e < self.offset:
            return 0
        return self.coeffs[e - self.offset]

    def terms(self) -> Dict[int, int]:
        return {self.offset + t: c for t, c in enumerate(self.coeffs) if c}

    def to_list(self, start: int = 0) -> list:
        """Coefficients for exponents ``start..order``."""
        return [self.coeff(e) for e in range(start, self.order + 1)]

    def truncate(self, order: int) -> "TruncSeries":
        if order > self.order:
            raise ValueError(f"cannot extend truncation order {self.order} to {order}")
        return TruncSeries(self.offset, self.coeffs, order)

    def shift(self, s: int) -> "TruncSeries":
        """Multiply by the exact monomial x**s."""
        return TruncSeries(self.offset + s, self.coeffs, self.order + s)

    def __neg__(self):
        return TruncSeries(self.offset, tuple(-c for c in self.coeffs), self.order)

    def __add__(self, other):
        if not isinstance(other, TruncSeries):
            return NotImplemented
        order = min(self.order, other.order)
        lo = min(self.offset, other.offset)
        out = [0] * max(order - lo + 1, 0)
        for s in (self, other):
            for t, c in enumerate(s.coeffs):
                e = s.offset + t
                if e > order:
                    break
                out[e - lo] += c
        return TruncSeries(lo, tuple(out), order)

    def __sub__(self, other):
        if not isinstance(other, TruncSeries):
            return NotImplemented
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, int):
            return TruncSeries(self.offset, tuple(c * other for c in self.coeffs), self.order)
        if not isinstance(other, TruncSeries):
            return NotImplemented
        if self.is_zero() or other.is_zero():
            return TruncSeries.zero(min(self.order + max(other.offset, 0), other.order + max(self.offset, 0)))
        order = min(self.order + other.offset, other.order + self.offset)
        offset = self.offset + other.offset
        length = order - offset + 1
        out = [0] * max(length, 0)
        a, b = self.coeffs, other.coeffs
        if sum(1 for c in a if c) > sum(1 for c in b if c):
            a, b = b, a
        for ta, ca in enumerate(a):
            if not ca or ta >= length:
                continue
            for tb in range(min(len(b), length - ta)):
                cb = b[tb]
                if cb:
                    out[ta + tb] += ca * cb
        return TruncSeries(offset, tuple(out), order)

    __rmul__ = __mul__

    def __truediv__(self, other):
        """Exact series quotient; same result as ``self * other.invert()``."""
        if not isinstance(other, TruncSeries):
            return NotImplemented
        _check_unit(other)
        v = other.offset
        order = min(self.order - v, other.order - 2 * v + self.offset)
        lead = other.coeffs[0]
        tail = [(t, c) for t, c in enumerate(other.coeffs) if t and c]
        start = self.offset - v
        length = order - start + 1
        if length <= 0:
            return TruncSeries.zero(order)
        q = [0] * length
        for n in range(length):
            acc = self.coeffs[n] if n < len(self.coeffs) else 0
            for t, c in tail:
                if t > n:
                    break
                acc -= c * q[n - t]
            q[n] = acc * lead  # lead is +-1, its own inverse
        return TruncSeries(start, tuple(q), order)

    def invert(self) -> "TruncSeries":
        """Multiplicative inverse; the lowest coefficient must be +1 or -1."""
        _check_unit(self)
        # exact up to order - 2 * valuation
        return TruncSeries.one(self.order - self.offset) / self

    def __eq__(self, other):
        if not isinstance(other, TruncSeries):
            return NotImplemented
        return (self.offset, self.coeffs, self.order) == (other.offset, other.coeffs, other.order)

    def __hash__(self):
        return hash((self.offset, self.coeffs, self.order))

    def __repr__(self):
        body = " + ".join(f"{c}*x^{e}" for e, c in self.terms().items()) or "0"
        return f"TruncSeries({body} + O(x^{self.order + 1}))"


def _check_unit(s: TruncSeries):
    if s.is_zero():
        raise InversionError("cannot invert the zero series")
    if s.coeffs[0] not in (1, -1):
        raise InversionError(f"lowest coefficient {s.coeffs[0]} is not a unit in the integers")


def ts_add(a: TruncSeries, b: TruncSeries) -> TruncSeries:
    return a + b


def ts_mul(a: TruncSeries, b: TruncSeries) -> TruncSeries:
    return a * b


def ts_neg(a: TruncSeries) -> TruncSeries:
    return -a


def ts_invert(a: TruncSeries) -> TruncSeries:
    return a.invert()


# -- multivariate -------------------------------------------------------------------


def _grlex_key(e: Exponent):
    return (sum(e), e)


def _neg_key(e: Exponent):
    # min-heap entry that pops the grlex-largest exponent first
    return (-sum(e), tuple(-x for x in e)), e


class MultiPoly:
    """Sparse polynomial ``{exponent vector: coefficient}`` in ``nvars`` variables.

    If ``caps`` is given, terms with ``e[i] > caps[i]`` for some ``i`` are
    dropped and every product is truncated likewise. Treat instances as
    immutable.
    """

    __slots__ = ("nvars", "terms", "caps")

    def __init__(self, nvars: int, terms: Optional[Mapping[Exponent, int]] = None, caps: Optional[Sequence[int]] = None):
        self.nvars = nvars
        self.caps = None if caps is None else tuple(caps)
        if self.caps is not None and len(self.caps) != nvars:
            raise ValueError("caps length must equal the number of variables")
        clean: Dict[Exponent, int] = {}
        for e, c in (terms or {}).items():
            e = tuple(e)
            if len(e) != nvars:
                raise ValueError(f"exponent {e} has wrong length for {nvars} variables")
            if c and self._fits(e):
                clean[e] = clean.get(e, 0) + c
                if not clean[e]:
                    del clean[e]
        self.terms = clean

    def _fits(self, e: Exponent) -> bool:
        return self.caps is None or all(x <= cap for x, cap in zip(e, self.caps))

    @classmethod
    def constant(cls, c: int, nvars: int, caps=None) -> "MultiPoly":
        return cls(nvars, {(0,) * nvars: c}, caps)

    @classmethod
    def variable(cls, i: int, nvars: int, caps=None) -> "MultiPoly":
        """The variable ``x_{i+1}`` (``i`` is 0-based)."""
        e = [0] * nvars
        e[i] = 1
        return cls(nvars, {tuple(e): 1}, caps)

    def with_caps(self, caps: Optional[Sequence[int]]) -> "MultiPoly":
        return MultiPoly(self.nvars, self.terms, caps)

    def _join_caps(self, other: "MultiPoly"):
        if self.caps is None:
            return other.caps
        if other.caps is None:
            return self.caps
        return tuple(map(min, self.caps, other.caps))

    def _check(self, other):
        if not isinstance(other, MultiPoly):
            return False
        if other.nvars != self.nvars:
            raise ValueError("polynomials live in different numbers of variables")
        return True

    def __add__(self, other):
        if isinstance(other, int):
            other = MultiPoly.constant(other, self.nvars)
        if not self._check(other):
            return NotImplemented
        out = dict(self.terms)
        for e, c in other.terms.items():
            out[e] = out.get(e, 0) + c
        return MultiPoly(self.nvars, out, self._join_caps(other))

    __radd__ = __add__

    def __neg__(self):
        return MultiPoly(self.nvars, {e: -c for e, c in self.terms.items()}, self.caps)

    def __sub__(self, other):
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, int):
            return MultiPoly(self.nvars, {e: c * other for e, c in self.terms.items()}, self.caps)
        if not self._check(other):
            return NotImplemented
        caps = self._join_caps(other)
        out: Dict[Exponent, int] = {}
        for ea, ca in self.terms.items():
            for eb, cb in other.terms.items():
                e = tuple(x + y for x, y in zip(ea, eb))
                if caps is not None and any(x > cap for x, cap in zip(e, caps)):
                    continue
                out[e] = out.get(e, 0) + ca * cb
        return MultiPoly(self.nvars, out, caps)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative powers are not polynomials")
        result = MultiPoly.constant(1, self.nvars, self.caps)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __eq__(self, other):
        if not isinstance(other, MultiPoly):
            return NotImplemented
        return self.nvars == other.nvars and self.terms == other.terms

    def __hash__(self):
        return hash((self.nvars, frozenset(self.terms.items())))

    def __bool__(self):
        return bool(self.terms)

    def __repr__(self):
        body = " + ".join(f"{c}*x^{e}" for e, c in sorted(self.terms.items(), key=lambda t: _grlex_key(t[0]), reverse=True))
        return f"MultiPoly({body or '0'})"

    def coeff(self, e: Sequence[int]) -> int:
        return self.terms.get(tuple(e), 0)

    def total_degree(self) -> int:
        return max((sum(e) for e in self.terms), default=-1)

    def leading_term(self) -> Tuple[Exponent, int]:
        """Largest term in graded lexicographic order."""
        e = max(self.terms, key=_grlex_key)
        return e, self.terms[e]

    def permute_vars(self, perm: Sequence[int]) -> "MultiPoly":
        """Rename variable ``perm[i]`` to position ``i``."""
        caps = None if self.caps is None else tuple(self.caps[p] for p in perm)
        return MultiPoly(self.nvars, {tuple(e[p] for p in perm): c for e, c in self.terms.items()}, caps)

    def exact_div(self, den: "MultiPoly") -> "MultiPoly":
        """Quotient ``q`` with ``q * den == self`` exactly.

        Leading-term elimination in graded lex order. The numerator must be
        uncapped (or fully within its caps); a nonzero remainder raises
        :class:`DivisibilityError`.
        """
        self._check(den)
        if not den:
            raise ZeroDivisionError("division by the zero polynomial")
        lead_e, lead_c = den.leading_term()
        den_terms = list(den.terms.items())
        rem = dict(self.terms)
        heap = [_neg_key(e) for e in rem]
        heapq.heapify(heap)
        quot: Dict[Exponent, int] = {}
        while heap:
            key = heapq.heappop(heap)
            e = key[1]
            c = rem.get(e)
            if not c:
                continue  # cancelled since it was pushed
            shift = tuple(x - y for x, y in zip(e, lead_e))
            if any(s < 0 for s in shift) or c % lead_c:
                raise DivisibilityError(f"term {c}*x^{e} is not divisible by the leading term {lead_c}*x^{lead_e}")
            qc = c // lead_c
            quot[shift] = qc
            for de, dc in den_terms:
                t = tuple(x + y for x, y in zip(de, shift))
                old = rem.get(t, 0)
                v = old - qc * dc
                if v:
                    rem[t] = v
                    if not old:
                        heapq.heappush(heap, _neg_key(t))
                else:
                    rem.pop(t, None)
        return MultiPoly(self.nvars, quot, self.caps)

    def substitute_powers(self, n_max: int) -> TruncSeries:
        """Put ``x_i = x**i``; the result is exact up to ``x**n_max``."""
        out: Dict[int, int] = {}
        for e, c in self.terms.items():
            d = sum(i * x for i, x in enumerate(e, start=1))
            if d <= n_max:
                out[d] = out.get(d, 0) + c
        return TruncSeries.from_terms(out, n_max)


def mp_mul(a: MultiPoly, b: MultiPoly) -> MultiPoly:
    return a * b


def mp_coeff(a: MultiPoly, e: Sequence[int]) -> int:
    return a.coeff(e)


def mp_exact_div(num: MultiPoly, den: MultiPoly) -> MultiPoly:
    return num.exact_div(den)


def ts_substitute_powers(a: MultiPoly, n_max: int) -> TruncSeries:
    return a.substitute_powers(n_max)


def polys(nvars: int, caps=None) -> Tuple[MultiPoly, ...]:
    """The variables ``x_1..x_nvars`` as polynomials."""
    return tuple(MultiPoly.variable(i, nvars, caps) for i in range(nvars))

