import pytest
from hypothesis import assume, given, strategies as st

from patavoid.series import (
    DivisibilityError,
    InversionError,
    MultiPoly,
    TruncSeries,
    mp_coeff,
    mp_exact_div,
    mp_mul,
    polys,
    ts_add,
    ts_invert,
    ts_mul,
    ts_neg,
    ts_substitute_powers,
)

ORDER = 12


def series(coeffs, offset=0, order=ORDER):
    return TruncSeries.from_coeffs(coeffs, order, offset)


def agree(a, b):
    order = min(a.order, b.order)
    return a.truncate(order) == b.truncate(order)


small_series = st.builds(
    lambda cs, off, extra: series(cs, off, off + extra),
    st.lists(st.integers(-5, 5), min_size=1, max_size=6),
    st.integers(-3, 3),
    st.integers(4, 10),
)
unit_series = st.builds(
    lambda lead, cs, off: series([lead] + cs, off, ORDER),
    st.sampled_from([1, -1]),
    st.lists(st.integers(-4, 4), max_size=6),
    st.integers(-2, 2),
)


def test_mul_examples():
    assert ts_mul(series([1, 1]), series([1, -1])).to_list() == [1, 0, -1] + [0] * (ORDER - 2)
    x_inv = TruncSeries.monomial(-1, ORDER)
    x = TruncSeries.monomial(1, ORDER)
    assert x_inv * x == TruncSeries.one(ORDER - 1)
    geometric = series([1] * (ORDER + 1))
    assert geometric * series([1, -1]) == TruncSeries.one(ORDER)


def test_add_neg():
    a = series([1, 2, 3])
    assert ts_add(a, ts_neg(a)).is_zero()
    assert (a - a).to_list() == [0] * (ORDER + 1)


def test_invert_examples():
    assert ts_invert(series([1, -1])).to_list() == [1] * (ORDER + 1)
    fib = ts_invert(series([1, -1, -1]))
    assert fib.to_list()[:8] == [1, 1, 2, 3, 5, 8, 13, 21]
    assert fib * series([1, -1, -1]) == TruncSeries.one(ORDER)
    with pytest.raises(InversionError):
        ts_invert(series([2, -1]))
    with pytest.raises(InversionError):
        ts_invert(TruncSeries.zero(ORDER))


def test_laurent_inversion():
    # 1 - x^-2 = -x^-2 (1 - x^2)
    a = TruncSeries.from_terms({0: 1, -2: -1}, ORDER)
    inv = a.invert()
    assert inv.offset == 2
    assert inv.coeff(2) == -1 and inv.coeff(4) == -1 and inv.coeff(3) == 0
    assert agree(a * inv, TruncSeries.one(inv.order))


def test_truncation_is_tracked():
    a = series([1, 1], order=5)
    b = series([1, 2, 3], order=9)
    assert (a + b).order == 5
    assert (a * b).order == 5
    assert (a * TruncSeries.monomial(2, 9)).order == 7
    with pytest.raises(ValueError):
        a.coeff(6)
    with pytest.raises(ValueError):
        a.truncate(6)


@given(small_series, small_series, small_series)
def test_ring_axioms(a, b, c):
    assert agree(a + b, b + a)
    assert agree(a * b, b * a)
    assert agree((a + b) + c, a + (b + c))
    assert agree((a * b) * c, a * (b * c))
    assert agree(a * (b + c), a * b + a * c)


@given(small_series, small_series)
def test_offsets_add_under_mul(a, b):
    assume(not a.is_zero() and not b.is_zero())
    assert (a * b).offset == a.offset + b.offset


@given(unit_series)
def test_invert_roundtrip(a):
    inv = a.invert()
    prod = a * inv
    assert agree(prod, TruncSeries.one(prod.order))
    assert prod.order >= ORDER - 2 * abs(a.offset) - abs(a.offset)


@given(small_series, unit_series)
def test_division_matches_inverse(a, b):
    assert agree(a / b, a * b.invert())


# -- multivariate -------------------------------------------------------------------


def test_mp_examples():
    x1, x2 = polys(2)
    diff = mp_mul(x1 - x2, x1 + x2)
    assert diff == x1 * x1 - x2 * x2
    assert mp_coeff(diff, (2, 0)) == 1
    assert mp_coeff(diff, (0, 2)) == -1
    capped = MultiPoly(2, diff.terms, caps=(1, 1))
    assert mp_coeff(capped, (2, 0)) == 0
    assert not capped


def test_exact_div_examples():
    x1, x2 = polys(2)
    assert mp_exact_div(x1 * x1 - x2 * x2, x1 - x2) == x1 + x2
    assert mp_exact_div(x1 - x2, x1 - x2) == MultiPoly.constant(1, 2)
    with pytest.raises(DivisibilityError):
        mp_exact_div(x1 * x1 + x2, x1 - x2)


def test_substitute_powers():
    x1, x2 = polys(2)
    assert ts_substitute_powers(x1 * x2, 5).terms() == {3: 1}
    assert ts_substitute_powers(MultiPoly.constant(1, 2), 5).terms() == {0: 1}
    assert ts_substitute_powers(x1 + x2, 5).terms() == {1: 1, 2: 1}
    assert ts_substitute_powers(x2**3, 5).terms() == {}


poly_terms = st.dictionaries(
    st.tuples(st.integers(0, 2), st.integers(0, 2), st.integers(0, 2)), st.integers(-3, 3), max_size=5
)


@given(poly_terms, poly_terms, poly_terms)
def test_mp_ring_axioms(ta, tb, tc):
    a, b, c = (MultiPoly(3, t) for t in (ta, tb, tc))
    assert a * b == b * a
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c


@given(poly_terms, poly_terms)
def test_exact_div_multiply_back(tq, td):
    q, d = MultiPoly(3, tq), MultiPoly(3, td)
    assume(d)
    n = q * d
    assert mp_exact_div(n, d) == q
    assert mp_mul(mp_exact_div(n, d), d) == n


def test_caps_truncate_products():
    x1, x2 = polys(2, caps=(2, 1))
    p = (x1 + x2) ** 3
    assert all(e[0] <= 2 and e[1] <= 1 for e in p.terms)
    assert p.coeff((2, 1)) == 3
