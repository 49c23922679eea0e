import pytest
from hypothesis import given, settings, strategies as st

from forestcount.series import BiSeries, BoxMismatchError, mul_reference


def series_from(cmax, dmax, terms):
    return BiSeries.from_terms(cmax, dmax, terms)


# ----------------------------------------------------------------------
# constructors and access
# ----------------------------------------------------------------------

def test_one_has_single_unit_coefficient():
    one = BiSeries.one(2, 2)
    assert one.coeff(0, 0) == 1
    assert one.coeff(1, 1) == 0
    assert one.coeff(2, 2) == 0


def test_zero_is_zero_everywhere():
    z = BiSeries.zero(0, 0)
    assert z.coeff(0, 0) == 0
    assert z.is_zero()


def test_coeff_outside_box_errors():
    one = BiSeries.one(2, 2)
    with pytest.raises(IndexError):
        one.coeff(3, 0)
    with pytest.raises(IndexError):
        one.coeff(0, -1)


def test_negative_box_rejected():
    with pytest.raises(ValueError):
        BiSeries.zero(-1, 0)


def test_from_terms_out_of_box_rejected():
    with pytest.raises(ValueError):
        series_from(1, 1, {(2, 0): 1})


# ----------------------------------------------------------------------
# add / sub / mul basics
# ----------------------------------------------------------------------

def test_binomial_square():
    # (1 + xy)^2 = 1 + 2xy + x^2 y^2
    a = series_from(2, 2, {(0, 0): 1, (1, 1): 1})
    sq = a * a
    assert sq.coeff(0, 0) == 1
    assert sq.coeff(1, 1) == 2
    assert sq.coeff(2, 2) == 1


def test_mul_truncates():
    y = series_from(0, 1, {(0, 1): 1})
    assert (y * y).is_zero()


def test_sub_self_is_zero():
    a = series_from(3, 3, {(0, 0): 5, (2, 1): -7, (3, 3): 2})
    assert (a - a).is_zero()


def test_box_mismatch_is_error():
    a = BiSeries.one(2, 2)
    b = BiSeries.one(2, 3)
    with pytest.raises(BoxMismatchError):
        a + b
    with pytest.raises(BoxMismatchError):
        a * b


# ----------------------------------------------------------------------
# shift
# ----------------------------------------------------------------------

def test_shift_moves_unit():
    assert BiSeries.one(2, 2).shift(1, 1).coeff(1, 1) == 1


def test_shift_out_of_box_drops():
    assert BiSeries.one(2, 2).shift(3, 0).is_zero()


def test_shift_identity():
    a = series_from(2, 3, {(1, 2): 4, (0, 0): -1})
    assert a.shift(0, 0) == a


def test_shift_negative_rejected():
    with pytest.raises(ValueError):
        BiSeries.one(2, 2).shift(-1, 0)


# ----------------------------------------------------------------------
# pow
# ----------------------------------------------------------------------

def test_pow_zero_is_one():
    a = series_from(2, 2, {(1, 0): 3, (0, 1): -2})
    assert a ** 0 == BiSeries.one(2, 2)


def test_pow_binomial():
    # (1 + y)^4 has y^2 coefficient 6
    a = series_from(0, 4, {(0, 0): 1, (0, 1): 1})
    assert (a ** 4).coeff(0, 2) == 6


def test_pow_two_equals_mul():
    a = series_from(3, 3, {(0, 0): 2, (1, 1): -3, (2, 0): 1, (0, 3): 7})
    assert a ** 2 == a * a


def test_pow_negative_rejected():
    with pytest.raises(ValueError):
        BiSeries.one(1, 1) ** -1


# ----------------------------------------------------------------------
# invert / divide
# ----------------------------------------------------------------------

def test_invert_one():
    one = BiSeries.one(3, 3)
    assert one.invert() == one


def test_invert_geometric():
    # 1/(1+y) = 1 - y + y^2 - y^3
    a = series_from(0, 3, {(0, 0): 1, (0, 1): 1})
    inv = a.invert()
    assert [inv.coeff(0, d) for d in range(4)] == [1, -1, 1, -1]


def test_invert_requires_unit():
    with pytest.raises(ValueError):
        series_from(1, 1, {(0, 0): 2}).invert()
    with pytest.raises(ValueError):
        BiSeries.zero(1, 1).invert()


def test_invert_negative_unit():
    a = series_from(1, 2, {(0, 0): -1, (0, 1): 3, (1, 1): -2})
    assert a * a.invert() == BiSeries.one(1, 2)


def test_divide_roundtrip():
    num = series_from(2, 3, {(0, 0): 4, (1, 1): -2, (2, 3): 9})
    den = series_from(2, 3, {(0, 0): 1, (1, 0): 5, (0, 2): -3})
    assert den * num.divide(den) == num


# ----------------------------------------------------------------------
# property tests: ring axioms, packed product vs reference
# ----------------------------------------------------------------------

@st.composite
def boxed_series(draw, max_c=4, max_d=4):
    cmax = draw(st.integers(0, max_c))
    dmax = draw(st.integers(0, max_d))
    coeff = st.integers(-50, 50)
    rows = [[draw(coeff) for _ in range(cmax + 1)] for _ in range(dmax + 1)]
    return BiSeries(cmax, dmax, tuple(tuple(r) for r in rows))


@st.composite
def series_triple(draw):
    a = draw(boxed_series())
    coeff = st.integers(-50, 50)

    def same_box():
        rows = [[draw(coeff) for _ in range(a.cmax + 1)]
                for _ in range(a.dmax + 1)]
        return BiSeries(a.cmax, a.dmax, tuple(tuple(r) for r in rows))

    return a, same_box(), same_box()


@settings(max_examples=60, deadline=None)
@given(series_triple())
def test_ring_axioms(triple):
    a, b, c = triple
    assert a + b == b + a
    assert (a + b) + c == a + (b + c)
    assert a * b == b * a
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c


@settings(max_examples=80, deadline=None)
@given(series_triple())
def test_packed_product_matches_reference(triple):
    a, b, _ = triple
    assert a * b == mul_reference(a, b)


@settings(max_examples=40, deadline=None)
@given(boxed_series(max_c=3, max_d=3))
def test_truncation_exactness(a):
    # product in a larger box restricted to the small box must agree
    big_rows = [list(row) + [0, 0] for row in a._rows] + \
               [[0] * (a.cmax + 3), [0] * (a.cmax + 3)]
    big = BiSeries(a.cmax + 2, a.dmax + 2, tuple(tuple(r) for r in big_rows))
    small = a * a
    large = big * big
    for c in range(a.cmax + 1):
        for d in range(a.dmax + 1):
            assert small.coeff(c, d) == large.coeff(c, d)


@settings(max_examples=40, deadline=None)
@given(boxed_series())
def test_invert_is_two_sided(a):
    # force a unit constant term regardless of the drawn series
    rows = [list(r) for r in a._rows]
    rows[0][0] = 1
    u = BiSeries(a.cmax, a.dmax, tuple(tuple(r) for r in rows))
    one = BiSeries.one(a.cmax, a.dmax)
    assert u * u.invert() == one
    assert u.invert() * u == one


def test_grid_layout_matches_coeff():
    a = series_from(2, 3, {(2, 1): 7, (0, 3): -4})
    g = a.grid()
    assert g[2][1] == 7
    assert g[0][3] == -4
    assert len(g) == 3 and len(g[0]) == 4


def test_terms_iterates_nonzero_only():
    a = series_from(2, 2, {(1, 1): 5})
    assert list(a.terms()) == [(1, 1, 5)]
