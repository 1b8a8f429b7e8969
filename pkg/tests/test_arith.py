from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from coembed.arith import (
    I,
    QI,
    QQ,
    GaussianRational,
    HbarSeries,
    series_combine,
)
from coembed.errors import ScalarError, SeriesMismatchError

rationals = st.fractions(min_value=-20, max_value=20, max_denominator=12)
gaussians = st.tuples(rationals, rationals).map(lambda t: GaussianRational(*t))


def test_i_squared():
    assert I * I == GaussianRational(-1)
    assert QI.coerce(1) + I * I == QI.zero


def test_canonical_forms():
    assert GaussianRational(Fraction(2, 4)) == GaussianRational(Fraction(1, 2))
    assert QQ.coerce(Fraction(-3, -6)) == Fraction(1, 2)
    assert hash(GaussianRational(Fraction(1, 2))) == hash(Fraction(1, 2))


def test_q_rejects_imaginary():
    with pytest.raises(ScalarError):
        QQ.coerce(GaussianRational(0, 1))
    assert QQ.coerce(GaussianRational(3, 0)) == Fraction(3)


@given(gaussians, gaussians, gaussians)
def test_field_axioms_qi(a, b, c):
    assert (a + b) + c == a + (b + c)
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a + b == b + a
    assert a * b == b * a
    if a != GaussianRational(0):
        inv = GaussianRational(1) / a
        assert a * inv == GaussianRational(1)


@given(rationals, rationals)
def test_embedding_q_into_qi_is_a_ring_hom(p, q):
    emb = lambda r: QI.coerce(r)
    assert emb(p + q) == emb(p) + emb(q)
    assert emb(p * q) == emb(p) * emb(q)


def test_division():
    a = GaussianRational(1, 1)
    assert a / a == GaussianRational(1)
    assert GaussianRational(2) / GaussianRational(0, 1) == GaussianRational(0, -2)
    with pytest.raises(ZeroDivisionError):
        a / GaussianRational(0)


def test_powers():
    assert I ** 4 == GaussianRational(1)
    assert I ** -1 == GaussianRational(0, -1)
    assert GaussianRational(2) ** -2 == GaussianRational(Fraction(1, 4))


# -- hbar series ---------------------------------------------------------------


def series(order, *coeffs):
    return HbarSeries(order, [Fraction(c) for c in coeffs])


def test_truncation_kills_h_squared_at_order_1():
    one_plus = series(1, 1, 1)
    one_minus = series(1, 1, -1)
    assert series_combine(one_plus, one_minus, "mul") == series(1, 1, 0)


def test_exact_expansion_at_order_2():
    one_plus = series(2, 1, 1, 0)
    one_minus = series(2, 1, -1, 0)
    assert series_combine(one_plus, one_minus, "mul") == series(2, 1, 0, -1)


def test_series_order_mismatch():
    with pytest.raises(SeriesMismatchError):
        series_combine(series(1, 1, 0), series(2, 1, 0, 0), "add")


def test_series_space_mismatch():
    from coembed.algebra import AlgebraPresentation

    A = AlgebraPresentation("A", "commutative", ("x",), QQ)
    scalar_series = series(1, 1, 0)
    poly_series = HbarSeries(1, [A.one(), A.zero()])
    with pytest.raises(SeriesMismatchError):
        series_combine(scalar_series, poly_series, "add")


small_series = st.lists(rationals, min_size=3, max_size=3).map(
    lambda cs: HbarSeries(2, cs)
)


@given(small_series, small_series, small_series)
@settings(max_examples=60)
def test_series_mul_associative_commutative(f, g, h):
    assert (f * g) * h == f * (g * h)
    assert f * g == g * f
    assert f * (g + h) == f * g + f * h
