from fractions import Fraction

from hypothesis import given, settings
from hypothesis import strategies as st
from sympy import Matrix, Rational

from coembed.linalg import nullspace, rref, same_span, solve_affine

entries = st.fractions(min_value=-5, max_value=5, max_denominator=3)


def matrices(rows, cols):
    return st.lists(
        st.lists(entries, min_size=cols, max_size=cols), min_size=rows, max_size=rows
    )


def to_sympy(m):
    return Matrix([[Rational(c.numerator, c.denominator) for c in row] for row in m])


@given(matrices(4, 5))
@settings(max_examples=80, deadline=None)
def test_rank_and_nullity_match_sympy(m):
    _, pivots = rref(m)
    assert len(pivots) == to_sympy(m).rank()
    kernel = nullspace(m, 5, Fraction(1))
    assert len(kernel) == 5 - len(pivots)
    for vec in kernel:
        for row in m:
            assert sum(a * b for a, b in zip(row, vec)) == 0


@given(matrices(4, 4), st.lists(entries, min_size=4, max_size=4))
@settings(max_examples=80, deadline=None)
def test_solve_affine_agrees_with_sympy(m, x_true):
    rhs = [sum(a * b for a, b in zip(row, x_true)) for row in m]
    particular, kernel = solve_affine(m, rhs, 4, Fraction(1))
    assert particular is not None
    for row, b in zip(m, rhs):
        assert sum(a * v for a, v in zip(row, particular)) == b


@given(matrices(3, 4))
@settings(max_examples=50, deadline=None)
def test_infeasible_detected(m):
    # build an rhs outside the column span whenever the rank allows it
    sm = to_sympy(m)
    if sm.rank() == 3:
        return  # full row rank: every rhs is consistent
    rhs = [Fraction(1), Fraction(0), Fraction(0)]
    particular, _ = solve_affine(m, rhs, 4, Fraction(1))
    expect = to_sympy(m).row_join(Matrix([Rational(1), Rational(0), Rational(0)]))
    consistent = expect.rank() == sm.rank()
    assert (particular is not None) == consistent


def test_same_span():
    a = [[Fraction(1), Fraction(0)], [Fraction(0), Fraction(1)]]
    b = [[Fraction(1), Fraction(1)], [Fraction(1), Fraction(-1)]]
    assert same_span(a, b, 2)
    c = [[Fraction(1), Fraction(1)]]
    assert not same_span(a, c, 2)
