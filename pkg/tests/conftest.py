import random

import pytest
from hypothesis import strategies as st

from coembed.algebra import AlgebraPresentation, Polynomial
from coembed.arith import QI, QQ, GaussianRational
from coembed.expressions import parse_polynomial
from fractions import Fraction


@pytest.fixture(scope="session")
def comm2():
    return AlgebraPresentation("Comm2", "commutative", ("x", "y"), QQ)


@pytest.fixture(scope="session")
def free2():
    return AlgebraPresentation("Free2", "free", ("x", "y"), QQ)


@pytest.fixture(scope="session")
def usb2():
    cover = AlgebraPresentation("U.cover", "free", ("H", "E"), QQ)
    rel = parse_polynomial("E*H - H*E + E", cover)
    return AlgebraPresentation("Usb2", "pbw", ("H", "E"), QQ, (rel,))


@pytest.fixture(scope="session")
def double_point():
    cover = AlgebraPresentation("DP.cover", "commutative", ("x", "y"), QQ)
    return AlgebraPresentation(
        "DP", "commutative", ("x", "y"), QQ, (parse_polynomial("x*y", cover),)
    )


@pytest.fixture(scope="session")
def plane_qi():
    return AlgebraPresentation("PlaneQi", "commutative", ("x", "y"), QI)


def scalar_strategy(field):
    fractions = st.fractions(min_value=-6, max_value=6, max_denominator=4)
    if field.tag == "Qi":
        return st.tuples(fractions, fractions).map(lambda t: GaussianRational(*t))
    return fractions


def polynomials(algebra, max_degree=3, max_terms=4):
    monos = algebra.monomials_up_to(max_degree)
    term = st.tuples(st.sampled_from(monos), scalar_strategy(algebra.field))
    return st.lists(term, max_size=max_terms).map(
        lambda items: Polynomial.make(algebra, items)
    )


def seeded_polynomials(algebra, rng, max_degree=3, max_terms=3, coeff_bound=6):
    """Deterministic random polynomial for the counted acceptance loops."""
    monos = algebra.monomials_up_to(max_degree)
    items = []
    for _ in range(rng.randint(0, max_terms)):
        num = rng.randint(-coeff_bound, coeff_bound)
        den = rng.randint(1, 4)
        coeff = Fraction(num, den)
        if algebra.field.tag == "Qi":
            coeff = GaussianRational(coeff, Fraction(rng.randint(-3, 3)))
        items.append((rng.choice(monos), coeff))
    return Polynomial.make(algebra, items)


def make_rng(seed):
    return random.Random(seed)
