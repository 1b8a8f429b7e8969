from fractions import Fraction

import pytest
from hypothesis import given, settings

from coembed.algebra import (
    AlgebraPresentation,
    check_pbw_confluence,
    expvec_key,
    normal_form,
    partial_derivative,
    word_key,
)
from coembed.arith import QQ
from coembed.errors import PresentationError, UnsupportedKindError
from coembed.expressions import parse_polynomial as pp

from conftest import polynomials


class TestMonomialOrder:
    def test_degree_dominates(self):
        assert expvec_key((2, 0)) > expvec_key((0, 1))

    def test_degrevlex_ties(self):
        # later-declared generators are larger: y^2 > x*y > x^2
        assert expvec_key((0, 2)) > expvec_key((1, 1)) > expvec_key((2, 0))

    def test_pbw_tail_comparison(self):
        # x^2 must sit below y*z so Heisenberg-like tails are admissible
        assert expvec_key((2, 0, 0)) < expvec_key((0, 1, 1))
        assert word_key((0, 0)) < word_key((1, 2))


class TestNormalForm:
    def test_usb2_rule(self, usb2):
        got = normal_form(usb2, pp("E*H", usb2.cover()))
        assert got == pp("H*E - E", usb2)

    def test_commutative_merge(self, comm2):
        assert pp("y*x", comm2) == pp("x*y", comm2)

    def test_weyl_two_steps(self):
        cover = AlgebraPresentation("W.cover", "free", ("x", "d"), QQ)
        weyl = AlgebraPresentation(
            "W", "pbw", ("x", "d"), QQ, (pp("d*x - x*d - 1", cover),)
        )
        assert normal_form(weyl, pp("d*x*d", cover)) == pp("x*d^2 + d", weyl)

    def test_idempotent(self, usb2):
        p = pp("H*E^2 - 3*H^2 + 1/2*E", usb2)
        assert usb2.project(p) == p

    @given(
        polynomials(
            AlgebraPresentation(
                "U",
                "pbw",
                ("H", "E"),
                QQ,
                (
                    pp(
                        "E*H - H*E + E",
                        AlgebraPresentation("Uc", "free", ("H", "E"), QQ),
                    ),
                ),
            )
        )
    )
    @settings(max_examples=40)
    def test_projection_idempotent_random(self, p):
        assert p.algebra.project(p) == p


class TestMultiplicativity:
    @given(
        polynomials(
            AlgebraPresentation(
                "U",
                "pbw",
                ("H", "E"),
                QQ,
                (
                    pp(
                        "E*H - H*E + E",
                        AlgebraPresentation("Uc", "free", ("H", "E"), QQ),
                    ),
                ),
            ),
            max_degree=2,
        ),
        polynomials(
            AlgebraPresentation(
                "U",
                "pbw",
                ("H", "E"),
                QQ,
                (
                    pp(
                        "E*H - H*E + E",
                        AlgebraPresentation("Uc", "free", ("H", "E"), QQ),
                    ),
                ),
            ),
            max_degree=2,
        ),
    )
    @settings(max_examples=40)
    def test_pbw_product_associates_with_projection(self, p, q):
        # multiplying canonical forms agrees with rewriting the full product
        A = p.algebra
        lifted = A.lift(p) * A.lift(q)
        assert A.project(lifted) == p * q

    @given(
        polynomials(AlgebraPresentation("C", "commutative", ("x", "y"), QQ)),
        polynomials(AlgebraPresentation("C", "commutative", ("x", "y"), QQ)),
    )
    @settings(max_examples=40)
    def test_commutative_product_commutes(self, p, q):
        assert p * q == q * p

    @given(
        polynomials(AlgebraPresentation("F", "free", ("x", "y"), QQ), max_degree=2, max_terms=3),
        polynomials(AlgebraPresentation("F", "free", ("x", "y"), QQ), max_degree=2, max_terms=3),
        polynomials(AlgebraPresentation("F", "free", ("x", "y"), QQ), max_degree=2, max_terms=3),
    )
    @settings(max_examples=30)
    def test_free_product_associates(self, p, q, r):
        assert (p * q) * r == p * (q * r)


class TestPartialDerivative:
    def test_power_rule(self, comm2):
        assert partial_derivative(pp("x^2*y", comm2), "x") == pp("2*x*y", comm2)

    def test_absent_variable(self, comm2):
        assert partial_derivative(pp("x^2", comm2), "y").is_zero()

    def test_linearity(self, comm2):
        got = partial_derivative(pp("x*y + x^3", comm2), "x")
        assert got == pp("y + 3*x^2", comm2)

    def test_rejects_noncommutative(self, free2):
        with pytest.raises(UnsupportedKindError):
            partial_derivative(pp("x", free2), "x")

    @given(
        polynomials(AlgebraPresentation("C", "commutative", ("x", "y"), QQ)),
        polynomials(AlgebraPresentation("C", "commutative", ("x", "y"), QQ)),
    )
    @settings(max_examples=60)
    def test_leibniz(self, p, q):
        dp = partial_derivative(p, 0)
        dq = partial_derivative(q, 0)
        assert partial_derivative(p * q, 0) == dp * q + p * dq


class TestConfluence:
    def test_usb2_vacuous(self, usb2):
        assert check_pbw_confluence(usb2).ok

    def test_so3(self):
        cover = AlgebraPresentation("so3c", "free", ("x", "y", "z"), QQ)
        rels = tuple(
            pp(s, cover)
            for s in ("y*x - x*y + z", "z*y - y*z + x", "z*x - x*z - y")
        )
        so3 = AlgebraPresentation("so3", "pbw", ("x", "y", "z"), QQ, rels)
        assert check_pbw_confluence(so3).ok

    def test_degree_two_tail(self):
        cover = AlgebraPresentation("h3c", "free", ("x", "y", "z"), QQ)
        rels = tuple(
            pp(s, cover) for s in ("y*x - x*y", "z*x - x*z", "z*y - y*z - x^2")
        )
        algebra = AlgebraPresentation("h3", "pbw", ("x", "y", "z"), QQ, rels)
        report = check_pbw_confluence(algebra)
        assert report.ok
        # the critical word z*y*x resolves to the same normal form both ways
        assert normal_form(algebra, pp("z*y*x", cover)) == pp("x*y*z + x^3", algebra)

    def test_broken_jacobi_is_rejected(self):
        cover = AlgebraPresentation("badc", "free", ("x", "y", "z"), QQ)
        rels = tuple(
            pp(s, cover)
            for s in ("y*x - x*y + z", "z*y - y*z + x", "z*x - x*z - x")
        )
        bad = AlgebraPresentation("bad", "pbw", ("x", "y", "z"), QQ, rels)
        report = check_pbw_confluence(bad)
        assert not report.ok
        (k, j, i, diff) = report.failures[0]
        assert (k, j, i) == (2, 1, 0)
        assert diff == pp("-z", bad) or diff == pp("z", bad)


class TestPresentationValidation:
    def test_free_kind_rejects_relations(self):
        cover = AlgebraPresentation("Fc", "free", ("x", "y"), QQ)
        with pytest.raises(PresentationError):
            AlgebraPresentation("F", "free", ("x", "y"), QQ, (pp("x*y", cover),))

    def test_reserved_names(self):
        with pytest.raises(PresentationError):
            AlgebraPresentation("A", "commutative", ("i",), QQ)
        with pytest.raises(PresentationError):
            AlgebraPresentation("A", "commutative", ("h",), QQ)

    def test_pbw_needs_all_pairs(self):
        cover = AlgebraPresentation("Pc", "free", ("x", "y", "z"), QQ)
        with pytest.raises(PresentationError):
            AlgebraPresentation(
                "P", "pbw", ("x", "y", "z"), QQ, (pp("y*x - x*y", cover),)
            )

    def test_pbw_tail_degree_bound(self):
        cover = AlgebraPresentation("Pc", "free", ("x", "y"), QQ)
        with pytest.raises(PresentationError):
            AlgebraPresentation(
                "P", "pbw", ("x", "y"), QQ, (pp("y*x - x*y - x^3", cover),)
            )

    def test_pbw_tail_must_be_smaller(self):
        cover = AlgebraPresentation("Pc", "free", ("x", "y"), QQ)
        with pytest.raises(PresentationError):
            # tail y^2 is above the sorted word x*y in the order
            AlgebraPresentation(
                "P", "pbw", ("x", "y"), QQ, (pp("y*x - x*y - y^2", cover),)
            )


class TestUsb2Identity:
    def test_ad_h_eigenvectors(self, usb2):
        # [H, H^j E^k] = k H^j E^k, the paper's rescaled commutator identity
        H = pp("H", usb2)
        for j in range(0, 3):
            for k in range(1, 4):
                basis = pp("H", usb2) ** j * pp("E", usb2) ** k
                scaled = Fraction(1, k) * basis
                assert H * scaled - scaled * H == basis
