import itertools

import pytest
from hypothesis import given, settings

from coembed.algebra import AlgebraPresentation
from coembed.arith import QQ
from coembed.errors import UnsupportedKindError
from coembed.expressions import parse_polynomial as pp
from coembed.expressions import poly_str
from coembed.ideals import (
    IdealPresentation,
    groebner_basis,
    ideal_member,
    truncated_ideal_basis,
)

from conftest import make_rng, polynomials, seeded_polynomials


class TestGroebner:
    def test_single_monomial(self, comm2):
        J = IdealPresentation(comm2, (pp("x*y", comm2),))
        assert [poly_str(g) for g in groebner_basis(J)] == ["x*y"]

    def test_spec_example(self, comm2):
        J = IdealPresentation(comm2, (pp("x^2 - y", comm2), pp("x^3", comm2)))
        assert [poly_str(g) for g in groebner_basis(J)] == ["x^2 - y", "x*y", "y^2"]

    def test_linear_generators(self, comm2):
        J = IdealPresentation(comm2, (pp("x", comm2), pp("y", comm2)))
        assert [poly_str(g) for g in groebner_basis(J)] == ["x", "y"]

    def test_input_order_invariance(self, comm2):
        gens = [pp("x^2 - y", comm2), pp("x^3", comm2), pp("x*y^2 + x", comm2)]
        bases = set()
        for perm in itertools.permutations(gens):
            J = IdealPresentation(comm2, perm)
            bases.add(tuple(poly_str(g) for g in groebner_basis(J)))
        assert len(bases) == 1

    def test_rejects_noncommutative(self, usb2):
        J = IdealPresentation(usb2, (pp("E", usb2),))
        with pytest.raises(UnsupportedKindError):
            groebner_basis(J)


class TestMembership:
    def test_monomial_multiple(self, comm2):
        J = IdealPresentation(comm2, (pp("x*y", comm2),))
        assert ideal_member(J, pp("x^2*y", comm2))
        assert not ideal_member(J, pp("x^2", comm2))

    def test_derived_membership(self, comm2):
        J = IdealPresentation(comm2, (pp("x^2 - y", comm2), pp("x^3", comm2)))
        # y^2 = (x*y)*x - (x^2 - y)*y - ... : verified through the GB oracle
        assert ideal_member(J, pp("y^2", comm2))
        assert not ideal_member(J, pp("y", comm2))

    def test_usb2_kernel(self, usb2):
        J = IdealPresentation(usb2, (pp("E", usb2),))
        assert ideal_member(J, pp("H^2*E", usb2))
        assert ideal_member(J, pp("H*E - E^2", usb2))
        assert not ideal_member(J, pp("H", usb2))

    def test_explicit_combinations_are_members(self, comm2):
        rng = make_rng(7)
        gens = (pp("x^2 - y", comm2), pp("x^3", comm2))
        J = IdealPresentation(comm2, gens)
        for _ in range(25):
            combo = comm2.zero()
            for g in gens:
                combo = combo + seeded_polynomials(comm2, rng, max_degree=2) * g
            assert ideal_member(J, combo)

    def test_two_sided_closure_pbw(self, usb2):
        rng = make_rng(11)
        J = IdealPresentation(usb2, (pp("E", usb2),))
        for _ in range(25):
            a = seeded_polynomials(usb2, rng, max_degree=2)
            b = seeded_polynomials(usb2, rng, max_degree=2)
            product = a * pp("E", usb2) * b
            assert ideal_member(J, product)

    def test_free_commutator_ideal(self, free2):
        J = IdealPresentation(free2, (pp("x*y - y*x", free2),))
        # telescoping writes any [p, y] inside the bounded span
        assert ideal_member(J, pp("x*x*y - y*x*x", free2))
        assert ideal_member(J, pp("x*y*x*y - y*x*y*x", free2))
        assert not ideal_member(J, pp("x*y", free2))


class TestTruncatedBasis:
    def test_principal_linear(self, comm2):
        J = IdealPresentation(comm2, (pp("y", comm2),))
        assert [poly_str(g) for g in truncated_ideal_basis(J, 2)] == [
            "y",
            "x*y",
            "y^2",
        ]

    def test_principal_xy(self, comm2):
        J = IdealPresentation(comm2, (pp("x*y", comm2),))
        assert [poly_str(g) for g in truncated_ideal_basis(J, 3)] == [
            "x*y",
            "x^2*y",
            "x*y^2",
        ]

    def test_usb2_kernel_basis(self, usb2):
        J = IdealPresentation(usb2, (pp("E", usb2),))
        assert [poly_str(g) for g in truncated_ideal_basis(J, 2)] == [
            "E",
            "H*E",
            "E^2",
        ]

    def test_every_element_is_a_member(self, usb2, comm2):
        for algebra, gen in ((usb2, "E"), (comm2, "x*y")):
            J = IdealPresentation(algebra, (pp(gen, algebra),))
            for b in truncated_ideal_basis(J, 4):
                assert ideal_member(J, b)

    def test_bounded_products_lie_in_span(self, usb2):
        rng = make_rng(3)
        J = IdealPresentation(usb2, (pp("E", usb2),))
        basis = truncated_ideal_basis(J, 5)
        from coembed.ideals import _reduce_by_echelon

        for _ in range(20):
            a = seeded_polynomials(usb2, rng, max_degree=2)
            b = seeded_polynomials(usb2, rng, max_degree=2)
            product = a * pp("E", usb2) * b
            if product.degree() <= 5:
                assert _reduce_by_echelon(product, basis).is_zero()

    def test_zero_ideal(self, comm2):
        J = IdealPresentation(comm2, ())
        assert truncated_ideal_basis(J, 3) == ()
        assert not ideal_member(J, pp("x", comm2))
        assert ideal_member(J, comm2.zero())


class TestQuotientAmbient:
    def test_ideal_in_quotient(self, double_point):
        J = IdealPresentation(double_point, (pp("y", double_point),))
        assert ideal_member(J, pp("y^2", double_point))
        assert not ideal_member(J, pp("x", double_point))
        basis = truncated_ideal_basis(J, 2)
        assert [poly_str(b) for b in basis] == ["y", "y^2"]
