"""Kaehler differentials of commutative quotients, presented by the Jacobian
(conormal) rows of the relation ideal, with the module-map/derivation
correspondence and the induced map on differentials."""
from __future__ import annotations

from dataclasses import dataclass

from .algebra import Polynomial, partial_derivative
from .derivations import Derivation, _PolySystem, _canonical_basis
from .errors import UnsupportedKindError
from .linalg import nullspace, solve_affine


@dataclass(frozen=True)
class KaehlerPresentation:
    """Free module on the symbols dx_1..dx_n modulo one row of relations per
    ideal generator: row_k = (dr_k/dx_1, ..., dr_k/dx_n) reduced mod I."""

    base: object
    rows: tuple  # tuple of tuples of base elements

    @property
    def rank(self):
        return self.base.ngens


def kaehler_presentation(B):
    if B.kind != "commutative":
        raise UnsupportedKindError("Kaehler presentations need a commutative algebra")
    rows = []
    for r in B.relations:
        row = tuple(
            B.project(partial_derivative(r, i)) for i in range(B.ngens)
        )
        rows.append(row)
    return KaehlerPresentation(B, tuple(rows))


@dataclass(frozen=True)
class CorrespondenceReport:
    degree_bound: int
    module_maps: tuple  # each a tuple (f_1, ..., f_n) over the base
    derivations: tuple  # matched derivation basis, D(x_i) = f_i
    dims: dict


def hom_der_correspondence(presentation, d):
    """Basis of the module maps Omega -> B with entries of degree <= d,
    paired with the corresponding derivations D = f o d.

    A tuple (f_1..f_n) is a module map iff sum_i f_i * dr_k/dx_i = 0 in B for
    every relation row; the matched derivation sends x_i to f_i.
    """
    B = presentation.base
    monomials = B.monomials_up_to(d)
    labels = [(i, m) for i in range(B.ngens) for m in monomials]
    one = B.field.one
    unit = {m: Polynomial(B, {m: one}) for m in monomials}

    system = _PolySystem(B.field)
    for row in presentation.rows:
        contribs = {}
        for col, (i, m) in enumerate(labels):
            value = unit[m] * row[i]
            if not value.is_zero():
                contribs[col] = value
        system.add_block(contribs, B.zero())
    rows, _ = system.assemble(len(labels))
    vectors = _canonical_basis(nullspace(rows, len(labels), one), len(labels), one)

    maps, derivations = [], []
    for vec in vectors:
        per_gen = [dict() for _ in range(B.ngens)]
        for col, (i, m) in enumerate(labels):
            if vec[col]:
                per_gen[i][m] = vec[col]
        entries = tuple(Polynomial(B, terms) for terms in per_gen)
        maps.append(entries)
        derivations.append(Derivation(B, entries))
    dims = {"unknowns": len(labels), "dim": len(maps)}
    return CorrespondenceReport(d, tuple(maps), tuple(derivations), dims)


def induced_map(hom):
    """Matrix of the induced map on Kaehler differentials: row i expresses
    the image of dx_i as sum_j (d pi(x_i)/dy_j) dy_j over the codomain."""
    A, B = hom.domain, hom.codomain
    if A.kind != "commutative" or B.kind != "commutative":
        raise UnsupportedKindError("induced map needs commutative presentations")
    rows = []
    for i in range(A.ngens):
        image = B.lift(hom.images[i])
        rows.append(
            tuple(B.project(partial_derivative(image, j)) for j in range(B.ngens))
        )
    return tuple(rows)


def differential_row(p):
    """The universal derivation applied to an element, as a Jacobian row over
    the base (entries reduced mod the relation ideal)."""
    B = p.algebra
    lifted = B.lift(p)
    return tuple(B.project(partial_derivative(lifted, j)) for j in range(B.ngens))


def induced_map_surjective(hom, matrix, d):
    """Exact check that each dy_j lies in the codomain-module span of the
    induced-map rows with coefficients of degree <= d."""
    B = hom.codomain
    monomials = B.monomials_up_to(d)
    one = B.field.one
    unit = {m: Polynomial(B, {m: one}) for m in monomials}
    labels = [(i, m) for i in range(len(matrix)) for m in monomials]
    for j in range(B.ngens):
        system = _PolySystem(B.field)
        for comp in range(B.ngens):
            contribs = {}
            for col, (i, m) in enumerate(labels):
                value = unit[m] * matrix[i][comp]
                if not value.is_zero():
                    contribs[col] = value
            rhs = B.one() if comp == j else B.zero()
            system.add_block(contribs, rhs)
        rows, rhs = system.assemble(len(labels))
        particular, _ = solve_affine(rows, rhs, len(labels), one)
        if particular is None:
            return False
    return True
