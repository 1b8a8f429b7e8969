"""Polynomial Poisson structures on affine space: brackets, Jacobi
verification on coordinate triples, Poisson/Hamiltonian vector-field solvers
at bounded degree, and coisotropy/normalizer classification.

The Poisson-vector-field solver imposes the defining identity only on
coordinate pairs.  That is sufficient: for a vector field X the defect
Phi(f,g) = X({f,g}) - {Xf,g} - {f,Xg} is a derivation in each argument
(expand X and the bracket by Leibniz; all second-order terms cancel), so it
vanishes everywhere once it vanishes on generators.
"""
from __future__ import annotations

from dataclasses import dataclass, field as dc_field

from .algebra import AlgebraPresentation, Polynomial, partial_derivative
from .derivations import Derivation, SolveReport, _PolySystem, _canonical_basis
from .errors import AlgebraMismatchError, JacobiError, UnsupportedKindError
from .ideals import IdealPresentation, ideal_member, truncated_ideal_basis
from .linalg import nullspace, solve_affine
from .morphisms import AlgebraHom


@dataclass(frozen=True)
class PoissonStructure:
    """Antisymmetric polynomial bivector on a relation-free commutative
    polynomial algebra, stored as the upper-triangular components P_ij."""

    algebra: AlgebraPresentation
    components: tuple  # ((i, j), P_ij) with i < j, sorted
    _state: dict = dc_field(default_factory=dict, compare=False, repr=False)

    def __post_init__(self):
        A = self.algebra
        if A.kind != "commutative" or A.relations:
            raise UnsupportedKindError(
                "Poisson structures live on relation-free commutative algebras"
            )
        table = {}
        for (i, j), p in self.components:
            if not (0 <= i < j < A.ngens):
                raise AlgebraMismatchError(f"bad component index pair ({i}, {j})")
            if p.algebra != A:
                raise AlgebraMismatchError("component not over the ambient algebra")
            if not p.is_zero():
                table[(i, j)] = p
        object.__setattr__(
            self, "components", tuple(sorted(table.items(), key=lambda kv: kv[0]))
        )
        self._state["table"] = table

    @classmethod
    def from_dict(cls, algebra, table):
        items = []
        for (i, j), p in table.items():
            i = i if isinstance(i, int) else algebra.gen_index(i)
            j = j if isinstance(j, int) else algebra.gen_index(j)
            items.append(((i, j), p))
        return cls(algebra, tuple(items))

    def component(self, i, j):
        """P_ij with antisymmetry filled in."""
        table = self._state["table"]
        if i == j:
            return self.algebra.zero()
        if i < j:
            return table.get((i, j), self.algebra.zero())
        return -table.get((j, i), self.algebra.zero())

    def bracket(self, f, g):
        A = self.algebra
        out = A.zero()
        for (i, j), p in self.components:
            out = out + p * (
                partial_derivative(f, i) * partial_derivative(g, j)
                - partial_derivative(f, j) * partial_derivative(g, i)
            )
        return out


def poisson_bracket(structure, f, g):
    return structure.bracket(f, g)


@dataclass(frozen=True)
class JacobiReport:
    ok: bool
    failures: tuple  # (i, j, k, jacobiator)


def jacobi_check(structure):
    """Jacobi identity on coordinate triples (sufficient: the Jacobiator is a
    derivation in each argument)."""
    cached = structure._state.get("jacobi")
    if cached is not None:
        return cached
    A = structure.algebra
    failures = []
    for k in range(A.ngens):
        for j in range(k):
            for i in range(j):
                xi, xj, xk = A.gen(i), A.gen(j), A.gen(k)
                jac = (
                    structure.bracket(xi, structure.bracket(xj, xk))
                    + structure.bracket(xj, structure.bracket(xk, xi))
                    + structure.bracket(xk, structure.bracket(xi, xj))
                )
                if not jac.is_zero():
                    failures.append((i, j, k, jac))
    report = JacobiReport(not failures, tuple(failures))
    structure._state["jacobi"] = report
    return report


def hamiltonian_vector_field(structure, f):
    """X_f = {f, .} as a derivation of the ambient algebra."""
    A = structure.algebra
    images = tuple(structure.bracket(f, A.gen(i)) for i in range(A.ngens))
    return Derivation(A, images)


def is_hamiltonian(structure, X, d):
    """Potential f of degree <= d with {f, x_i} = X(x_i), or None within the
    bound.  The representative has all free coefficients (constants) zeroed."""
    A = structure.algebra
    monomials = A.monomials_up_to(d)
    one = A.field.one
    system = _PolySystem(A.field)
    for i in range(A.ngens):
        gen = A.gen(i)
        contribs = {}
        for col, m in enumerate(monomials):
            value = structure.bracket(Polynomial(A, {m: one}), gen)
            if not value.is_zero():
                contribs[col] = value
        system.add_block(contribs, X.image_of(i))
    rows, rhs = system.assemble(len(monomials))
    particular, _ = solve_affine(rows, rhs, len(monomials), one)
    if particular is None:
        return None
    return Polynomial(A, {m: c for m, c in zip(monomials, particular) if c})


@dataclass(frozen=True)
class QuotientRestriction:
    """Constrain a vector field to be tangent to V(J) and to push forward to
    a prescribed field on the quotient."""

    ideal: IdealPresentation
    hom: AlgebraHom
    target: Derivation


def quotient_of(ambient, ideal, name=None):
    """Quotient presentation by an ideal (same generators) with the witnessed
    quotient map."""
    if ideal.ambient != ambient:
        raise AlgebraMismatchError("ideal must live in the ambient algebra")
    relations = tuple(ambient.relations) + tuple(ambient.lift(g) for g in ideal.generators)
    B = AlgebraPresentation(
        name or f"{ambient.name}/J", "commutative", ambient.generators, ambient.field, relations
    )
    images = tuple(B.gen(i) for i in range(B.ngens))
    witnesses = tuple(ambient.gen(i) for i in range(ambient.ngens))
    hom = AlgebraHom(ambient, B, images, witnesses, ideal)
    return B, hom


def solve_poisson_vector_fields(structure, d, restriction=None):
    """All vector fields with coefficients of degree <= d satisfying the
    Poisson-field identity on coordinate pairs, optionally constrained to be
    tangent to an ideal and to push to a target field on the quotient."""
    verdict = jacobi_check(structure)
    if not verdict.ok:
        raise JacobiError("structure fails the Jacobi identity; solver undefined")
    A = structure.algebra
    monomials = A.monomials_up_to(d)
    labels = [(i, m) for i in range(A.ngens) for m in monomials]
    one = A.field.one
    unit = {m: Polynomial(A, {m: one}) for m in monomials}

    system = _PolySystem(A.field)
    constraints = ["poisson-field-on-coordinate-pairs"]
    notes = []
    for (i, j), p_ij in structure.components:
        contribs = {}
        for col, (k, m) in enumerate(labels):
            value = partial_derivative(p_ij, k) * unit[m]
            if k == i:
                value = value - structure.bracket(unit[m], A.gen(j))
            if k == j:
                value = value - structure.bracket(A.gen(i), unit[m])
            if not value.is_zero():
                contribs[col] = value
        system.add_block(contribs, A.zero())
    # pairs with P_ij = 0 still constrain: {Xx_i, x_j} + {x_i, Xx_j} = 0
    present = {pair for pair, _ in structure.components}
    for j in range(A.ngens):
        for i in range(j):
            if (i, j) in present:
                continue
            contribs = {}
            for col, (k, m) in enumerate(labels):
                value = A.zero()
                if k == i:
                    value = value - structure.bracket(unit[m], A.gen(j))
                if k == j:
                    value = value - structure.bracket(A.gen(i), unit[m])
                if not value.is_zero():
                    contribs[col] = value
            system.add_block(contribs, A.zero())

    aux_offset = len(labels)
    aux_count = 0
    if restriction is not None:
        ideal = restriction.ideal
        if ideal.ambient != A:
            raise AlgebraMismatchError("restriction ideal must live in the ambient")
        bound = d + ideal.max_generator_degree()
        basis_polys = truncated_ideal_basis(ideal, bound)
        constraints.append(f"tangent-to-ideal(deg<={bound})")
        notes.append(
            f"tangency linearized against the truncated basis at degree {bound}"
        )
        for g in ideal.generators:
            lifted = A.lift(g)
            contribs = {}
            for col, (k, m) in enumerate(labels):
                value = partial_derivative(lifted, k) * unit[m]
                if not value.is_zero():
                    contribs[col] = value
            for t, b in enumerate(basis_polys):
                contribs[aux_offset + aux_count + t] = -b
            aux_count += len(basis_polys)
            system.add_block(contribs, A.zero())
        hom, target = restriction.hom, restriction.target
        constraints.append("pushforward")
        image_cache = {m: hom.apply(unit[m]) for m in monomials}
        for i in range(A.ngens):
            contribs = {}
            for col, (k, m) in enumerate(labels):
                if k != i:
                    continue
                value = image_cache[m]
                if not value.is_zero():
                    contribs[col] = value
            system.add_block(contribs, target.apply(hom.images[i]))

    ncols = len(labels) + aux_count
    rows, rhs = system.assemble(ncols)

    def to_field(vec):
        per_gen = [dict() for _ in range(A.ngens)]
        for col, (i, m) in enumerate(labels):
            if vec[col]:
                per_gen[i][m] = vec[col]
        return Derivation(A, tuple(Polynomial(A, t) for t in per_gen))

    if restriction is None:
        vectors = _canonical_basis(nullspace(rows, ncols, one), len(labels), one)
        return SolveReport(
            d,
            tuple(constraints),
            "basis",
            tuple(to_field(v) for v in vectors),
            None,
            {"unknowns": len(labels), "aux": aux_count, "dim": len(vectors)},
            tuple(notes),
        )
    particular, kernel_vectors = solve_affine(rows, rhs, ncols, one)
    basis = _canonical_basis(kernel_vectors, len(labels), one)
    if particular is None:
        return SolveReport(
            d,
            tuple(constraints),
            "infeasible-within-bound",
            (),
            None,
            {"unknowns": len(labels), "aux": aux_count, "dim": len(basis)},
            tuple(notes),
        )
    return SolveReport(
        d,
        tuple(constraints),
        "affine-solution",
        tuple(to_field(v) for v in basis),
        to_field(particular),
        {"unknowns": len(labels), "aux": aux_count, "dim": len(basis)},
        tuple(notes),
    )


def poisson_field_defect(structure, X):
    """Defect polynomials of the Poisson-field identity on coordinate pairs;
    all zero iff X is a Poisson vector field."""
    A = structure.algebra
    out = []
    for j in range(A.ngens):
        for i in range(j):
            xi, xj = A.gen(i), A.gen(j)
            defect = (
                X.apply(structure.bracket(xi, xj))
                - structure.bracket(X.image_of(i), xj)
                - structure.bracket(xi, X.image_of(j))
            )
            out.append(((i, j), defect))
    return tuple(out)


@dataclass(frozen=True)
class CoisotropyReport:
    coisotropic: bool
    bracket_failures: tuple  # ((k, l), bracket value) for generator pairs
    classification: str  # "in-ideal" | "in-normalizer" | "outside" | "" (no f)
    witness: object  # the failing bracket for "outside", else None


def coisotropy_and_normalizer(structure, ideal, f=None):
    """Coisotropy of the ideal ({g_k, g_l} in J for generator pairs, which
    propagates by Leibniz) and classification of an optional element against
    ideal membership and the normalizer condition {f, g_k} in J."""
    A = structure.algebra
    if ideal.ambient != A:
        raise AlgebraMismatchError("ideal must live on the Poisson ambient")
    gens = ideal.generators
    failures = []
    for l in range(len(gens)):
        for k in range(l):
            value = structure.bracket(gens[k], gens[l])
            if not ideal_member(ideal, value):
                failures.append(((k, l), value))
    classification = ""
    witness = None
    if f is not None:
        if ideal_member(ideal, f):
            classification = "in-ideal"
        else:
            classification = "in-normalizer"
            for g in gens:
                value = structure.bracket(f, g)
                if not ideal_member(ideal, value):
                    classification = "outside"
                    witness = value
                    break
    return CoisotropyReport(not failures, tuple(failures), classification, witness)
