"""Truncated formal star products with polynomial bidifferential operators:
the exponential (commuting-vector-field) constructor, axiom checks by
monomial probing, tangentiality, and hbar-linear derivations.

Identities between differential operators of order <= m are decided by
evaluating on all monomials with per-variable exponent <= m + 1; such probes
determine the operator (triangular system in the coefficients), so the
checks are exhaustive, not sampled.
"""
from __future__ import annotations

import dataclasses
import itertools
from dataclasses import dataclass
from fractions import Fraction
from math import comb, factorial

from .algebra import Polynomial, _accumulate, partial_derivative
from .arith import HbarSeries
from .derivations import Derivation, _PolySystem, _canonical_basis
from .diffops import DiffOp, compose_power, _iterated_partial
from .errors import (
    AlgebraMismatchError,
    CoembedError,
    InputError,
    NonCommutingError,
    UnsupportedKindError,
)
from .ideals import ideal_member, truncated_ideal_basis
from .linalg import nullspace
from .poisson import PoissonStructure, solve_poisson_vector_fields


def _check_star_ambient(algebra):
    if algebra.kind != "commutative" or algebra.relations:
        raise UnsupportedKindError(
            "star products live on relation-free commutative algebras"
        )
    if algebra.field.tag != "Qi":
        raise UnsupportedKindError("star products need Q(i) scalars (C_1 = i{.,.})")


class BidiffOperator:
    """Finite sum of terms coeff * (d^alpha f) * (d^beta g)."""

    __slots__ = ("algebra", "terms")

    def __init__(self, algebra, terms):
        _check_star_ambient(algebra)
        merged = {}
        for (alpha, beta), coeff in terms.items():
            alpha, beta = tuple(alpha), tuple(beta)
            if len(alpha) != algebra.ngens or len(beta) != algebra.ngens:
                raise AlgebraMismatchError("bidifferential multi-index of wrong arity")
            if coeff.algebra != algebra:
                raise AlgebraMismatchError("coefficient not over the ambient algebra")
            if coeff.is_zero():
                continue
            key = (alpha, beta)
            prev = merged.get(key)
            merged[key] = coeff if prev is None else prev + coeff
        merged = {k: c for k, c in merged.items() if not c.is_zero()}
        object.__setattr__(self, "algebra", algebra)
        object.__setattr__(self, "terms", merged)

    def __setattr__(self, name, value):
        raise AttributeError("BidiffOperator is immutable")

    @classmethod
    def multiplication(cls, algebra):
        zero_idx = (0,) * algebra.ngens
        return cls(algebra, {(zero_idx, zero_idx): algebra.one()})

    def is_multiplication(self):
        zero_idx = (0,) * self.algebra.ngens
        return (
            len(self.terms) == 1
            and self.terms.get((zero_idx, zero_idx)) == self.algebra.one()
        )

    def max_order(self):
        out = 0
        for alpha, beta in self.terms:
            out = max(out, sum(alpha), sum(beta))
        return out

    def apply(self, f, g):
        if f.algebra != self.algebra or g.algebra != self.algebra:
            raise AlgebraMismatchError("operands not over the operator's algebra")
        out = self.algebra.zero()
        for (alpha, beta), coeff in self.terms.items():
            df = _iterated_partial(f, alpha)
            if df.is_zero():
                continue
            dg = _iterated_partial(g, beta)
            if dg.is_zero():
                continue
            out = out + coeff * df * dg
        return out

    def __eq__(self, other):
        if not isinstance(other, BidiffOperator):
            return NotImplemented
        return self.algebra == other.algebra and self.terms == other.terms

    def __repr__(self):
        return f"<bidiff operator, {len(self.terms)} terms, order {self.max_order()}>"


@dataclass(frozen=True)
class StarProduct:
    """Order-r deformation: operators C_0..C_r with C_0 the multiplication."""

    algebra: object
    order: int
    operators: tuple
    _state: dict = dataclasses.field(default_factory=dict, compare=False, repr=False)

    def __post_init__(self):
        _check_star_ambient(self.algebra)
        operators = tuple(self.operators)
        if len(operators) != self.order + 1:
            raise InputError(f"order {self.order} needs {self.order + 1} operators")
        for op in operators:
            if not isinstance(op, BidiffOperator) or op.algebra != self.algebra:
                raise AlgebraMismatchError("operators must be BidiffOperators on the ambient")
        if not operators[0].is_multiplication():
            raise InputError("C_0 must be the pointwise multiplication")
        object.__setattr__(self, "operators", operators)
        self._state["cache"] = {}

    def max_operator_order(self):
        return max(op.max_order() for op in self.operators)

    def constant_series(self, p):
        return HbarSeries.constant(self.order, p, self.algebra.zero())

    def _apply_operator_into(self, acc, k, f, g):
        """Accumulate C_k(f, g) into a term dict through the monomial-pair
        cache (C_k is bilinear)."""
        A = self.algebra
        cache = self._state["cache"]
        op = self.operators[k]
        one = A.field.one
        for mf, cf in f.terms.items():
            for mg, cg in g.terms.items():
                key = (k, mf, mg)
                hit = cache.get(key)
                if hit is None:
                    hit = op.apply(Polynomial(A, {mf: one}), Polynomial(A, {mg: one}))
                    cache[key] = hit
                scale = cf * cg
                for m, c in hit.terms.items():
                    _accumulate(acc, m, scale * c)

    def apply_operator(self, k, f, g):
        acc = {}
        self._apply_operator_into(acc, k, f, g)
        return Polynomial(self.algebra, acc)

    def multiply(self, f, g):
        """Star product of two HbarSeries of ambient polynomials."""
        if f.order != self.order or g.order != self.order:
            raise AlgebraMismatchError("series orders incompatible with the star product")
        coeffs = []
        for n in range(self.order + 1):
            acc = {}
            for k in range(n + 1):
                for a in range(n - k + 1):
                    self._apply_operator_into(acc, k, f[a], g[n - k - a])
            coeffs.append(Polynomial(self.algebra, acc))
        return HbarSeries(self.order, coeffs)

    def multiply_polys(self, p, q):
        return self.multiply(self.constant_series(p), self.constant_series(q))


def star_multiply(star, f, g):
    return star.multiply(f, g)


def exp_star(X, Y, r):
    """Weyl-type exponential star product of two commuting vector fields:
    C_k = mu o (i^k / k!) (X(x)Y - Y(x)X)^k."""
    A = X.algebra
    _check_star_ambient(A)
    if Y.algebra != A:
        raise AlgebraMismatchError("the two vector fields live on different algebras")
    for i in range(A.ngens):
        defect = X.apply(Y.images[i]) - Y.apply(X.images[i])
        if not defect.is_zero():
            raise NonCommutingError(
                "exp_star needs commuting vector fields ([X,Y] != 0 at generator "
                f"{A.generators[i]!r})"
            )
    xop = DiffOp.from_derivation(X)
    yop = DiffOp.from_derivation(Y)
    xpow = [compose_power(xop, j) for j in range(r + 1)]
    ypow = [compose_power(yop, j) for j in range(r + 1)]
    i_unit = A.field.i
    operators = []
    for k in range(r + 1):
        scalar_k = i_unit ** k * A.field.coerce(Fraction(1, factorial(k)))
        terms = {}
        for j in range(k + 1):
            weight = scalar_k * comb(k, j) * (-1) ** (k - j)
            left = xpow[j].compose(ypow[k - j])
            right = ypow[j].compose(xpow[k - j])
            for alpha, ca in left.terms.items():
                for beta, cb in right.terms.items():
                    coeff = weight * ca * cb
                    key = (alpha, beta)
                    prev = terms.get(key)
                    terms[key] = coeff if prev is None else prev + coeff
        operators.append(BidiffOperator(A, terms))
    return StarProduct(A, r, operators)


def _probe_monomials(algebra, per_var_bound):
    return [
        ev
        for ev in itertools.product(range(per_var_bound + 1), repeat=algebra.ngens)
    ]


@dataclass(frozen=True)
class StarAxiomReport:
    probe_degree: int
    unit_left_ok: bool
    unit_right_ok: bool
    unit_failures: tuple
    associativity_ok: bool
    associativity_witness: object  # (f, g, h, order, defect) or None
    c1_antisymmetric: bool
    c1_failures: tuple
    poisson: object  # extracted PoissonStructure (when r >= 1)

    @property
    def ok(self):
        return (
            self.unit_left_ok
            and self.unit_right_ok
            and self.associativity_ok
            and self.c1_antisymmetric
        )


def check_star_axioms(star, probe_degree=None):
    """Unit, associativity, and C_1-antisymmetry on exhaustive monomial
    probes; extracts the classical-limit Poisson structure from C_1.

    The probe degree must be at least max operator order + 1 (then the probes
    determine the operators and the checks are conclusive)."""
    A = star.algebra
    min_probe = star.max_operator_order() + 1
    if probe_degree is None:
        probe_degree = min_probe
    if probe_degree < min_probe:
        raise InputError(
            f"probe degree {probe_degree} below operator order + 1 = {min_probe}"
        )
    probes = _probe_monomials(A, probe_degree)
    probe_polys = [Polynomial(A, {m: A.field.one}) for m in probes]
    one = A.one()

    unit_failures = []
    unit_left_ok = unit_right_ok = True
    for k in range(1, star.order + 1):
        op = star.operators[k]
        for p in probe_polys:
            if not op.apply(one, p).is_zero():
                unit_left_ok = False
                unit_failures.append(("left", k, p))
            if not op.apply(p, one).is_zero():
                unit_right_ok = False
                unit_failures.append(("right", k, p))

    pair_cache = {}

    def star_pair(a, b):
        hit = pair_cache.get((a, b))
        if hit is None:
            hit = star.multiply_polys(probe_polys[a], probe_polys[b])
            pair_cache[(a, b)] = hit
        return hit

    # a full pass over all probe triples certifies associativity; on failure
    # the scan stops at the first witness (use associator_defect for others)
    associativity_ok = True
    witness = None
    n_probes = len(probe_polys)
    for a in range(n_probes):
        if witness is not None:
            break
        for b in range(n_probes):
            if witness is not None:
                break
            ab = star_pair(a, b)
            for c in range(n_probes):
                left = star.multiply(ab, star.constant_series(probe_polys[c]))
                right = star.multiply(star.constant_series(probe_polys[a]), star_pair(b, c))
                if left != right:
                    associativity_ok = False
                    defect = left - right
                    order = next(
                        k for k in range(star.order + 1) if not defect[k].is_zero()
                    )
                    witness = (
                        probe_polys[a],
                        probe_polys[b],
                        probe_polys[c],
                        order,
                        defect[order],
                    )
                    break
    c1_ok = True
    c1_failures = []
    poisson = None
    if star.order >= 1:
        c1 = star.operators[1]
        for a in range(n_probes):
            for b in range(a + 1):
                value = c1.apply(probe_polys[a], probe_polys[b]) + c1.apply(
                    probe_polys[b], probe_polys[a]
                )
                if not value.is_zero():
                    c1_ok = False
                    c1_failures.append((probe_polys[a], probe_polys[b], value))
        poisson = extract_poisson_structure(star)
    return StarAxiomReport(
        probe_degree,
        unit_left_ok,
        unit_right_ok,
        tuple(unit_failures),
        associativity_ok,
        witness,
        c1_ok,
        tuple(c1_failures),
        poisson,
    )


def extract_poisson_structure(star):
    """Classical limit of C_1: the bracket {x_i, x_j} read off as the
    antisymmetric part divided by 2i."""
    A = star.algebra
    if star.order < 1:
        return None
    c1 = star.operators[1]
    half_i = A.field.coerce(1) / (2 * A.field.i)
    table = {}
    for j in range(A.ngens):
        for i in range(j):
            xi, xj = A.gen(i), A.gen(j)
            value = half_i * (c1.apply(xi, xj) - c1.apply(xj, xi))
            if not value.is_zero():
                table[(i, j)] = value
    return PoissonStructure.from_dict(A, table)


def associator_defect(star, f, g, h):
    """(f*g)*h - f*(g*h) as an HbarSeries; zero iff the triple associates."""
    left = star.multiply(star.multiply_polys(f, g), star.constant_series(h))
    right = star.multiply(star.constant_series(f), star.multiply_polys(g, h))
    return left - right


@dataclass(frozen=True)
class TangentialityReport:
    ok: bool
    failures: tuple  # (k, ideal element, probe monomial, value)


def tangentiality_check(star, ideal, d):
    """C_k(J, f) in J for k >= 1, with J probed through its truncated basis
    at degree d and f through monomials up to the operator order + 1."""
    A = star.algebra
    if ideal.ambient != A:
        raise AlgebraMismatchError("ideal must live on the star-product ambient")
    probes = _probe_monomials(A, star.max_operator_order() + 1)
    probe_polys = [Polynomial(A, {m: A.field.one}) for m in probes]
    failures = []
    basis = truncated_ideal_basis(ideal, d)
    for k in range(1, star.order + 1):
        op = star.operators[k]
        for j in basis:
            for f in probe_polys:
                value = op.apply(j, f)
                if not ideal_member(ideal, value):
                    failures.append((k, j, f, value))
    return TangentialityReport(not failures, tuple(failures))


@dataclass(frozen=True)
class FormalDerivation:
    """hbar-linear map D = sum_k hbar^k D_k with differential-operator
    coefficients."""

    order: int
    ops: tuple  # D_0..D_order, DiffOps on the ambient

    def __post_init__(self):
        ops = tuple(self.ops)
        if len(ops) != self.order + 1:
            raise InputError(f"order {self.order} needs {self.order + 1} operators")
        algebra = ops[0].algebra
        for op in ops:
            if not isinstance(op, DiffOp) or op.algebra != algebra:
                raise AlgebraMismatchError("component operators must share one algebra")
        object.__setattr__(self, "ops", ops)

    @property
    def algebra(self):
        return self.ops[0].algebra

    def apply(self, series):
        if series.order != self.order:
            raise AlgebraMismatchError("series order does not match the derivation")
        coeffs = []
        for n in range(self.order + 1):
            acc = self.algebra.zero()
            for k in range(n + 1):
                acc = acc + self.ops[k].apply(series[n - k])
            coeffs.append(acc)
        return HbarSeries(self.order, coeffs)


@dataclass(frozen=True)
class HbarDerivationReport:
    ok: bool
    failure: object  # (f, g, order, defect) or None


def check_hbar_derivation(star, D, probe_degree=None):
    """Leibniz rule D(f*g) = (Df)*g + f*(Dg) order by order on exhaustive
    monomial probe pairs."""
    A = star.algebra
    if D.algebra != A:
        raise AlgebraMismatchError("derivation not over the star-product ambient")
    if D.order != star.order:
        raise AlgebraMismatchError("derivation order does not match the star product")
    min_probe = star.max_operator_order() + max(op.max_order() for op in D.ops) + 1
    if probe_degree is None:
        probe_degree = min_probe
    if probe_degree < min_probe:
        raise InputError(
            f"probe degree {probe_degree} below combined operator orders + 1 = {min_probe}"
        )
    probes = _probe_monomials(A, probe_degree)
    probe_polys = [Polynomial(A, {m: A.field.one}) for m in probes]
    for f in probe_polys:
        fs = star.constant_series(f)
        df = D.apply(fs)
        for g in probe_polys:
            gs = star.constant_series(g)
            lhs = D.apply(star.multiply(fs, gs))
            rhs = star.multiply(df, gs) + star.multiply(fs, D.apply(gs))
            if lhs != rhs:
                defect = lhs - rhs
                order = next(
                    k for k in range(star.order + 1) if not defect[k].is_zero()
                )
                return HbarDerivationReport(False, (f, g, order, defect[order]))
    return HbarDerivationReport(True, None)


@dataclass(frozen=True)
class Order1Report:
    degree_bound: int
    status: str
    d0_basis: tuple  # Poisson vector fields (order-0 parts)
    dims: dict
    cross_check_ok: bool
    notes: tuple


def solve_order1_derivations(star, d):
    """Vector-field pairs (D_0, D_1) of degree <= d forming hbar-linear
    derivations of an order-1 star product.

    Order-0 Leibniz holds identically for vector fields; order-1 Leibniz
    forces D_0(C_1(x_i, x_j)) = C_1(D_0 x_i, x_j) + C_1(x_i, D_0 x_j) on
    generator pairs (sufficient: the defect is a biderivation) and leaves
    D_1 free.  The report cross-checks dim(D_0 space) against the Poisson
    vector-field solver on the extracted bracket.
    """
    if star.order != 1:
        raise InputError("solve_order1_derivations needs an order-1 star product")
    A = star.algebra
    c1 = star.operators[1]
    monomials = A.monomials_up_to(d)
    labels = [(i, m) for i in range(A.ngens) for m in monomials]
    one = A.field.one
    unit = {m: Polynomial(A, {m: one}) for m in monomials}

    system = _PolySystem(A.field)
    for j in range(A.ngens):
        for i in range(j):
            xi, xj = A.gen(i), A.gen(j)
            q = c1.apply(xi, xj)
            contribs = {}
            for col, (k, m) in enumerate(labels):
                value = partial_derivative(q, k) * unit[m]
                if k == i:
                    value = value - c1.apply(unit[m], xj)
                if k == j:
                    value = value - c1.apply(xi, unit[m])
                if not value.is_zero():
                    contribs[col] = value
            system.add_block(contribs, A.zero())
    rows, _ = system.assemble(len(labels))
    vectors = _canonical_basis(nullspace(rows, len(labels), one), len(labels), one)

    def to_field(vec):
        per_gen = [dict() for _ in range(A.ngens)]
        for col, (i, m) in enumerate(labels):
            if vec[col]:
                per_gen[i][m] = vec[col]
        return Derivation(A, tuple(Polynomial(A, t) for t in per_gen))

    d0_basis = tuple(to_field(v) for v in vectors)
    dim_all = len(labels)
    dims = {
        "poisson_fields": len(d0_basis),
        "all_fields": dim_all,
        "total": len(d0_basis) + dim_all,
    }
    extracted = extract_poisson_structure(star)
    cross_ok = True
    if extracted is not None:
        cross = solve_poisson_vector_fields(extracted, d)
        cross_ok = cross.dims["dim"] == len(d0_basis)
    if not cross_ok:
        raise CoembedError(
            "order-1 derivation space disagrees with the Poisson field solver"
        )  # pragma: no cover
    return Order1Report(
        d,
        "basis",
        d0_basis,
        dims,
        cross_ok,
        ("D_1 is unconstrained: any vector field of degree <= d",),
    )
