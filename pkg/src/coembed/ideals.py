"""Two-sided ideals: Groebner bases and exact membership for commutative
ambients, degree-bounded spanning sets for free/pbw ambients.

Commutative membership is complete.  For free and pbw ambients, membership
at bound d means "lies in span{m * g * m' : deg <= d}": a positive answer is
a certificate, a negative answer only rules out the bounded span.
"""
from __future__ import annotations

from dataclasses import dataclass, field

from .algebra import Polynomial, monomial_degree
from .errors import AlgebraMismatchError, UnsupportedKindError
from .linalg import rref


def _divides(a, b):
    return all(x <= y for x, y in zip(a, b))


def _monomial_quotient(numer, denom):
    return tuple(x - y for x, y in zip(numer, denom))


def _lcm_monomial(a, b):
    return tuple(max(x, y) for x, y in zip(a, b))


def reduce_by_basis(p, basis):
    """Full multivariate division remainder of a commutative polynomial."""
    A = p.algebra
    remainder = A.zero()
    work = p
    while work.terms:
        lm = work.leading_monomial()
        lc = work.terms[lm]
        for g in basis:
            glm = g.leading_monomial()
            if _divides(glm, lm):
                factor = A.monomial(_monomial_quotient(lm, glm), lc / g.terms[glm])
                work = work - factor * g
                break
        else:
            head = Polynomial(A, {lm: lc})
            remainder = remainder + head
            work = work - head
    return remainder


def _spoly(f, g):
    A = f.algebra
    fl, gl = f.leading_monomial(), g.leading_monomial()
    lcm = _lcm_monomial(fl, gl)
    mf = A.monomial(_monomial_quotient(lcm, fl), 1 / f.terms[fl])
    mg = A.monomial(_monomial_quotient(lcm, gl), 1 / g.terms[gl])
    return mf * f - mg * g


def buchberger(generators, ambient=None):
    """Reduced Groebner basis (Buchberger with the coprime-lead criterion).

    Deterministic: input order is normalized up front, the final basis is
    monic, autoreduced, and sorted by leading monomial.
    """
    polys = [g for g in generators if not g.is_zero()]
    if not polys:
        return ()
    A = ambient if ambient is not None else polys[0].algebra
    if A.kind != "commutative" or A.relations:
        raise UnsupportedKindError("Groebner bases need a relation-free commutative ambient")
    key = A.monomial_key
    basis = sorted((p.monic() for p in polys), key=lambda p: key(p.leading_monomial()))
    pairs = [(i, j) for j in range(len(basis)) for i in range(j)]
    while pairs:
        i, j = pairs.pop(0)
        fl = basis[i].leading_monomial()
        gl = basis[j].leading_monomial()
        if _lcm_monomial(fl, gl) == tuple(a + b for a, b in zip(fl, gl)):
            continue  # coprime leading terms: S-poly reduces to zero
        remainder = reduce_by_basis(_spoly(basis[i], basis[j]), basis)
        if remainder.is_zero():
            continue
        remainder = remainder.monic()
        basis.append(remainder)
        pairs.extend((k, len(basis) - 1) for k in range(len(basis) - 1))
    return _autoreduce(basis)


def _autoreduce(basis):
    reduced = []
    for i, g in enumerate(basis):
        others = [h for k, h in enumerate(basis) if k != i and not h.is_zero()]
        r = reduce_by_basis(g, others)
        if not r.is_zero():
            reduced.append(r.monic())
    # one more sweep so every element is reduced against the final set
    final = []
    for i, g in enumerate(reduced):
        others = [h for k, h in enumerate(reduced) if k != i]
        r = reduce_by_basis(g, others)
        if not r.is_zero():
            final.append(r.monic())
    seen = set()
    unique = []
    for g in sorted(final, key=lambda p: p.algebra.monomial_key(p.leading_monomial())):
        marker = frozenset(g.terms.items())
        if marker not in seen:
            seen.add(marker)
            unique.append(g)
    return tuple(unique)


@dataclass(frozen=True)
class IdealPresentation:
    """Two-sided ideal in a presented ambient algebra."""

    ambient: object
    generators: tuple
    _state: dict = field(default_factory=dict, compare=False, repr=False)

    def __post_init__(self):
        gens = []
        for g in self.generators:
            if g.algebra != self.ambient:
                raise AlgebraMismatchError("ideal generator not over the ambient algebra")
            if not g.is_zero():
                gens.append(g)
        object.__setattr__(self, "generators", tuple(gens))

    def max_generator_degree(self):
        return max((g.degree() for g in self.generators), default=0)

    def __repr__(self):
        return f"<ideal with {len(self.generators)} generators in {self.ambient.name}>"


def groebner_basis(ideal):
    """Reduced Groebner basis of a commutative ideal, including the ambient
    relations (elements are reduced representatives in the quotient's cover)."""
    if ideal.ambient.kind != "commutative":
        raise UnsupportedKindError("Groebner bases exist for commutative ambients only")
    gb = ideal._state.get("groebner")
    if gb is None:
        A = ideal.ambient
        cover = A.cover()
        lifted = [A.lift(g) for g in ideal.generators]
        lifted.extend(A.relations)
        gb = buchberger(lifted, cover)
        ideal._state["groebner"] = gb
    return gb


def ideal_member(ideal, p):
    """Exact membership for commutative ambients; degree-bounded span
    membership (bound = deg p) for free/pbw ambients."""
    if p.algebra != ideal.ambient:
        raise AlgebraMismatchError("membership candidate not over the ambient algebra")
    if p.is_zero():
        return True
    A = ideal.ambient
    if A.kind == "commutative":
        gb = groebner_basis(ideal)
        if not gb:
            return False
        return reduce_by_basis(A.lift(p), gb).is_zero()
    basis = truncated_ideal_basis(ideal, p.degree())
    return _reduce_by_echelon(p, basis).is_zero()


def _reduce_by_echelon(p, echelon_polys):
    """Linear reduction against polynomials with pairwise distinct leading
    monomials (as produced by truncated_ideal_basis)."""
    by_lead = {g.leading_monomial(): g for g in echelon_polys}
    work = p
    while work.terms:
        lm = work.leading_monomial()
        g = by_lead.get(lm)
        if g is None:
            return work
        work = work - (work.terms[lm] / g.terms[lm]) * g
    return work


def truncated_ideal_basis(ideal, d):
    """Echelonized basis of the scalar span of ideal elements of degree <= d.

    Commutative: monomial multiples of the Groebner basis (complete at every
    bound).  Free/pbw: two-sided products m * g * m' of degree <= d (complete
    whenever the generators' truncated spans stabilize, e.g. for the paper's
    fixtures; otherwise a documented bounded span).
    """
    cache = ideal._state.setdefault("truncated", {})
    hit = cache.get(d)
    if hit is not None:
        return hit
    A = ideal.ambient
    spanning = []
    if A.kind == "commutative":
        cover = A.cover()
        for g in groebner_basis(ideal):
            gdeg = g.degree()
            if gdeg > d:
                continue
            for m in cover.monomials_up_to(d - gdeg):
                prod = A.project(Polynomial(cover, {m: A.field.one}) * g)
                if not prod.is_zero() and prod.degree() <= d:
                    spanning.append(prod)
    else:
        for g in ideal.generators:
            gdeg = g.degree()
            room = d - gdeg
            if room < 0:
                continue
            lefts = A.monomials_up_to(room)
            for ml in lefts:
                ldeg = A.monomial_degree(ml)
                left = Polynomial(A, {ml: A.field.one}) * g
                for mr in A.monomials_up_to(room - ldeg):
                    prod = left * Polynomial(A, {mr: A.field.one})
                    if not prod.is_zero() and prod.degree() <= d:
                        spanning.append(prod)
    basis = echelonize_polys(spanning, A)
    cache[d] = basis
    return basis


def echelonize_polys(polys, algebra):
    """Canonical echelon basis of the scalar span of the given polynomials,
    monic, sorted ascending by leading monomial."""
    polys = [p for p in polys if not p.is_zero()]
    if not polys:
        return ()
    monomials = sorted(
        {m for p in polys for m in p.terms},
        key=algebra.monomial_key,
        reverse=True,
    )
    index = {m: k for k, m in enumerate(monomials)}
    zero = algebra.field.zero
    rows = []
    for p in polys:
        row = [zero] * len(monomials)
        for m, c in p.terms.items():
            row[index[m]] = c
        rows.append(row)
    reduced, pivots = rref(rows)
    out = []
    for r in range(len(pivots)):
        terms = {monomials[k]: c for k, c in enumerate(reduced[r]) if c}
        out.append(Polynomial(algebra, terms))
    out.sort(key=lambda p: algebra.monomial_key(p.leading_monomial()))
    return tuple(out)
