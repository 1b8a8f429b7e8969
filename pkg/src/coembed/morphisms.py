"""Homomorphisms between presented algebras, tensor products, and truncated
formal (hbar-series) homomorphisms with the order-by-order preimage recursion.

Surjectivity is witness-based: a hom is "declared surjective" by carrying a
preimage polynomial for every codomain generator, and check_hom verifies the
round trip.  Algorithmic surjectivity testing (subalgebra membership) is out
of scope.
"""
from __future__ import annotations

from dataclasses import dataclass

from .algebra import AlgebraPresentation, Polynomial
from .arith import HbarSeries
from .diffops import DiffOp
from .errors import AlgebraMismatchError, CoembedError, HomError, UnsupportedKindError


@dataclass(frozen=True)
class AlgebraHom:
    """Map determined by one codomain polynomial per domain generator,
    optionally with preimage witnesses and a kernel ideal."""

    domain: AlgebraPresentation
    codomain: AlgebraPresentation
    images: tuple
    witnesses: tuple = None
    kernel: object = None

    def __post_init__(self):
        if self.domain.field != self.codomain.field:
            raise AlgebraMismatchError("hom across different scalar fields")
        images = _aligned(self.images, self.domain, self.codomain, "image")
        object.__setattr__(self, "images", images)
        if self.witnesses is not None:
            witnesses = _aligned(self.witnesses, self.codomain, self.domain, "witness")
            object.__setattr__(self, "witnesses", witnesses)
        if self.kernel is not None and self.kernel.ambient != self.domain:
            raise HomError("kernel ideal must live in the domain")

    def image_of(self, g):
        i = g if isinstance(g, int) else self.domain.gen_index(g)
        return self.images[i]

    def witness_for(self, g):
        if self.witnesses is None:
            raise HomError("hom carries no preimage witnesses")
        i = g if isinstance(g, int) else self.codomain.gen_index(g)
        return self.witnesses[i]

    def apply(self, p):
        """Substitute generator images; accepts elements of the domain or of
        its cover."""
        if p.algebra == self.domain:
            p = self.domain.lift(p)
        elif p.algebra != self.domain.cover():
            raise AlgebraMismatchError("hom applied to a foreign element")
        return _substitute(p, self.images, self.codomain)

    def witness_subst(self, q):
        """Substitute witnesses into a codomain element: the chosen section."""
        if self.witnesses is None:
            raise HomError("hom carries no preimage witnesses")
        if q.algebra == self.codomain:
            q = self.codomain.lift(q)
        elif q.algebra != self.codomain.cover():
            raise AlgebraMismatchError("witness substitution on a foreign element")
        return _substitute(q, self.witnesses, self.domain)

    def __repr__(self):
        return f"<hom {self.domain.name} -> {self.codomain.name}>"


def _aligned(values, source, target, what):
    if isinstance(values, dict):
        missing = [g for g in source.generators if g not in values]
        if missing:
            raise HomError(f"missing {what} for generator {missing[0]!r}")
        extra = [g for g in values if g not in source.generators]
        if extra:
            raise HomError(f"{what} given for unknown generator {extra[0]!r}")
        values = tuple(values[g] for g in source.generators)
    else:
        values = tuple(values)
        if len(values) != source.ngens:
            raise HomError(
                f"expected {source.ngens} {what}s, got {len(values)}"
            )
    for v in values:
        if not isinstance(v, Polynomial) or v.algebra != target:
            raise HomError(f"{what} polynomials must live over {target.name!r}")
    return values


def _substitute(cover_poly, values, target):
    out = target.zero()
    if cover_poly.algebra.kind == "free":
        for word, c in cover_poly.terms.items():
            prod = target.scalar(c)
            for idx in word:
                prod = prod * values[idx]
            out = out + prod
    else:
        for ev, c in cover_poly.terms.items():
            prod = target.scalar(c)
            for idx, e in enumerate(ev):
                if e:
                    prod = prod * values[idx] ** e
            out = out + prod
    return out


@dataclass(frozen=True)
class HomReport:
    ok: bool
    failing_relations: tuple  # (relation, image value) pairs
    failing_witnesses: tuple  # (generator name, round-trip value) pairs


def check_hom(hom):
    """Verify that every domain relation maps to zero in the codomain and
    that the witnesses, when present, are honest preimages."""
    failing = []
    for r in hom.domain.relations:
        value = hom.apply(r)
        if not value.is_zero():
            failing.append((r, value))
    failing_witnesses = []
    if hom.witnesses is not None:
        for g in hom.codomain.generators:
            value = hom.apply(hom.witness_for(g))
            if value != hom.codomain.gen(g):
                failing_witnesses.append((g, value))
    ok = not failing and not failing_witnesses
    return HomReport(ok, tuple(failing), tuple(failing_witnesses))


def identity_hom(algebra):
    gens = tuple(algebra.gen(i) for i in range(algebra.ngens))
    return AlgebraHom(algebra, algebra, gens, gens)


def compose(f, g):
    """Composite g o f (apply f first)."""
    if f.codomain != g.domain:
        raise AlgebraMismatchError(
            f"cannot compose: {f.codomain.name!r} != {g.domain.name!r}"
        )
    images = tuple(g.apply(img) for img in f.images)
    witnesses = None
    if f.witnesses is not None and g.witnesses is not None:
        witnesses = tuple(f.witness_subst(w) for w in g.witnesses)
    return AlgebraHom(f.domain, g.codomain, images, witnesses)


@dataclass(frozen=True)
class TensorProduct:
    algebra: AlgebraPresentation
    incl1: AlgebraHom
    incl2: AlgebraHom


def tensor_product(a1, a2, name=None):
    """Tensor product presentation with the two inclusion maps.

    commutative (x) commutative stays commutative; otherwise both factors
    must be pbw or relation-free commutative, and the result is pbw with
    cross-commutation relations.
    """
    if a1.field != a2.field:
        raise AlgebraMismatchError("tensor factors over different scalar fields")
    overlap = set(a1.generators) & set(a2.generators)
    if overlap:
        raise HomError(f"tensor factors share generator name {sorted(overlap)[0]!r}")
    gens = a1.generators + a2.generators
    name = name or f"{a1.name}(x){a2.name}"
    n1 = a1.ngens
    if a1.kind == "commutative" and a2.kind == "commutative":
        cover = AlgebraPresentation(name + ".cover", "commutative", gens, a1.field)
        relations = []
        for r in a1.relations:
            relations.append(
                Polynomial(cover, {ev + (0,) * a2.ngens: c for ev, c in r.terms.items()})
            )
        for r in a2.relations:
            relations.append(
                Polynomial(cover, {(0,) * n1 + ev: c for ev, c in r.terms.items()})
            )
        product = AlgebraPresentation(name, "commutative", gens, a1.field, tuple(relations))
    else:
        for factor in (a1, a2):
            if factor.kind == "commutative" and factor.relations:
                raise UnsupportedKindError(
                    "commutative tensor factor with relations cannot enter a pbw product"
                )
            if factor.kind == "free" and factor.ngens > 1:
                raise UnsupportedKindError(
                    "free tensor factor with several generators has no pbw form"
                )
        cover = AlgebraPresentation(name + ".cover", "free", gens, a1.field)
        relations = []

        def commutation(j, i, tail_terms):
            terms = {(j, i): a1.field.one, (i, j): -a1.field.one}
            for word, c in tail_terms.items():
                prev = terms.get(word)
                terms[word] = -c if prev is None else prev - c
            return Polynomial(cover, {m: c for m, c in terms.items() if c})

        rules1 = a1.pbw_rules() if a1.kind == "pbw" else {}
        rules2 = a2.pbw_rules() if a2.kind == "pbw" else {}
        for j in range(len(gens)):
            for i in range(j):
                if j < n1:
                    tail = rules1.get((j, i))
                    tail_terms = dict(tail.terms) if tail is not None else {}
                elif i >= n1:
                    tail = rules2.get((j - n1, i - n1))
                    tail_terms = (
                        {tuple(x + n1 for x in w): c for w, c in tail.terms.items()}
                        if tail is not None
                        else {}
                    )
                else:
                    tail_terms = {}  # cross pair: plain commutation
                relations.append(commutation(j, i, tail_terms))
        product = AlgebraPresentation(name, "pbw", gens, a1.field, tuple(relations))
        from .algebra import check_pbw_confluence

        verdict = check_pbw_confluence(product)
        if not verdict.ok:
            raise CoembedError("tensor product rewriting system is not confluent")
    incl1 = AlgebraHom(a1, product, tuple(product.gen(i) for i in range(n1)))
    incl2 = AlgebraHom(
        a2, product, tuple(product.gen(n1 + i) for i in range(a2.ngens))
    )
    return TensorProduct(product, incl1, incl2)


def scalars_algebra(field, name="K"):
    """The base field as a zero-generator commutative presentation."""
    return AlgebraPresentation(name, "commutative", (), field)


@dataclass(frozen=True)
class FormalHom:
    """Truncated hbar-linear hom pi = pi_0 + sum_k hbar^k (pi_0 o T_k), with
    T_k differential operators on the (relation-free commutative) domain."""

    order: int
    base: AlgebraHom
    operators: tuple  # T_1..T_order

    def __post_init__(self):
        dom = self.base.domain
        if dom.kind != "commutative" or dom.relations:
            raise UnsupportedKindError(
                "formal homs need a relation-free commutative domain"
            )
        if self.base.witnesses is None:
            raise HomError("formal homs need a witnessed base hom")
        operators = tuple(self.operators)
        if len(operators) != self.order:
            raise HomError(f"expected {self.order} operators T_1..T_{self.order}")
        for op in operators:
            if not isinstance(op, DiffOp) or op.algebra != dom:
                raise HomError("operators T_k must be DiffOps on the domain")
        object.__setattr__(self, "operators", operators)

    def component(self, k, f):
        """pi_k(f) for a domain polynomial f."""
        if k == 0:
            return self.base.apply(f)
        return self.base.apply(self.operators[k - 1].apply(f))

    def apply(self, f):
        """Value on a domain polynomial or HbarSeries of domain polynomials,
        as an HbarSeries over the codomain."""
        cod_zero = self.base.codomain.zero()
        if isinstance(f, Polynomial):
            coeffs = [self.component(k, f) for k in range(self.order + 1)]
            return HbarSeries(self.order, coeffs)
        if f.order != self.order:
            raise AlgebraMismatchError("series order does not match the formal hom")
        coeffs = []
        for n in range(self.order + 1):
            acc = cod_zero
            for k in range(n + 1):
                acc = acc + self.component(k, f[n - k])
            coeffs.append(acc)
        return HbarSeries(self.order, coeffs)


def formal_preimage(pi, g):
    """Solve pi(f) = g order by order through the witness section:
    f_k is the witness substitution of g_k - sum_{j>=1} pi_j(f_{k-j})."""
    if g.order != pi.order:
        raise AlgebraMismatchError("series order does not match the formal hom")
    f_coeffs = []
    for k in range(pi.order + 1):
        rhs = g[k]
        for j in range(1, k + 1):
            rhs = rhs - pi.component(j, f_coeffs[k - j])
        f_coeffs.append(pi.base.witness_subst(rhs))
    f = HbarSeries(pi.order, f_coeffs)
    if pi.apply(f) != g:
        raise CoembedError("formal preimage failed verification")  # pragma: no cover
    return f
