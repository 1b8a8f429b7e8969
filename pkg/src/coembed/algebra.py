"""Presented algebras and their polynomials.

Three kinds of presentation share one polynomial type:

* ``free``        -- monomials are words (tuples of generator indices),
                     no relations;
* ``commutative`` -- monomials are exponent vectors; relations, if any,
                     are reduced away modulo a cached Groebner basis;
* ``pbw``         -- monomials are exponent vectors encoding the sorted
                     basis words; products are computed by rewriting
                     x_j x_i -> x_i x_j + q_ji (deg q_ji <= 2, q_ji below
                     x_i x_j in the monomial order).

Every ``Polynomial`` is kept in canonical form, so equality is structural.

The global monomial order is graded with later-declared generators larger:
exponent vectors compare by total degree, then reverse-lexicographically
(the degrevlex order); words compare by length, then left-to-right index
comparison.  One order everywhere keeps normal forms, Groebner bases and
printed output reproducible.
"""
from __future__ import annotations

import dataclasses
import itertools
from dataclasses import dataclass

from .arith import QQ, ScalarField
from .errors import (
    AlgebraMismatchError,
    NonConfluentError,
    PresentationError,
    RewriteBudgetError,
    UnsupportedKindError,
)

KINDS = ("free", "commutative", "pbw")
RESERVED_NAMES = frozenset({"i", "h"})

REWRITE_BUDGET = 200_000


def word_key(word):
    return (len(word), word)


def expvec_key(ev):
    return (sum(ev), tuple(-e for e in ev))


def monomial_key(kind, m):
    return word_key(m) if kind == "free" else expvec_key(m)


def monomial_degree(kind, m):
    return len(m) if kind == "free" else sum(m)


@dataclass(frozen=True)
class AlgebraPresentation:
    """Finitely presented algebra: generators, relations, kind, scalars.

    Equality is structural on (kind, generators, field, relations); the name
    is a label for reports only.
    """

    name: str = dataclasses.field(compare=False)
    kind: str = dataclasses.field(default="free")
    generators: tuple = ()
    field: ScalarField = QQ
    relations: tuple = ()
    _state: dict = dataclasses.field(default_factory=dict, compare=False, repr=False)

    def __post_init__(self):
        object.__setattr__(self, "generators", tuple(self.generators))
        if self.kind not in KINDS:
            raise PresentationError(f"unknown kind {self.kind!r}")
        seen = set()
        for g in self.generators:
            if not g.isidentifier():
                raise PresentationError(f"generator name {g!r} is not an identifier")
            if g in RESERVED_NAMES:
                raise PresentationError(f"generator name {g!r} is reserved")
            if g in seen:
                raise PresentationError(f"duplicate generator {g!r}")
            seen.add(g)
        relations = tuple(self.relations)
        if self.kind == "free" and relations:
            raise PresentationError(
                "free presentations carry no relations; model quotients of a free "
                "algebra through a homomorphism onto a presented codomain"
            )
        cover = self._build_cover()
        rebased = []
        for r in relations:
            if isinstance(r, Polynomial):
                if not _compatible_cover(r.algebra, cover):
                    raise PresentationError(
                        f"relation {r!r} is not over the expected cover of {self.name!r}"
                    )
                rebased.append(Polynomial(cover, dict(r.terms)))
            else:
                raise PresentationError("relations must be Polynomials over the cover")
        for r in rebased:
            if r.is_zero():
                raise PresentationError("zero relation")
        object.__setattr__(self, "relations", tuple(rebased))
        self._state["cover"] = cover
        if self.kind == "pbw":
            self._state["rules"] = _extract_pbw_rules(self)
            self._state["pbw_mul"] = {}

    # -- basic structure ---------------------------------------------------

    @property
    def ngens(self):
        return len(self.generators)

    def gen_index(self, name):
        try:
            return self.generators.index(name)
        except ValueError:
            raise PresentationError(f"unknown generator {name!r} in {self.name!r}") from None

    def is_relation_free(self):
        return not self.relations

    def cover(self):
        """Relation-free presentation the relations live in (self if already free
        of relations; the free algebra on the same letters for pbw kind)."""
        return self._state["cover"]

    def _build_cover(self):
        if self.kind == "free":
            return self
        if self.kind == "commutative" and not self.relations:
            return self
        cover_kind = "commutative" if self.kind == "commutative" else "free"
        return AlgebraPresentation(self.name + ".cover", cover_kind, self.generators, self.field)

    # -- element constructors ----------------------------------------------

    def unit_monomial(self):
        return () if self.kind == "free" else (0,) * self.ngens

    def zero(self):
        return Polynomial(self, {})

    def one(self):
        return self.scalar(1)

    def scalar(self, c):
        c = self.field.coerce(c)
        if not c:
            return self.zero()
        return Polynomial(self, {self.unit_monomial(): c})

    def gen(self, g):
        i = g if isinstance(g, int) else self.gen_index(g)
        if self.kind == "free":
            m = (i,)
        else:
            m = tuple(1 if k == i else 0 for k in range(self.ngens))
        return Polynomial(self, {m: self.field.one})

    def monomial(self, m, c=1):
        return Polynomial.make(self, [(tuple(m), c)])

    # -- monomial utilities --------------------------------------------------

    def monomial_key(self, m):
        return monomial_key(self.kind, m)

    def monomial_degree(self, m):
        return monomial_degree(self.kind, m)

    def lift_monomial(self, m):
        """Representative of a canonical monomial in the cover (sorted word
        for pbw exponent vectors)."""
        if self.kind == "pbw":
            word = []
            for i, e in enumerate(m):
                word.extend([i] * e)
            return tuple(word)
        return m

    def lift(self, p):
        """Canonical cover representative of an element, monomial by monomial."""
        if p.algebra != self:
            raise AlgebraMismatchError("lift: element not over this algebra")
        cover = self.cover()
        if cover is self:
            return p
        return Polynomial(cover, {self.lift_monomial(m): c for m, c in p.terms.items()})

    def project(self, p):
        """Canonical form in this algebra of an element of the cover (or of
        this algebra itself): the normal-form map."""
        if p.algebra == self:
            return p
        if p.algebra != self.cover():
            raise AlgebraMismatchError(
                f"cannot project from {p.algebra.name!r} into {self.name!r}"
            )
        if self.kind == "pbw":
            acc = {}
            for word, c in p.terms.items():
                for ev, q in self._rewrite_word(word).items():
                    _accumulate(acc, ev, c * q)
            return Polynomial(self, acc)
        # commutative quotient: reduce modulo the cached Groebner basis
        from .ideals import reduce_by_basis

        reduced = reduce_by_basis(p, self.groebner())
        return Polynomial(self, dict(reduced.terms))

    def groebner(self):
        """Reduced Groebner basis of the relation ideal (commutative kind)."""
        if self.kind != "commutative":
            raise UnsupportedKindError("Groebner bases exist for commutative kind only")
        gb = self._state.get("groebner")
        if gb is None:
            from .ideals import buchberger

            gb = buchberger(self.relations, self.cover())
            self._state["groebner"] = gb
        return gb

    def standard_monomial(self, ev):
        """True if the exponent vector survives in the quotient basis."""
        if self.kind != "commutative" or not self.relations:
            return True
        leads = self._state.get("gb_leads")
        if leads is None:
            leads = tuple(g.leading_monomial() for g in self.groebner())
            self._state["gb_leads"] = leads
        return not any(all(ev[i] >= lm[i] for i in range(len(ev))) for lm in leads)

    def monomials_up_to(self, d):
        """All canonical basis monomials of degree <= d, ascending in the
        global order (deterministic)."""
        if self.kind == "free":
            out = []
            for n in range(d + 1):
                out.extend(itertools.product(range(self.ngens), repeat=n))
            return out
        out = [
            ev
            for ev in _expvecs_up_to(self.ngens, d)
            if self.standard_monomial(ev)
        ]
        out.sort(key=expvec_key)
        return out

    # -- pbw rewriting -------------------------------------------------------

    def pbw_rules(self):
        if self.kind != "pbw":
            raise UnsupportedKindError("rewriting rules exist for pbw kind only")
        return self._state["rules"]

    def _rewrite_word(self, word):
        """Normalize a free word into exponent-vector terms by repeated
        application of x_j x_i -> x_i x_j + q_ji."""
        rules = self.pbw_rules()
        out = {}
        stack = [(self.field.one, tuple(word))]
        steps = 0
        while stack:
            coeff, w = stack.pop()
            k = _first_descent(w)
            if k is None:
                ev = [0] * self.ngens
                for idx in w:
                    ev[idx] += 1
                _accumulate(out, tuple(ev), coeff)
                continue
            steps += 1
            if steps > REWRITE_BUDGET:
                raise RewriteBudgetError(
                    f"rewriting budget exceeded in {self.name!r}; presentation "
                    "is likely non-confluent or out of the supported class"
                )
            j, i = w[k], w[k + 1]
            head, tail = w[:k], w[k + 2 :]
            stack.append((coeff, head + (i, j) + tail))
            for qm, qc in rules[(j, i)].terms.items():
                stack.append((coeff * qc, head + qm + tail))
        return out

    def _pbw_mul(self, m1, m2):
        cache = self._state["pbw_mul"]
        hit = cache.get((m1, m2))
        if hit is None:
            hit = self._rewrite_word(self.lift_monomial(m1) + self.lift_monomial(m2))
            cache[(m1, m2)] = hit
        return hit

    def __repr__(self):
        return f"<{self.kind} algebra {self.name!r} on {', '.join(self.generators)}>"


def _compatible_cover(given, expected):
    return (
        given.kind == expected.kind
        and given.generators == expected.generators
        and given.field == expected.field
        and not given.relations
    )


def _accumulate(acc, m, c):
    v = acc.get(m)
    v = c if v is None else v + c
    if v:
        acc[m] = v
    elif m in acc:
        del acc[m]


def _first_descent(word):
    for k in range(len(word) - 1):
        if word[k] > word[k + 1]:
            return k
    return None


def _expvecs_up_to(n, d):
    if n == 0:
        return [()]
    out = []
    for total in range(d + 1):
        out.extend(_expvecs_of_degree(n, total))
    return out


def _expvecs_of_degree(n, total):
    if n == 1:
        return [(total,)]
    out = []
    for first in range(total + 1):
        out.extend((first,) + rest for rest in _expvecs_of_degree(n - 1, total - first))
    return out


def _extract_pbw_rules(algebra):
    """Validate the pbw relation shape and orient the rewriting rules."""
    n = algebra.ngens
    cover = algebra.cover()
    expected_pairs = sorted((j, i) for j in range(n) for i in range(j))
    rules = {}
    for r in algebra.relations:
        pair = None
        for (j, i) in expected_pairs:
            c = r.terms.get((j, i))
            if c:
                pair = (j, i)
                lead_coeff = c
                break
        if pair is None:
            raise PresentationError(
                f"pbw relation {r!r} contains no descending pair x_j*x_i"
            )
        if pair in rules:
            raise PresentationError(
                f"two relations for the generator pair {algebra.generators[pair[0]]},"
                f" {algebra.generators[pair[1]]}"
            )
        j, i = pair
        monic = (algebra.field.one / lead_coeff) * r
        # monic = x_j x_i - x_i x_j - q_ji
        q = {}
        for m, c in monic.terms.items():
            if m == (j, i):
                continue
            if m == (i, j):
                if c != -algebra.field.one:
                    raise PresentationError(
                        f"relation for pair ({algebra.generators[j]},"
                        f" {algebra.generators[i]}) is not of the shape"
                        " x_j*x_i - x_i*x_j - q"
                    )
                continue
            q[m] = -c
        sorted_pair_key = word_key((i, j))
        for m in q:
            if len(m) > 2:
                raise PresentationError(
                    f"pbw tail monomial of degree {len(m)} > 2 in relation {r!r}"
                )
            if word_key(m) >= sorted_pair_key:
                raise PresentationError(
                    f"pbw tail monomial not strictly below x_i*x_j in {r!r}"
                )
        if (i, j) not in monic.terms:
            raise PresentationError(
                f"relation for pair ({algebra.generators[j]}, {algebra.generators[i]})"
                " lacks the sorted word x_i*x_j"
            )
        rules[(j, i)] = Polynomial(cover, q)
    missing = [p for p in expected_pairs if p not in rules]
    if missing:
        j, i = missing[0]
        raise PresentationError(
            f"missing commutation relation for pair ({algebra.generators[j]},"
            f" {algebra.generators[i]})"
        )
    return rules


class Polynomial:
    """Finite scalar combination of canonical monomials over an algebra."""

    __slots__ = ("algebra", "terms")

    def __init__(self, algebra, terms):
        # trusted constructor: monomials canonical, coefficients coerced nonzero
        object.__setattr__(self, "algebra", algebra)
        object.__setattr__(self, "terms", terms)

    def __setattr__(self, name, value):
        raise AttributeError("Polynomial is immutable")

    @classmethod
    def make(cls, algebra, items):
        acc = {}
        n = algebra.ngens
        for m, c in items:
            m = tuple(m)
            if algebra.kind == "free":
                if any(not (0 <= idx < n) for idx in m):
                    raise AlgebraMismatchError(f"word {m} mentions unknown generators")
            else:
                if len(m) != n or any(e < 0 for e in m):
                    raise AlgebraMismatchError(
                        f"exponent vector {m} is ill-formed for {algebra.name!r}"
                    )
            _accumulate(acc, m, algebra.field.coerce(c))
        return cls(algebra, acc)

    # -- queries -------------------------------------------------------------

    def is_zero(self):
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def degree(self):
        """Maximal total degree; -1 for the zero polynomial."""
        if not self.terms:
            return -1
        kind = self.algebra.kind
        return max(monomial_degree(kind, m) for m in self.terms)

    def coefficient(self, m):
        return self.terms.get(tuple(m), self.algebra.field.zero)

    def constant(self):
        return self.terms.get(self.algebra.unit_monomial(), self.algebra.field.zero)

    def sorted_terms(self):
        """(monomial, coefficient) pairs, leading term first."""
        key = self.algebra.monomial_key
        return sorted(self.terms.items(), key=lambda t: key(t[0]), reverse=True)

    def leading_monomial(self):
        if not self.terms:
            raise ValueError("zero polynomial has no leading monomial")
        return max(self.terms, key=self.algebra.monomial_key)

    def leading_coeff(self):
        return self.terms[self.leading_monomial()]

    def monic(self):
        if not self.terms:
            return self
        inv = self.algebra.field.one / self.leading_coeff()
        return inv * self

    # -- arithmetic ------------------------------------------------------------

    def _check_same(self, other):
        if self.algebra is other.algebra:
            return
        if self.algebra != other.algebra:
            raise AlgebraMismatchError(
                f"operands over different algebras: {self.algebra.name!r} vs"
                f" {other.algebra.name!r}"
            )

    def __add__(self, other):
        if not isinstance(other, Polynomial):
            return self + self.algebra.scalar(other)
        self._check_same(other)
        acc = dict(self.terms)
        for m, c in other.terms.items():
            _accumulate(acc, m, c)
        return Polynomial(self.algebra, acc)

    __radd__ = __add__

    def __sub__(self, other):
        if not isinstance(other, Polynomial):
            other = self.algebra.scalar(other)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __neg__(self):
        return Polynomial(self.algebra, {m: -c for m, c in self.terms.items()})

    def __mul__(self, other):
        if not isinstance(other, Polynomial):
            c = self.algebra.field.coerce(other)
            if not c:
                return self.algebra.zero()
            return Polynomial(self.algebra, {m: v * c for m, v in self.terms.items()})
        self._check_same(other)
        A = self.algebra
        acc = {}
        if A.kind == "free":
            for m1, c1 in self.terms.items():
                for m2, c2 in other.terms.items():
                    _accumulate(acc, m1 + m2, c1 * c2)
            return Polynomial(A, acc)
        if A.kind == "commutative":
            for m1, c1 in self.terms.items():
                for m2, c2 in other.terms.items():
                    _accumulate(acc, tuple(a + b for a, b in zip(m1, m2)), c1 * c2)
            raw = Polynomial(A.cover(), acc) if A.relations else None
            if raw is None:
                return Polynomial(A, acc)
            return A.project(raw)
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                c12 = c1 * c2
                for m, q in A._pbw_mul(m1, m2).items():
                    _accumulate(acc, m, c12 * q)
        return Polynomial(A, acc)

    def __rmul__(self, other):
        # scalars commute with everything
        return self * other

    def __pow__(self, e):
        if not isinstance(e, int) or e < 0:
            raise ValueError("polynomial powers take non-negative integer exponents")
        out = self.algebra.one()
        for _ in range(e):
            out = out * self
        return out

    def __eq__(self, other):
        if not isinstance(other, Polynomial):
            if other == 0:
                return not self.terms
            return NotImplemented
        if self.algebra is not other.algebra and self.algebra != other.algebra:
            return False
        return self.terms == other.terms

    def __hash__(self):
        return hash((self.algebra, frozenset(self.terms.items())))

    def __repr__(self):
        from .expressions import poly_str

        return f"<{poly_str(self)} over {self.algebra.name}>"


def normal_form(algebra, p):
    """Canonical form in ``algebra`` of an element given over the algebra or
    its cover: identity for free kind, exponent merge for commutative kind,
    full rewriting for pbw kind."""
    return algebra.project(p)


def partial_derivative(p, gen):
    """Formal partial derivative in a relation-free commutative algebra."""
    A = p.algebra
    if A.kind != "commutative":
        raise UnsupportedKindError("partial derivatives need a commutative algebra")
    if A.relations:
        raise UnsupportedKindError(
            "partial derivatives are taken in the relation-free cover"
        )
    i = gen if isinstance(gen, int) else A.gen_index(gen)
    acc = {}
    for m, c in p.terms.items():
        e = m[i]
        if e:
            lowered = m[:i] + (e - 1,) + m[i + 1 :]
            _accumulate(acc, lowered, c * e)
    return Polynomial(A, acc)


@dataclass(frozen=True)
class ConfluenceReport:
    ok: bool
    failures: tuple  # (k, j, i, difference) per failing critical triple


def check_pbw_confluence(algebra):
    """Resolve every critical triple x_k x_j x_i (k > j > i) along both
    one-step reducts and compare the fully rewritten results."""
    if algebra.kind != "pbw":
        raise UnsupportedKindError("confluence check applies to pbw kind")
    failures = []
    n = algebra.ngens
    for k in range(n):
        for j in range(k):
            for i in range(j):
                word = (k, j, i)
                first = _normalize_after_step(algebra, word, 0)
                second = _normalize_after_step(algebra, word, 1)
                diff = first - second
                if not diff.is_zero():
                    failures.append((k, j, i, diff))
    return ConfluenceReport(not failures, tuple(failures))


def _normalize_after_step(algebra, word, pos):
    rules = algebra.pbw_rules()
    j, i = word[pos], word[pos + 1]
    head, tail = word[:pos], word[pos + 2 :]
    pieces = [(algebra.field.one, head + (i, j) + tail)]
    pieces.extend(
        (qc, head + qm + tail) for qm, qc in rules[(j, i)].terms.items()
    )
    total = algebra.zero()
    for coeff, w in pieces:
        acc = {}
        for ev, c in algebra._rewrite_word(w).items():
            _accumulate(acc, ev, coeff * c)
        total = total + Polynomial(algebra, acc)
    return total
