"""Derivations of presented algebras: validity checks, the degree-bounded
solver with ideal-preservation and pushforward constraints, pushforward along
witnessed surjections, inner-derivation search, and the constructive lifts
(free algebras, tensor products) together with the 2x2-matrix admissibility
criterion.

"Degree bound d" always bounds the degree of the generator images D(x_i).
Infeasibility is therefore a per-bound certificate ("no derivation with
images of degree <= d"), never an all-degree nonexistence claim.
"""
from __future__ import annotations

from dataclasses import dataclass

from .algebra import Polynomial
from .errors import AlgebraMismatchError, CoembedError, HomError, NotInDerPiError
from .ideals import ideal_member, truncated_ideal_basis
from .linalg import nullspace, rref, solve_affine


@dataclass(frozen=True)
class Derivation:
    """Determined by one image polynomial per generator, extended by Leibniz."""

    algebra: object
    images: tuple

    def __post_init__(self):
        images = tuple(self.images)
        if len(images) != self.algebra.ngens:
            raise AlgebraMismatchError("one image per generator required")
        for img in images:
            if not isinstance(img, Polynomial) or img.algebra != self.algebra:
                raise AlgebraMismatchError("derivation images must live in the algebra")
        object.__setattr__(self, "images", images)

    @classmethod
    def zero(cls, algebra):
        return cls(algebra, tuple(algebra.zero() for _ in range(algebra.ngens)))

    @classmethod
    def from_dict(cls, algebra, images):
        return cls(algebra, tuple(images[g] for g in algebra.generators))

    def image_of(self, g):
        i = g if isinstance(g, int) else self.algebra.gen_index(g)
        return self.images[i]

    def apply(self, p):
        if p.algebra != self.algebra:
            raise AlgebraMismatchError("derivation applied to a foreign element")
        return leibniz_value(self.algebra, self.images, self.algebra.lift(p))

    def is_zero(self):
        return all(img.is_zero() for img in self.images)

    def __add__(self, other):
        if other.algebra != self.algebra:
            raise AlgebraMismatchError("derivation sum across algebras")
        return Derivation(
            self.algebra, tuple(a + b for a, b in zip(self.images, other.images))
        )

    def __rmul__(self, c):
        return Derivation(self.algebra, tuple(c * img for img in self.images))

    def __repr__(self):
        pieces = ", ".join(
            f"{g} -> {img!r}" for g, img in zip(self.algebra.generators, self.images)
        )
        return f"<derivation {pieces}>"


def leibniz_value(algebra, images, cover_poly):
    """Leibniz extension applied to a cover element, evaluated in the algebra.

    The value at a word w is sum_k  w[:k] * images[w[k]] * w[k+1:]; at an
    exponent vector a it is sum_i a_i x^(a - e_i) * images[i].
    """
    out = algebra.zero()
    if cover_poly.algebra.kind == "free":
        for word, c in cover_poly.terms.items():
            for k, idx in enumerate(word):
                img = images[idx]
                if img.is_zero():
                    continue
                left = algebra.project(_cover_monomial(cover_poly.algebra, word[:k], c))
                right = algebra.project(
                    _cover_monomial(cover_poly.algebra, word[k + 1 :], 1)
                )
                out = out + left * img * right
    else:
        cover = cover_poly.algebra
        for ev, c in cover_poly.terms.items():
            for i, e in enumerate(ev):
                if e == 0:
                    continue
                img = images[i]
                if img.is_zero():
                    continue
                lowered = ev[:i] + (e - 1,) + ev[i + 1 :]
                factor = algebra.project(Polynomial(cover, {lowered: cover.field.coerce(c * e)}))
                out = out + factor * img
    return out


def _cover_monomial(cover, m, c):
    return Polynomial(cover, {tuple(m): cover.field.coerce(c)}) if c else cover.zero()


@dataclass(frozen=True)
class DerivationReport:
    ok: bool
    failures: tuple  # (relation, defect) pairs


def check_derivation(D):
    """A generator assignment extends to a derivation of the quotient iff the
    Leibniz extension maps every defining relation into the relation ideal,
    i.e. its canonical form vanishes."""
    failures = []
    for r in D.algebra.relations:
        defect = leibniz_value(D.algebra, D.images, r)
        if not defect.is_zero():
            failures.append((r, defect))
    return DerivationReport(not failures, tuple(failures))


@dataclass(frozen=True)
class SolveReport:
    degree_bound: int
    constraints: tuple
    status: str  # "basis" | "affine-solution" | "infeasible-within-bound"
    basis: tuple
    particular: object
    dims: dict
    notes: tuple


def solve_derivations(algebra, d, preserve=None, pushforward=None):
    """Exact linear solve for all derivations with generator images of degree
    <= d, optionally constrained to preserve an ideal and to push forward to
    a prescribed derivation of a quotient.

    pushforward is a pair (hom, target) with target a derivation of the
    codomain; feasibility then means a lift exists at this bound.
    """
    monomials = algebra.monomials_up_to(d)
    labels = [(i, m) for i in range(algebra.ngens) for m in monomials]
    one = algebra.field.one

    unit_images = {m: Polynomial(algebra, {m: one}) for m in monomials}

    system = _PolySystem(algebra.field)
    constraints = ["leibniz-on-relations"] if algebra.relations else []
    notes = []

    for r in algebra.relations:
        contribs = {}
        for col, (i, m) in enumerate(labels):
            images = _one_hot(algebra, i, unit_images[m])
            value = leibniz_value(algebra, images, r)
            if not value.is_zero():
                contribs[col] = value
        system.add_block(contribs, algebra.zero())

    aux_offset = len(labels)
    aux_count = 0
    if preserve is not None:
        if preserve.ambient != algebra:
            raise AlgebraMismatchError("preserve ideal must live in the algebra")
        bound = d + preserve.max_generator_degree()
        basis_polys = truncated_ideal_basis(preserve, bound)
        constraints.append(f"preserve-ideal(deg<={bound})")
        notes.append(
            f"ideal membership linearized against the truncated basis at degree {bound}"
        )
        if algebra.kind != "commutative":
            notes.append("noncommutative ambient: membership is the bounded span")
        for g in preserve.generators:
            lifted = algebra.lift(g)
            contribs = {}
            for col, (i, m) in enumerate(labels):
                value = leibniz_value(
                    algebra, _one_hot(algebra, i, unit_images[m]), lifted
                )
                if not value.is_zero():
                    contribs[col] = value
            for k, b in enumerate(basis_polys):
                contribs[aux_offset + aux_count + k] = -b
            aux_count += len(basis_polys)
            system.add_block(contribs, algebra.zero())

    if pushforward is not None:
        hom, target = pushforward
        if hom.domain != algebra:
            raise AlgebraMismatchError("pushforward hom must start at the algebra")
        if target.algebra != hom.codomain:
            raise AlgebraMismatchError("pushforward target must live on the codomain")
        constraints.append("pushforward")
        image_cache = {m: hom.apply(Polynomial(algebra, {m: one})) for m in monomials}
        for i in range(algebra.ngens):
            contribs = {}
            for col, (gi, m) in enumerate(labels):
                if gi != i:
                    continue
                value = image_cache[m]
                if not value.is_zero():
                    contribs[col] = value
            rhs = target.apply(hom.images[i])
            system.add_block(contribs, rhs)

    ncols = len(labels) + aux_count
    rows, rhs = system.assemble(ncols)

    def to_derivation(vec):
        per_gen = [dict() for _ in range(algebra.ngens)]
        for col, (i, m) in enumerate(labels):
            if vec[col]:
                per_gen[i][m] = vec[col]
        return Derivation(
            algebra, tuple(Polynomial(algebra, terms) for terms in per_gen)
        )

    if pushforward is None:
        kernel_vectors = nullspace(rows, ncols, one)
        basis = _canonical_basis(kernel_vectors, len(labels), one)
        report = SolveReport(
            d,
            tuple(constraints),
            "basis",
            tuple(to_derivation(v) for v in basis),
            None,
            {"unknowns": len(labels), "aux": aux_count, "dim": len(basis)},
            tuple(notes),
        )
    else:
        particular, kernel_vectors = solve_affine(rows, rhs, ncols, one)
        basis = _canonical_basis(kernel_vectors, len(labels), one)
        if particular is None:
            report = SolveReport(
                d,
                tuple(constraints),
                "infeasible-within-bound",
                (),
                None,
                {"unknowns": len(labels), "aux": aux_count, "dim": len(basis)},
                tuple(notes),
            )
        else:
            report = SolveReport(
                d,
                tuple(constraints),
                "affine-solution",
                tuple(to_derivation(v) for v in basis),
                to_derivation(particular),
                {"unknowns": len(labels), "aux": aux_count, "dim": len(basis)},
                tuple(notes),
            )
    _verify_report(report, algebra, preserve, pushforward)
    return report


def _one_hot(algebra, i, img):
    return tuple(
        img if k == i else algebra.zero() for k in range(algebra.ngens)
    )


def _canonical_basis(vectors, width, one):
    """Project solution vectors onto the primary unknowns and echelonize for
    a deterministic basis."""
    trimmed = [v[:width] for v in vectors]
    trimmed = [v for v in trimmed if any(v)]
    if not trimmed:
        return []
    reduced, pivots = rref(trimmed)
    return [reduced[r] for r in range(len(pivots))]


class _PolySystem:
    """Collects polynomial-valued linear forms in the unknowns and expands
    them into scalar rows, one per monomial coordinate."""

    def __init__(self, fld):
        self.blocks = []
        self.field = fld

    def add_block(self, contribs, rhs):
        self.blocks.append((contribs, rhs))

    def assemble(self, ncols):
        zero = self.field.zero
        rows, rhs_out = [], []
        for contribs, rhs in self.blocks:
            monomials = set(rhs.terms)
            for value in contribs.values():
                monomials.update(value.terms)
            if not monomials:
                continue
            algebra = rhs.algebra
            for m in sorted(monomials, key=algebra.monomial_key):
                row = [zero] * ncols
                for col, value in contribs.items():
                    c = value.terms.get(m)
                    if c:
                        row[col] = c
                rows.append(row)
                rhs_out.append(rhs.terms.get(m, zero))
        return rows, rhs_out


def _verify_report(report, algebra, preserve, pushforward):
    """Every derivation a report exposes must satisfy every active constraint
    exactly; anything else is an internal error."""
    candidates = list(report.basis)
    if report.particular is not None:
        candidates.append(report.particular)
    for D in candidates:
        if not check_derivation(D).ok:
            raise CoembedError("solver produced a non-derivation")  # pragma: no cover
        if preserve is not None:
            for g in preserve.generators:
                if not ideal_member(preserve, D.apply(g)):
                    raise CoembedError("solver violated ideal preservation")  # pragma: no cover
    if pushforward is not None and report.particular is not None:
        hom, target = pushforward
        for i in range(algebra.ngens):
            got = hom.apply(report.particular.images[i])
            want = target.apply(hom.images[i])
            if got != want:
                raise CoembedError("solver violated the pushforward rows")  # pragma: no cover
        for D in report.basis:
            for i in range(algebra.ngens):
                if not hom.apply(D.images[i]).is_zero():
                    raise CoembedError("kernel element fails to push to zero")  # pragma: no cover


def pushforward(D, hom):
    """Unique derivation downstairs with Dtilde o pi = pi o D.

    Requires witnesses; when the hom carries its kernel ideal the membership
    of D(ker) in ker is checked (Der_pi), otherwise the well-definedness is
    trusted to the witnesses (flagged mode).
    """
    if hom.witnesses is None:
        raise HomError("pushforward needs a witnessed hom")
    if D.algebra != hom.domain:
        raise AlgebraMismatchError("derivation must live on the hom's domain")
    if hom.kernel is not None:
        for g in hom.kernel.generators:
            if not ideal_member(hom.kernel, D.apply(g)):
                raise NotInDerPiError(
                    f"derivation does not preserve the kernel ideal at generator {g!r}"
                )
    images = tuple(
        hom.apply(D.apply(hom.witness_for(g))) for g in hom.codomain.generators
    )
    out = Derivation(hom.codomain, images)
    verdict = check_derivation(out)
    if not verdict.ok:
        raise NotInDerPiError("pushforward is not well defined on the codomain")
    return out


def is_inner(algebra, D, d):
    """Search for x of degree <= d with D = [x, .]; returns the echelon
    representative witness or None within the bound."""
    monomials = algebra.monomials_up_to(d)
    one = algebra.field.one
    system = _PolySystem(algebra.field)
    for i in range(algebra.ngens):
        gen = algebra.gen(i)
        contribs = {}
        for col, m in enumerate(monomials):
            mono = Polynomial(algebra, {m: one})
            value = mono * gen - gen * mono
            if not value.is_zero():
                contribs[col] = value
        system.add_block(contribs, D.images[i])
    rows, rhs = system.assemble(len(monomials))
    particular, _ = solve_affine(rows, rhs, len(monomials), one)
    if particular is None:
        return None
    terms = {m: c for m, c in zip(monomials, particular) if c}
    return Polynomial(algebra, terms)


def free_lift(hom, target):
    """Constructive lift through a witnessed surjection out of a free
    algebra: x maps to the witness substitution of target(pi(x))."""
    if hom.domain.kind != "free":
        raise AlgebraMismatchError("free_lift needs a free domain")
    if target.algebra != hom.codomain:
        raise AlgebraMismatchError("target must live on the codomain")
    images = tuple(
        hom.witness_subst(target.apply(img)) for img in hom.images
    )
    return Derivation(hom.domain, images)


def tensor_lift(tensor, augmentation, D):
    """Lift a derivation of the second tensor factor: fix the first factor,
    apply D to the second."""
    T = tensor.algebra
    a1 = tensor.incl1.domain
    a2 = tensor.incl2.domain
    if augmentation.domain != a1:
        raise AlgebraMismatchError("augmentation must start at the first factor")
    if D.algebra != a2:
        raise AlgebraMismatchError("derivation must live on the second factor")
    images = [T.zero() for _ in range(a1.ngens)]
    images.extend(tensor.incl2.apply(img) for img in D.images)
    out = Derivation(T, tuple(images))
    verdict = check_derivation(out)
    if not verdict.ok:
        raise CoembedError("tensor lift failed the derivation check")  # pragma: no cover
    return out


def augmentation_quotient_hom(tensor, augmentation):
    """The witnessed surjection (augmentation (x) id): A1 (x) A2 -> A2, with
    kernel generated by the centered first-factor generators."""
    from .ideals import IdealPresentation
    from .morphisms import AlgebraHom

    T = tensor.algebra
    a1 = tensor.incl1.domain
    a2 = tensor.incl2.domain
    images = []
    for i in range(a1.ngens):
        value = augmentation.apply(a1.gen(i))
        images.append(a2.scalar(value.constant()))
    images.extend(a2.gen(i) for i in range(a2.ngens))
    witnesses = tuple(tensor.incl2.apply(a2.gen(i)) for i in range(a2.ngens))
    kernel_gens = tuple(
        tensor.incl1.apply(a1.gen(i)) - T.scalar(images[i].constant())
        for i in range(a1.ngens)
    )
    kernel = IdealPresentation(T, kernel_gens)
    return AlgebraHom(T, a2, tuple(images), witnesses, kernel)


def admissibility_check(algebra, images):
    """Lemma criterion: x -> [[x, D(x)], [0, x]] extends to a homomorphism
    into 2x2 matrices iff the images define a derivation.  Evaluates every
    defining relation as a matrix and demands the zero matrix."""
    if isinstance(images, dict):
        images = tuple(images[g] for g in algebra.generators)
    mats = [
        _Mat2(algebra.gen(i), images[i], algebra.zero(), algebra.gen(i))
        for i in range(algebra.ngens)
    ]
    for r in algebra.relations:
        total = _Mat2.zero(algebra)
        cover = r.algebra
        for m, c in r.terms.items():
            if cover.kind == "free":
                prod = _Mat2.identity(algebra)
                for idx in m:
                    prod = prod * mats[idx]
            else:
                prod = _Mat2.identity(algebra)
                for idx, e in enumerate(m):
                    for _ in range(e):
                        prod = prod * mats[idx]
            total = total + prod.scale(c)
        if not total.is_zero():
            return False
    return True


class _Mat2:
    __slots__ = ("a", "b", "c", "d")

    def __init__(self, a, b, c, d):
        self.a, self.b, self.c, self.d = a, b, c, d

    @classmethod
    def zero(cls, algebra):
        z = algebra.zero()
        return cls(z, z, z, z)

    @classmethod
    def identity(cls, algebra):
        z, o = algebra.zero(), algebra.one()
        return cls(o, z, z, o)

    def __mul__(self, other):
        return _Mat2(
            self.a * other.a + self.b * other.c,
            self.a * other.b + self.b * other.d,
            self.c * other.a + self.d * other.c,
            self.c * other.b + self.d * other.d,
        )

    def __add__(self, other):
        return _Mat2(
            self.a + other.a, self.b + other.b, self.c + other.c, self.d + other.d
        )

    def scale(self, c):
        return _Mat2(c * self.a, c * self.b, c * self.c, c * self.d)

    def is_zero(self):
        return (
            self.a.is_zero() and self.b.is_zero() and self.c.is_zero() and self.d.is_zero()
        )
