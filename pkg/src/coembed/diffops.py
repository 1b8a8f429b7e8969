"""Finite-order differential operators with polynomial coefficients on a
relation-free commutative polynomial algebra: sum of c_alpha * d^alpha terms,
closed under composition via the generalized Leibniz rule."""
from __future__ import annotations

import itertools
from math import comb

from .algebra import Polynomial, partial_derivative
from .errors import AlgebraMismatchError, UnsupportedKindError


def _check_ambient(algebra):
    if algebra.kind != "commutative" or algebra.relations:
        raise UnsupportedKindError(
            "differential operators live on relation-free commutative algebras"
        )


class DiffOp:
    __slots__ = ("algebra", "terms")

    def __init__(self, algebra, terms):
        _check_ambient(algebra)
        clean = {}
        for alpha, coeff in terms.items():
            alpha = tuple(alpha)
            if len(alpha) != algebra.ngens or any(a < 0 for a in alpha):
                raise AlgebraMismatchError(f"bad derivative multi-index {alpha}")
            if coeff.algebra != algebra:
                raise AlgebraMismatchError("coefficient not over the operator's algebra")
            if not coeff.is_zero():
                clean[alpha] = coeff
        object.__setattr__(self, "algebra", algebra)
        object.__setattr__(self, "terms", clean)

    def __setattr__(self, name, value):
        raise AttributeError("DiffOp is immutable")

    @classmethod
    def zero(cls, algebra):
        return cls(algebra, {})

    @classmethod
    def identity(cls, algebra):
        return cls(algebra, {(0,) * algebra.ngens: algebra.one()})

    @classmethod
    def partial(cls, algebra, i, coeff=None):
        alpha = tuple(1 if k == i else 0 for k in range(algebra.ngens))
        return cls(algebra, {alpha: coeff if coeff is not None else algebra.one()})

    @classmethod
    def from_derivation(cls, derivation):
        """Vector field sum(D(x_i) * d/dx_i) attached to a derivation of the
        polynomial algebra."""
        A = derivation.algebra
        terms = {}
        for i in range(A.ngens):
            img = derivation.images[i]
            if not img.is_zero():
                alpha = tuple(1 if k == i else 0 for k in range(A.ngens))
                terms[alpha] = img
        return cls(A, terms)

    def max_order(self):
        return max((sum(alpha) for alpha in self.terms), default=0)

    def is_zero(self):
        return not self.terms

    def is_vector_field(self):
        return all(sum(alpha) == 1 for alpha in self.terms)

    def has_order_zero_term(self):
        return (0,) * self.algebra.ngens in self.terms

    def apply(self, p):
        if p.algebra != self.algebra:
            raise AlgebraMismatchError("operand not over the operator's algebra")
        out = self.algebra.zero()
        for alpha, coeff in self.terms.items():
            out = out + coeff * _iterated_partial(p, alpha)
        return out

    def compose(self, other):
        """Operator composition: self after other."""
        if other.algebra != self.algebra:
            raise AlgebraMismatchError("composition across different algebras")
        A = self.algebra
        acc = {}
        for alpha, a in self.terms.items():
            for beta, b in other.terms.items():
                for gamma in _sub_multi_indices(alpha):
                    binom = 1
                    for ai, gi in zip(alpha, gamma):
                        binom *= comb(ai, gi)
                    residual = tuple(ai - gi for ai, gi in zip(alpha, gamma))
                    shifted = a * binom * _iterated_partial(b, residual)
                    if shifted.is_zero():
                        continue
                    idx = tuple(gi + bi for gi, bi in zip(gamma, beta))
                    prev = acc.get(idx)
                    acc[idx] = shifted if prev is None else prev + shifted
        return DiffOp(A, acc)

    def __add__(self, other):
        if other.algebra != self.algebra:
            raise AlgebraMismatchError("sum across different algebras")
        acc = dict(self.terms)
        for alpha, coeff in other.terms.items():
            prev = acc.get(alpha)
            acc[alpha] = coeff if prev is None else prev + coeff
        return DiffOp(self.algebra, acc)

    def __sub__(self, other):
        return self + other.scale(-1)

    def scale(self, factor):
        return DiffOp(self.algebra, {a: factor * c for a, c in self.terms.items()})

    def __eq__(self, other):
        if not isinstance(other, DiffOp):
            return NotImplemented
        return self.algebra == other.algebra and self.terms == other.terms

    def __hash__(self):
        return hash((self.algebra, frozenset((a, c) for a, c in self.terms.items())))

    def __repr__(self):
        return f"<DiffOp on {self.algebra.name} with {len(self.terms)} terms>"


def _iterated_partial(p, alpha):
    out = p
    for i, times in enumerate(alpha):
        for _ in range(times):
            out = partial_derivative(out, i)
            if out.is_zero():
                return out
    return out


def _sub_multi_indices(alpha):
    return itertools.product(*(range(a + 1) for a in alpha))


def compose_power(op, n):
    out = DiffOp.identity(op.algebra)
    for _ in range(n):
        out = op.compose(out)
    return out
