"""Exact scalars over Q and Q(i), and truncated formal power series in hbar.

Rationals are plain ``fractions.Fraction`` (already canonical: reduced,
positive denominator).  Gaussian rationals are pairs of Fractions with field
arithmetic.  Everything is immutable and pure.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import ScalarError, SeriesMismatchError


_ZERO_FRACTION = Fraction(0)


class GaussianRational:
    """Element a + b*i of Q(i), with exact rational parts."""

    __slots__ = ("re", "im")

    def __init__(self, re=0, im=0):
        if type(re) is not Fraction:
            re = Fraction(re)
        if type(im) is not Fraction:
            im = Fraction(im)
        object.__setattr__(self, "re", re)
        object.__setattr__(self, "im", im)

    def __setattr__(self, name, value):
        raise AttributeError("GaussianRational is immutable")

    @staticmethod
    def _coerce(value):
        if isinstance(value, GaussianRational):
            return value
        if isinstance(value, (int, Fraction)):
            return GaussianRational(value)
        return None

    def __add__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return GaussianRational(self.re + other.re, self.im + other.im)

    __radd__ = __add__

    def __sub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return GaussianRational(self.re - other.re, self.im - other.im)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return other - self

    def __mul__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        a, b = self.re, self.im
        c, d = other.re, other.im
        # zero-part shortcuts keep exact arithmetic cheap in the hot paths
        if not b:
            if not a:
                return _QI_ZERO
            return GaussianRational(a * c, a * d)
        if not d:
            if not c:
                return _QI_ZERO
            return GaussianRational(a * c, b * c)
        return GaussianRational(a * c - b * d, a * d + b * c)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        norm = other.re * other.re + other.im * other.im
        if norm == 0:
            raise ZeroDivisionError("division by zero in Q(i)")
        return GaussianRational(
            (self.re * other.re + self.im * other.im) / norm,
            (self.im * other.re - self.re * other.im) / norm,
        )

    def __rtruediv__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return other / self

    def __neg__(self):
        return GaussianRational(-self.re, -self.im)

    def __pow__(self, exponent):
        if not isinstance(exponent, int):
            return NotImplemented
        if exponent < 0:
            return GaussianRational(1) / self ** (-exponent)
        result = GaussianRational(1)
        base = self
        n = exponent
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def conjugate(self):
        return GaussianRational(self.re, -self.im)

    def __eq__(self, other):
        if isinstance(other, GaussianRational):
            return self.re == other.re and self.im == other.im
        if isinstance(other, (int, Fraction)):
            return self.im == 0 and self.re == other
        return NotImplemented

    def __hash__(self):
        # agree with Fraction when the imaginary part vanishes
        if self.im == 0:
            return hash(self.re)
        return hash((self.re, self.im))

    def __bool__(self):
        return bool(self.re) or bool(self.im)

    def __repr__(self):
        return f"GaussianRational({self.re!r}, {self.im!r})"


I = GaussianRational(0, 1)
_QI_ZERO = GaussianRational(0)
_QI_ONE = GaussianRational(1)

_FIELD_ZERO = {"Q": _ZERO_FRACTION, "Qi": _QI_ZERO}
_FIELD_ONE = {"Q": Fraction(1), "Qi": _QI_ONE}


@dataclass(frozen=True)
class ScalarField:
    """Field tag: "Q" (rationals) or "Qi" (Gaussian rationals)."""

    tag: str

    def coerce(self, value):
        if self.tag == "Q":
            if isinstance(value, GaussianRational):
                if value.im != 0:
                    raise ScalarError(f"{value!r} has nonzero imaginary part, not in Q")
                return value.re
            return Fraction(value)
        if isinstance(value, GaussianRational):
            return value
        return GaussianRational(value)

    @property
    def zero(self):
        return _FIELD_ZERO[self.tag]

    @property
    def one(self):
        return _FIELD_ONE[self.tag]

    @property
    def i(self):
        if self.tag != "Qi":
            raise ScalarError("imaginary unit not available over Q")
        return I

    def __repr__(self):
        return f"ScalarField({self.tag!r})"


QQ = ScalarField("Q")
QI = ScalarField("Qi")

FIELDS = {"Q": QQ, "Qi": QI}


class HbarSeries:
    """Truncated series c_0 + c_1*h + ... + c_r*h^r, coefficients in any
    additive/multiplicative space (scalars or polynomials)."""

    __slots__ = ("order", "coeffs")

    def __init__(self, order, coeffs):
        coeffs = tuple(coeffs)
        if order < 0 or len(coeffs) != order + 1:
            raise SeriesMismatchError(
                f"order {order} needs {order + 1} coefficients, got {len(coeffs)}"
            )
        object.__setattr__(self, "order", order)
        object.__setattr__(self, "coeffs", coeffs)

    def __setattr__(self, name, value):
        raise AttributeError("HbarSeries is immutable")

    @classmethod
    def constant(cls, order, value, zero):
        return cls(order, (value,) + (zero,) * order)

    def __getitem__(self, k):
        return self.coeffs[k]

    def __eq__(self, other):
        if not isinstance(other, HbarSeries):
            return NotImplemented
        return self.order == other.order and self.coeffs == other.coeffs

    def __hash__(self):
        return hash((self.order, self.coeffs))

    def _check_compatible(self, other):
        if not isinstance(other, HbarSeries):
            raise SeriesMismatchError(f"expected HbarSeries, got {type(other).__name__}")
        if self.order != other.order:
            raise SeriesMismatchError(
                f"truncation orders differ: {self.order} vs {other.order}"
            )
        mine, theirs = _space_of(self.coeffs[0]), _space_of(other.coeffs[0])
        if mine != theirs:
            raise SeriesMismatchError(f"coefficient spaces differ: {mine} vs {theirs}")

    def __add__(self, other):
        self._check_compatible(other)
        return HbarSeries(self.order, (a + b for a, b in zip(self.coeffs, other.coeffs)))

    def __sub__(self, other):
        self._check_compatible(other)
        return HbarSeries(self.order, (a - b for a, b in zip(self.coeffs, other.coeffs)))

    def __neg__(self):
        return HbarSeries(self.order, (-a for a in self.coeffs))

    def __mul__(self, other):
        self._check_compatible(other)
        out = []
        for n in range(self.order + 1):
            acc = self.coeffs[0] * other.coeffs[n]
            for a in range(1, n + 1):
                acc = acc + self.coeffs[a] * other.coeffs[n - a]
            out.append(acc)
        return HbarSeries(self.order, out)

    def scale(self, factor):
        return HbarSeries(self.order, (factor * c for c in self.coeffs))

    def shift(self, k, zero):
        """Multiply by h^k, truncating at the series order."""
        coeffs = (zero,) * k + self.coeffs
        return HbarSeries(self.order, coeffs[: self.order + 1])

    def is_zero(self):
        return all(_coeff_is_zero(c) for c in self.coeffs)

    def __repr__(self):
        return f"HbarSeries({self.order}, {list(self.coeffs)!r})"


def _space_of(coeff):
    algebra = getattr(coeff, "algebra", None)
    if algebra is not None:
        return ("poly", algebra)
    return ("scalar",)


def _coeff_is_zero(coeff):
    probe = getattr(coeff, "is_zero", None)
    if probe is not None:
        return probe()
    return coeff == 0


def series_combine(lhs, rhs, op):
    """Combine two series coefficientwise (add) or by truncated Cauchy
    product (mul)."""
    if op == "add":
        return lhs + rhs
    if op == "mul":
        return lhs * rhs
    raise SeriesMismatchError(f"unknown op {op!r}")
