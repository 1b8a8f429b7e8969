"""Surface syntax for algebra elements.

Grammar (``*`` is mandatory between factors, exponents are non-negative):

    expr     := ['-'] term (('+'|'-') term)*
    term     := factor ('*' factor)*
    factor   := atom ('^' nat)?
    atom     := rational | 'i' | 'h' | name | '(' expr ')'
    rational := nat ('/' nat)?

Printing is the exact inverse on canonical polynomials: terms leading-first
in the global monomial order, so output is reproducible byte for byte.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .arith import GaussianRational, HbarSeries
from .errors import InputError, ParseError


# -- abstract syntax ---------------------------------------------------------


@dataclass(frozen=True)
class ScalarLit:
    value: Fraction


@dataclass(frozen=True)
class ImagUnit:
    pass


@dataclass(frozen=True)
class HbarSym:
    pass


@dataclass(frozen=True)
class Name:
    name: str


@dataclass(frozen=True)
class Sum:
    parts: tuple  # (sign, node) pairs, sign in {+1, -1}


@dataclass(frozen=True)
class Prod:
    factors: tuple  # written order preserved (free algebras care)


@dataclass(frozen=True)
class Pow:
    base: object
    exponent: int


@dataclass(frozen=True)
class Neg:
    inner: object


@dataclass(frozen=True)
class Group:
    inner: object


# -- tokenizer ---------------------------------------------------------------

_SYMBOLS = "+-*^()/"


def _tokenize(src):
    tokens = []
    pos = 0
    n = len(src)
    while pos < n:
        ch = src[pos]
        if ch.isspace():
            pos += 1
            continue
        if ch.isdigit():
            start = pos
            while pos < n and src[pos].isdigit():
                pos += 1
            tokens.append(("int", src[start:pos], start))
            continue
        if ch.isalpha() or ch == "_":
            start = pos
            while pos < n and (src[pos].isalnum() or src[pos] == "_"):
                pos += 1
            tokens.append(("name", src[start:pos], start))
            continue
        if ch in _SYMBOLS:
            tokens.append((ch, ch, pos))
            pos += 1
            continue
        raise ParseError(f"unexpected character {ch!r}", pos)
    tokens.append(("eof", "", n))
    return tokens


class _Parser:
    def __init__(self, src):
        self.tokens = _tokenize(src)
        self.k = 0

    def peek(self):
        return self.tokens[self.k]

    def advance(self):
        tok = self.tokens[self.k]
        self.k += 1
        return tok

    def expect(self, kind):
        tok = self.peek()
        if tok[0] != kind:
            raise ParseError(f"expected {kind!r}, found {tok[1]!r}" if tok[0] != "eof" else f"expected {kind!r}, found end of input", tok[2])
        return self.advance()

    def parse(self):
        node = self.expr()
        tok = self.peek()
        if tok[0] != "eof":
            raise ParseError(f"unexpected trailing {tok[1]!r}", tok[2])
        return node

    def expr(self):
        parts = []
        sign = 1
        if self.peek()[0] == "-":
            self.advance()
            sign = -1
        parts.append((sign, self.term()))
        while self.peek()[0] in ("+", "-"):
            op = self.advance()[0]
            parts.append((1 if op == "+" else -1, self.term()))
        if len(parts) == 1:
            sign, node = parts[0]
            return node if sign == 1 else Neg(node)
        return Sum(tuple(parts))

    def term(self):
        factors = [self.factor()]
        while self.peek()[0] == "*":
            self.advance()
            factors.append(self.factor())
        if len(factors) == 1:
            return factors[0]
        return Prod(tuple(factors))

    def factor(self):
        base = self.atom()
        if self.peek()[0] == "^":
            self.advance()
            tok = self.expect("int")
            return Pow(base, int(tok[1]))
        return base

    def atom(self):
        tok = self.peek()
        if tok[0] == "int":
            self.advance()
            numerator = int(tok[1])
            if self.peek()[0] == "/":
                self.advance()
                den = self.expect("int")
                if int(den[1]) == 0:
                    raise ParseError("zero denominator", den[2])
                return ScalarLit(Fraction(numerator, int(den[1])))
            return ScalarLit(Fraction(numerator))
        if tok[0] == "name":
            self.advance()
            if tok[1] == "i":
                return ImagUnit()
            if tok[1] == "h":
                return HbarSym()
            return Name(tok[1])
        if tok[0] == "(":
            self.advance()
            inner = self.expr()
            self.expect(")")
            return Group(inner)
        if tok[0] == "eof":
            raise ParseError("unexpected end of input", tok[2])
        raise ParseError(f"unexpected {tok[1]!r}", tok[2])


def parse_ast(src):
    return _Parser(src).parse()


# -- evaluation ---------------------------------------------------------------


def parse_polynomial(src, algebra):
    """Parse an expression into a canonical polynomial over the algebra."""
    return _eval_poly(parse_ast(src), algebra)


def _eval_poly(node, algebra):
    if isinstance(node, ScalarLit):
        return algebra.scalar(node.value)
    if isinstance(node, ImagUnit):
        return algebra.scalar(algebra.field.i)
    if isinstance(node, HbarSym):
        raise InputError("'h' used outside a formal (hbar-series) context")
    if isinstance(node, Name):
        if node.name not in algebra.generators:
            raise InputError(f"unknown generator {node.name!r} in {algebra.name!r}")
        return algebra.gen(node.name)
    if isinstance(node, Group):
        return _eval_poly(node.inner, algebra)
    if isinstance(node, Neg):
        return -_eval_poly(node.inner, algebra)
    if isinstance(node, Sum):
        total = algebra.zero()
        for sign, part in node.parts:
            value = _eval_poly(part, algebra)
            total = total + value if sign == 1 else total - value
        return total
    if isinstance(node, Prod):
        out = algebra.one()
        for factor in node.factors:
            out = out * _eval_poly(factor, algebra)
        return out
    if isinstance(node, Pow):
        return _eval_poly(node.base, algebra) ** node.exponent
    raise InputError(f"unknown AST node {node!r}")


def parse_series(src, algebra, order):
    """Parse an expression (which may mention 'h') into an HbarSeries of
    polynomials over the algebra, truncated at the given order."""
    return _eval_series(parse_ast(src), algebra, order)


def _series_const(p, order):
    return HbarSeries.constant(order, p, p.algebra.zero())


def _eval_series(node, algebra, order):
    if isinstance(node, HbarSym):
        coeffs = [algebra.zero()] * (order + 1)
        if order >= 1:
            coeffs[1] = algebra.one()
        return HbarSeries(order, coeffs)
    if isinstance(node, Group):
        return _eval_series(node.inner, algebra, order)
    if isinstance(node, Neg):
        return -_eval_series(node.inner, algebra, order)
    if isinstance(node, Sum):
        total = _series_const(algebra.zero(), order)
        for sign, part in node.parts:
            value = _eval_series(part, algebra, order)
            total = total + value if sign == 1 else total - value
        return total
    if isinstance(node, Prod):
        out = _series_const(algebra.one(), order)
        for factor in node.factors:
            out = out * _eval_series(factor, algebra, order)
        return out
    if isinstance(node, Pow):
        base = _eval_series(node.base, algebra, order)
        out = _series_const(algebra.one(), order)
        for _ in range(node.exponent):
            out = out * base
        return out
    return _series_const(_eval_poly(node, algebra), order)


# -- printing ------------------------------------------------------------------


def scalar_str(c):
    if isinstance(c, GaussianRational):
        if c.im == 0:
            return str(c.re)
        if c.re == 0:
            return _imaginary_str(c.im)
        im = _imaginary_str(abs(c.im))
        sign = "+" if c.im > 0 else "-"
        return f"{c.re}{sign}{im}"
    return str(c)


def _imaginary_str(im):
    if im == 1:
        return "i"
    if im == -1:
        return "-i"
    return f"{im}*i"


def monomial_str(algebra, m):
    if algebra.kind == "free":
        pieces = []
        run_letter, run_len = None, 0
        for idx in m + (None,):
            if idx == run_letter:
                run_len += 1
                continue
            if run_letter is not None:
                g = algebra.generators[run_letter]
                pieces.append(g if run_len == 1 else f"{g}^{run_len}")
            run_letter, run_len = idx, 1
        return "*".join(pieces)
    pieces = []
    for i, e in enumerate(m):
        if e == 0:
            continue
        g = algebra.generators[i]
        pieces.append(g if e == 1 else f"{g}^{e}")
    return "*".join(pieces)


def _term_sign_body(coeff, mono):
    """Split one term into (+1 | -1, printable body without sign)."""
    if isinstance(coeff, GaussianRational) and coeff.im != 0:
        if coeff.re == 0:
            sign = 1 if coeff.im > 0 else -1
            im = abs(coeff.im)
            head = "i" if im == 1 else f"{im}*i"
            body = f"{head}*{mono}" if mono else head
            return sign, body
        body = f"({scalar_str(coeff)})"
        return 1, f"{body}*{mono}" if mono else body
    value = coeff.re if isinstance(coeff, GaussianRational) else coeff
    sign = 1 if value > 0 else -1
    magnitude = abs(value)
    if mono and magnitude == 1:
        return sign, mono
    head = str(magnitude)
    return sign, f"{head}*{mono}" if mono else head


def _join_signed(parts):
    if not parts:
        return "0"
    out = []
    for k, (sign, body) in enumerate(parts):
        if k == 0:
            out.append(f"-{body}" if sign < 0 else body)
        else:
            out.append(f" - {body}" if sign < 0 else f" + {body}")
    return "".join(out)


def poly_str(p):
    parts = [
        _term_sign_body(c, monomial_str(p.algebra, m)) for m, c in p.sorted_terms()
    ]
    return _join_signed(parts)


def series_str(series, algebra):
    parts = []
    for k, coeff in enumerate(series.coeffs):
        if coeff.is_zero():
            continue
        hpow = "" if k == 0 else ("h" if k == 1 else f"h^{k}")
        terms = coeff.sorted_terms()
        if k == 0:
            parts.extend(
                _term_sign_body(c, monomial_str(algebra, m)) for m, c in terms
            )
        elif len(terms) == 1:
            m, c = terms[0]
            mono = monomial_str(algebra, m)
            combined = f"{mono}*{hpow}" if mono else hpow
            parts.append(_term_sign_body(c, combined))
        else:
            parts.append((1, f"({poly_str(coeff)})*{hpow}"))
    return _join_signed(parts)
