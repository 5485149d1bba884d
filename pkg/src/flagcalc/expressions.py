"""Canonical text form of classes, and the parser for class expressions.

Grammar accepted (and emitted) for a class expression::

    expr  := [sign] term (sign term)*
    term  := (factor '*')* basis
    basis := 'O[' word ']' | 'I[' word ']' | 'FP[' word ']' | 'X[' word ']'
    factor:= int | int '/' int | [int] 'y' ['^' int]
           | 'e[' ints ']' | 'ef[' ints ']' | 't'k ['^' int]
           | '(' coefficient-sum ')'

Weights print in simple-root coordinates as ``e[m1,...,mn]`` when integral
there, else in fundamental coordinates as ``ef[f1,...,fn]``; ``y``-polynomials
print as ``(c0+c1y+...)``.  ``t``k are the fundamental-weight variables of the
cohomology side and are only legal next to ``X[...]`` symbols, just as ``e``
monomials and ``y`` are only legal next to the K-theory symbols.

Parse-print round trips are the identity on canonical forms.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Union

from .charring import LaurentPolynomial, SymPolynomial, YPoly
from .errors import ParseError
from .rootsys import RootSystem, Weight

BASIS_KINDS = ("O", "I", "FP", "X")


# -- printing -------------------------------------------------------------------


def weight_str(rs: RootSystem, lam: Weight) -> str:
    m = rs.integral_simple_coords(lam)
    if m is not None:
        return "e[" + ",".join(str(c) for c in m) + "]"
    return "ef[" + ",".join(str(c) for c in lam) + "]"


def ypoly_str(yp: YPoly) -> str:
    if not yp:
        return "0"
    parts = []
    for k, c in enumerate(yp):
        if c == 0:
            continue
        mag = abs(c)
        if k == 0:
            body = str(mag)
        else:
            body = ("" if mag == 1 else str(mag)) + "y" + (f"^{k}" if k > 1 else "")
        if not parts:
            parts.append(("-" if c < 0 else "") + body)
        else:
            parts.append(("-" if c < 0 else "+") + body)
    return "".join(parts)


def _ymono(yp: YPoly) -> Optional[tuple[int, int]]:
    """(coefficient, degree) when yp is a single monomial, else None."""
    nonzero = [(k, c) for k, c in enumerate(yp) if c]
    if len(nonzero) == 1:
        return nonzero[0][1], nonzero[0][0]
    return None


def _laurent_term(rs: RootSystem, lam: Weight, yp: YPoly) -> tuple[bool, str]:
    """(negative, body) of a single coeff * e^lam term."""
    mono = _ymono(yp)
    if mono is None:
        coeffpart, negative = "(" + ypoly_str(yp) + ")", False
    else:
        c, k = mono
        negative = c < 0
        mag = abs(c)
        if k == 0:
            coeffpart = str(mag) if mag != 1 else ""
        else:
            coeffpart = ("" if mag == 1 else str(mag)) + "y" + (f"^{k}" if k > 1 else "")
    if any(lam):
        epart = weight_str(rs, lam)
        body = coeffpart + "*" + epart if coeffpart else epart
    else:
        body = coeffpart or "1"
    return negative, body


def _join_terms(terms: list[tuple[bool, str]]) -> str:
    if not terms:
        return "0"
    out = []
    for idx, (negative, body) in enumerate(terms):
        if idx == 0:
            out.append(("-" if negative else "") + body)
        else:
            out.append((" - " if negative else " + ") + body)
    return "".join(out)


def laurent_str(rs: RootSystem, f: LaurentPolynomial) -> str:
    return _join_terms([_laurent_term(rs, lam, yp) for lam, yp in f.sorted_terms()])


def _coeff_symbol_term(rs: RootSystem, f: LaurentPolynomial, symbol: str) -> tuple[bool, str]:
    if len(f.terms) == 1:
        (lam, yp), = f.terms.items()
        if _ymono(yp) is not None:
            negative, body = _laurent_term(rs, lam, yp)
            return negative, symbol if body == "1" else body + "*" + symbol
    return False, "(" + laurent_str(rs, f) + ")*" + symbol


def kclass_str(u, kind: str = "O") -> str:
    """Canonical string of a K-side class in the given basis symbols."""
    from .weyl import word_str

    terms = []
    for w in sorted(u.terms, key=lambda w: (w.length, w.word)):
        symbol = f"{kind}[{','.join(str(i) for i in w.word)}]"
        terms.append(_coeff_symbol_term(u.rs, u.terms[w], symbol))
    return _join_terms(terms)


def frac_str(c: Fraction) -> str:
    return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"


def _sym_mono(e: tuple[int, ...]) -> str:
    parts = []
    for j, p in enumerate(e):
        if p == 1:
            parts.append(f"t{j + 1}")
        elif p > 1:
            parts.append(f"t{j + 1}^{p}")
    return "*".join(parts)


def _sym_term(e: tuple[int, ...], c: Fraction) -> tuple[bool, str]:
    mono = _sym_mono(e)
    mag = abs(c)
    if not mono:
        return c < 0, frac_str(mag)
    if mag == 1:
        return c < 0, mono
    return c < 0, frac_str(mag) + "*" + mono


def sym_str(f: SymPolynomial) -> str:
    return _join_terms([_sym_term(e, c) for e, c in f.sorted_terms()])


def cohclass_str(c) -> str:
    terms = []
    for w in sorted(c.terms, key=lambda w: (w.length, w.word)):
        symbol = f"X[{','.join(str(i) for i in w.word)}]"
        f = c.terms[w]
        if len(f.terms) == 1:
            (e, coeff), = f.terms.items()
            negative, body = _sym_term(e, coeff)
            terms.append((negative, symbol if body == "1" else body + "*" + symbol))
        else:
            terms.append((False, "(" + sym_str(f) + ")*" + symbol))
    return _join_terms(terms)


# -- tokenizing -------------------------------------------------------------------

_TOKEN_RE = re.compile(
    r"(?P<ws>\s+)"
    r"|(?P<int>\d+)"
    r"|(?P<efopen>ef\[)"
    r"|(?P<eopen>e\[)"
    r"|(?P<fpopen>FP\[)"
    r"|(?P<oopen>O\[)"
    r"|(?P<iopen>I\[)"
    r"|(?P<xopen>X\[)"
    r"|(?P<tvar>t\d+)"
    r"|(?P<y>y)"
    r"|(?P<op>[-+*/^(),\]])"
)


@dataclass
class _Token:
    kind: str
    text: str
    pos: int


def _tokenize(text: str) -> list[_Token]:
    out = []
    pos = 0
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if m is None:
            raise ParseError(f"unexpected character {text[pos]!r}", pos)
        kind = m.lastgroup
        if kind != "ws":
            out.append(_Token(kind, m.group(), pos))
        pos = m.end()
    out.append(_Token("eof", "", len(text)))
    return out


# -- parsing ----------------------------------------------------------------------

# factor AST nodes: ("int", n), ("frac", Fraction), ("y", coeff, power),
# ("e", coords, fundamental), ("t", var_index, power), ("paren", [(sign, [factors])])


class _Parser:
    def __init__(self, rs: RootSystem, text: str):
        self.rs = rs
        self.tokens = _tokenize(text)
        self.k = 0

    def peek(self) -> _Token:
        return self.tokens[self.k]

    def take(self) -> _Token:
        tok = self.tokens[self.k]
        self.k += 1
        return tok

    def expect_op(self, op: str) -> _Token:
        tok = self.take()
        if tok.kind != "op" or tok.text != op:
            raise ParseError(f"expected {op!r}", tok.pos)
        return tok

    def parse_int_list(self) -> list[int]:
        """Signed integers up to the closing bracket (may be empty)."""
        out = []
        if self.peek().kind == "op" and self.peek().text == "]":
            self.take()
            return out
        while True:
            sign = 1
            if self.peek().kind == "op" and self.peek().text == "-":
                self.take()
                sign = -1
            tok = self.take()
            if tok.kind != "int":
                raise ParseError("expected an integer", tok.pos)
            out.append(sign * int(tok.text))
            tok = self.take()
            if tok.kind == "op" and tok.text == "]":
                return out
            if not (tok.kind == "op" and tok.text == ","):
                raise ParseError("expected ',' or ']'", tok.pos)

    def _optional_caret_power(self) -> int:
        if self.peek().kind == "op" and self.peek().text == "^":
            self.take()
            tok = self.take()
            if tok.kind != "int":
                raise ParseError("expected an exponent", tok.pos)
            return int(tok.text)
        return 1

    def parse_factor(self):
        tok = self.take()
        if tok.kind == "int":
            n = int(tok.text)
            nxt = self.peek()
            if nxt.kind == "y":
                self.take()
                return ("y", n, self._optional_caret_power())
            if nxt.kind == "op" and nxt.text == "/":
                self.take()
                den = self.take()
                if den.kind != "int":
                    raise ParseError("expected a denominator", den.pos)
                return ("frac", Fraction(n, int(den.text)))
            return ("int", n)
        if tok.kind == "y":
            return ("y", 1, self._optional_caret_power())
        if tok.kind in ("eopen", "efopen"):
            coords = self.parse_int_list()
            if len(coords) != self.rs.rank:
                raise ParseError(f"expected {self.rs.rank} coordinates", tok.pos)
            return ("e", tuple(coords), tok.kind == "efopen")
        if tok.kind == "tvar":
            return ("t", int(tok.text[1:]), self._optional_caret_power())
        if tok.kind == "op" and tok.text == "(":
            body = self.parse_signed_products(closing=")")
            return ("paren", body)
        raise ParseError("expected a coefficient factor", tok.pos)

    def parse_signed_products(self, closing: str) -> list[tuple[int, list]]:
        """[sign] factors {('+'|'-') factors} up to the closing delimiter."""
        out = []
        sign = 1
        if self.peek().kind == "op" and self.peek().text in "+-":
            sign = -1 if self.take().text == "-" else 1
        while True:
            factors = [self.parse_factor()]
            while self.peek().kind == "op" and self.peek().text == "*":
                self.take()
                factors.append(self.parse_factor())
            out.append((sign, factors))
            tok = self.take()
            if tok.kind == "op" and tok.text == closing:
                return out
            if tok.kind == "op" and tok.text in "+-":
                sign = -1 if tok.text == "-" else 1
            else:
                raise ParseError(f"expected '+', '-' or {closing!r}", tok.pos)


def _eval_laurent(rs: RootSystem, factors: list, pos: int) -> LaurentPolynomial:
    out = LaurentPolynomial.one(rs.rank)
    for node in factors:
        if node[0] == "int":
            out = out * node[1]
        elif node[0] == "y":
            out = out * LaurentPolynomial.exp(
                (0,) * rs.rank, (0,) * node[2] + (node[1],))
        elif node[0] == "e":
            coords, fundamental = node[1], node[2]
            lam = coords if fundamental else rs.weight_of_simple_coords(coords)
            out = out * LaurentPolynomial.exp(tuple(lam))
        elif node[0] == "paren":
            acc = LaurentPolynomial.zero()
            for sign, fs in node[1]:
                acc += _eval_laurent(rs, fs, pos) * sign
            out = out * acc
        else:
            raise ParseError("cohomology-only factor in a K-theory expression", pos)
    return out


def _eval_sym(rs: RootSystem, factors: list, pos: int) -> SymPolynomial:
    out = SymPolynomial.one(rs.rank)
    for node in factors:
        if node[0] == "int":
            out = out * node[1]
        elif node[0] == "frac":
            out = out * node[1]
        elif node[0] == "t":
            idx, power = node[1], node[2]
            if not 1 <= idx <= rs.rank:
                raise ParseError(f"variable t{idx} out of range", pos)
            e = tuple(power if j == idx - 1 else 0 for j in range(rs.rank))
            out = out * SymPolynomial({e: Fraction(1)})
        elif node[0] == "paren":
            acc = SymPolynomial.zero()
            for sign, fs in node[1]:
                acc += _eval_sym(rs, fs, pos) * sign
            out = out * acc
        else:
            raise ParseError("K-theory factor in a cohomology expression", pos)
    return out


@dataclass
class ParsedClass:
    """A parsed linear combination of basis symbols of one kind."""

    kind: str  # "O", "I", "FP" or "X"
    terms: list[tuple[Union[LaurentPolynomial, SymPolynomial], tuple[int, ...]]]


_ATOM_KINDS = {"oopen": "O", "iopen": "I", "fpopen": "FP", "xopen": "X"}


def parse_class(rs: RootSystem, text: str) -> ParsedClass:
    """Parse a class expression; raises ParseError with a position."""
    parser = _Parser(rs, text)
    kind: Optional[str] = None
    terms = []
    sign = 1
    if parser.peek().kind == "op" and parser.peek().text in "+-":
        sign = -1 if parser.take().text == "-" else 1
    while True:
        factors = []
        word = None
        while True:
            tok = parser.peek()
            if tok.kind in _ATOM_KINDS:
                parser.take()
                atom_kind = _ATOM_KINDS[tok.kind]
                if kind is None:
                    kind = atom_kind
                elif kind != atom_kind:
                    raise ParseError(
                        f"mixed basis symbols {kind} and {atom_kind}", tok.pos)
                word = tuple(parser.parse_int_list())
                break
            factors.append(parser.parse_factor())
            nxt = parser.peek()
            if nxt.kind == "op" and nxt.text == "*":
                parser.take()
            elif nxt.kind not in _ATOM_KINDS:
                raise ParseError("expected '*' or a basis symbol", nxt.pos)
        if any(c < 0 for c in word):
            raise ParseError("negative simple-root index", parser.peek().pos)
        if kind == "X":
            coeff: Union[LaurentPolynomial, SymPolynomial] = \
                _eval_sym(rs, factors, parser.peek().pos) * sign
        else:
            coeff = _eval_laurent(rs, factors, parser.peek().pos) * sign
        terms.append((coeff, word))
        tok = parser.take()
        if tok.kind == "eof":
            return ParsedClass(kind, terms)
        if tok.kind == "op" and tok.text in "+-":
            sign = -1 if tok.text == "-" else 1
        else:
            raise ParseError("expected '+', '-' or end of expression", tok.pos)
