"""Parser for the polynomial text grammar.

    expression  ::= ['+'|'-'] term (('+'|'-') term)*
    term        ::= coefficient ('*' factor)* | factor ('*' factor)*
    factor      ::= identifier ('^' nonneg-integer)?
    coefficient ::= integer | integer '/' positive-integer

Whitespace is insignificant.  Identifiers are names like ``x1`` or bracketed
generator names like ``a[1,0]``.  The same parse tree feeds the commutative and
the noncommutative builders; in the latter, factors multiply in written order.
"""

from __future__ import annotations

import re
from fractions import Fraction

from .errors import FieldError, ParseError, UnknownIdentifier
from .field import FieldSpec
from .poly import CPoly, NCPoly

_TOKEN_RE = re.compile(
    r"""
    (?P<ws>\s+)
  | (?P<num>\d+)
  | (?P<ident>[A-Za-z_][A-Za-z0-9_]*(?:\[\s*\d+(?:\s*,\s*\d+)*\s*\])?)
  | (?P<op>[-+*^/])
    """,
    re.VERBOSE,
)


def _normalize_ident(name: str) -> str:
    return re.sub(r"\s+", "", name)


def tokenize(text: str) -> list[tuple[str, str, int]]:
    tokens = []
    pos = 0
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if not m:
            raise ParseError(f"unexpected character {text[pos]!r}", position=pos)
        kind = m.lastgroup
        if kind != "ws":
            value = m.group(kind)
            tokens.append((kind, _normalize_ident(value) if kind == "ident" else value, pos))
        pos = m.end()
    tokens.append(("end", "", len(text)))
    return tokens


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.tokens = tokenize(text)
        self.i = 0

    def peek(self):
        return self.tokens[self.i]

    def take(self):
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def expect(self, kind, value=None):
        tok = self.take()
        if tok[0] != kind or (value is not None and tok[1] != value):
            want = value or kind
            got = tok[1] or "end of input"
            raise ParseError(f"expected {want}, found {got!r}", position=tok[2])
        return tok

    def expression(self):
        """Returns a list of (coefficient, [(name, power, position), ...])."""
        terms = []
        sign = 1
        kind, value, _ = self.peek()
        if kind == "op" and value in "+-":
            self.take()
            sign = -1 if value == "-" else 1
        terms.append(self.term(sign))
        while True:
            kind, value, pos = self.peek()
            if kind == "end":
                return terms
            if kind == "op" and value in "+-":
                self.take()
                terms.append(self.term(-1 if value == "-" else 1))
            else:
                raise ParseError(f"unexpected {value!r}", position=pos)

    def term(self, sign):
        coeff = Fraction(sign)
        factors = []
        kind, value, pos = self.peek()
        if kind == "num":
            self.take()
            num = int(value)
            if self.peek()[:2] == ("op", "/"):
                self.take()
                _, den, dpos = self.expect("num")
                if int(den) == 0:
                    raise ParseError("denominator must be positive", position=dpos)
                coeff *= Fraction(num, int(den))
            else:
                coeff *= num
        elif kind == "ident":
            factors.append(self.factor())
        else:
            raise ParseError(f"expected a term, found {value or 'end of input'!r}", position=pos)
        while self.peek()[:2] == ("op", "*"):
            self.take()
            if self.peek()[0] != "ident":
                tok = self.peek()
                raise ParseError(f"expected an identifier, found {tok[1] or 'end of input'!r}", position=tok[2])
            factors.append(self.factor())
        return coeff, factors, pos

    def factor(self):
        _, name, pos = self.take()
        power = 1
        if self.peek()[:2] == ("op", "^"):
            self.take()
            power = int(self.expect("num")[1])
        return name, power, pos


def parse_terms(text: str):
    return _Parser(text).expression()


def _lookup(names: dict, name: str, pos: int) -> int:
    try:
        return names[name]
    except KeyError:
        raise UnknownIdentifier(f"unknown identifier {name!r}", position=pos) from None


def _scalar(field: FieldSpec, coeff: Fraction, pos: int):
    try:
        return field(coeff)
    except FieldError as exc:
        raise FieldError(exc.message, position=pos) from None


def _index(context) -> dict:
    if isinstance(context, dict):
        return context
    return {_normalize_ident(name): i for i, name in enumerate(context)}


def parse_poly(text: str, context, field: FieldSpec) -> CPoly:
    """Parse a commutative polynomial; ``context`` lists the variable names in order."""
    names = _index(context)
    n = len(set(names.values()))
    result = CPoly.zero(field, n)
    for coeff, factors, pos in parse_terms(text):
        exps = [0] * n
        for name, power, fpos in factors:
            exps[_lookup(names, name, fpos)] += power
        result = result + CPoly._raw(field, n, {tuple(exps): _scalar(field, coeff, pos)})
    return result


def parse_ncpoly(text: str, context, field: FieldSpec) -> NCPoly:
    """Parse an element of the free algebra; ``context`` maps names to generator indices."""
    names = _index(context)
    result = NCPoly.zero(field)
    for coeff, factors, pos in parse_terms(text):
        word = []
        for name, power, fpos in factors:
            word.extend([_lookup(names, name, fpos)] * power)
        result = result + NCPoly.word(field, word, _scalar(field, coeff, pos))
    return result


def print_poly(p: CPoly, names=None) -> str:
    return p.format(names)
