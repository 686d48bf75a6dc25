"""Parser for the polynomial text grammar.

    expr  := ['-'] term (('+'|'-') term)*
    term  := factor ('*' factor)*
    factor:= integer ['/' positive-integer] | var ['^' nat] | 'binom(' var ',' nat ')'
    var   := ('x'|'v') index        (1-based)

Whitespace is ignored. ``binom`` atoms are expanded to monomials on parse.
Coefficients may appear anywhere in a product (``binom(x1,5)*24``).
"""

from __future__ import annotations

import re
from fractions import Fraction

from .poly import Polynomial, binomial_atom

_TOKEN = re.compile(
    r"\s*(?:(?P<num>\d+)|(?P<binom>binom)|(?P<var>[xv])(?P<idx>\d+)|(?P<op>[-+*/^(),]))"
)


class ParseError(ValueError):
    def __init__(self, message: str, text: str, pos: int):
        line = text.count("\n", 0, pos) + 1
        col = pos - (text.rfind("\n", 0, pos) + 1) + 1
        super().__init__(f"{line}:{col}: {message}")
        self.line = line
        self.column = col


def _tokenize(text: str) -> list[tuple[str, str, int]]:
    tokens = []
    pos = 0
    while pos < len(text):
        if text[pos].isspace():
            pos += 1
            continue
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            raise ParseError(f"unexpected character {text[pos]!r}", text, pos)
        start = pos
        if m.group("num"):
            tokens.append(("num", m.group("num"), start))
        elif m.group("binom"):
            tokens.append(("binom", "binom", start))
        elif m.group("var"):
            tokens.append(("var", m.group("var") + m.group("idx"), start))
        else:
            tokens.append(("op", m.group("op"), start))
        pos = m.end()
    tokens.append(("end", "", len(text)))
    return tokens


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.tokens = _tokenize(text)
        self.i = 0
        self.letter: str | None = None

    def peek(self) -> tuple[str, str, int]:
        return self.tokens[self.i]

    def take(self) -> tuple[str, str, int]:
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def error(self, msg: str, tok=None):
        tok = tok or self.peek()
        raise ParseError(msg, self.text, tok[2])

    def expect(self, value: str) -> None:
        tok = self.take()
        if tok[1] != value:
            self.error(f"expected {value!r}, found {tok[1] or 'end of input'!r}", tok)

    def nat(self) -> int:
        tok = self.take()
        if tok[0] != "num":
            self.error("expected a natural number", tok)
        return int(tok[1])

    def variable(self) -> int:
        tok = self.take()
        if tok[0] != "var":
            self.error("expected a variable like x1 or v1", tok)
        letter, idx = tok[1][0], int(tok[1][1:])
        if idx < 1:
            self.error("variable indices are 1-based", tok)
        if self.letter is None:
            self.letter = letter
        elif letter != self.letter:
            self.error("cannot mix x and v variables in one polynomial", tok)
        return idx - 1

    # each factor is returned as (coeff, [(kind, var, power)])
    def factor(self):
        kind, value, _ = self.peek()
        if kind == "num":
            num = int(self.take()[1])
            if self.peek()[1] == "/":
                self.take()
                den = self.nat()
                if den == 0:
                    self.error("zero denominator", self.tokens[self.i - 1])
                return Fraction(num, den), []
            return Fraction(num), []
        if kind == "var":
            v = self.variable()
            power = 1
            if self.peek()[1] == "^":
                self.take()
                power = self.nat()
            return Fraction(1), [("pow", v, power)]
        if kind == "binom":
            self.take()
            self.expect("(")
            v = self.variable()
            self.expect(",")
            n = self.nat()
            self.expect(")")
            return Fraction(1), [("binom", v, n)]
        self.error(f"unexpected {value or 'end of input'!r}")

    def term(self):
        coeff, atoms = self.factor()
        while self.peek()[1] == "*":
            self.take()
            c, a = self.factor()
            coeff *= c
            atoms = atoms + a
        return coeff, atoms

    def expr(self):
        terms = []
        sign = 1
        if self.peek()[1] in "+-" and self.peek()[0] == "op":
            sign = -1 if self.take()[1] == "-" else 1
        c, a = self.term()
        terms.append((sign * c, a))
        while self.peek()[0] == "op" and self.peek()[1] in ("+", "-"):
            sign = -1 if self.take()[1] == "-" else 1
            c, a = self.term()
            terms.append((sign * c, a))
        if self.peek()[0] != "end":
            self.error(f"unexpected {self.peek()[1]!r}")
        return terms


def parse_polynomial(text: str, arity: int | None = None) -> Polynomial:
    """Parse ``text``; arity defaults to the largest variable index used (at least 1)."""
    parser = _Parser(text)
    terms = parser.expr()
    used = [v for _, atoms in terms for _, v, _ in atoms]
    k = max(used, default=-1) + 1
    if arity is None:
        arity = max(k, 1)
    elif k > arity:
        raise ValueError(f"variable index {k} exceeds arity {arity}")
    out = Polynomial.zero(arity)
    for coeff, atoms in terms:
        term = Polynomial.constant(arity, coeff)
        for kind, v, n in atoms:
            if kind == "pow":
                e = [0] * arity
                e[v] = n
                term = term * Polynomial(arity, {tuple(e): 1})
            else:
                e = [0] * arity
                e[v] = n
                term = term * binomial_atom(arity, e)
        out = out + term
    return out


def variable_letter(text: str) -> str | None:
    """'x' or 'v' depending on which variables ``text`` uses."""
    parser = _Parser(text)
    parser.expr()
    return parser.letter
