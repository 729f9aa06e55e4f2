"""Expression parser for the CLI and for scalar strings in preset files.

Grammar (left associative, ^ binds tightest):

    expr  := term (("+" | "-") term)*
    term  := unary (("*" | "/") unary)*
    unary := ("-" | "+") unary | power
    power := atom ("^" ["-"] NUMBER)?
    atom  := NUMBER | NAME | "(" expr ")"

NAME is q, j, or a generator of the active preset.  Division requires a
scalar divisor, negative exponents a scalar base.  Errors carry the
byte offset of the offending token.
"""

from __future__ import annotations

from .scalars import CycloRational, ONE, J, Q, rational
from .freealg import NCPolynomial

_GREEK = {"θ": "th", "β": "b", "γ": "g", "φ": "phi"}


class ParseError(ValueError):
    def __init__(self, message, offset):
        super().__init__("%s (at byte %d)" % (message, offset))
        self.offset = offset


def _tokenize(text):
    toks = []
    i, n = 0, len(text)
    while i < n:
        ch = text[i]
        if ch.isspace():
            i += 1
            continue
        if ch in "+-*/^()":
            toks.append((ch, ch, i))
            i += 1
            continue
        if ch.isdigit():
            j = i
            while j < n and text[j].isdigit():
                j += 1
            toks.append(("num", text[i:j], i))
            i = j
            continue
        if ch.isalpha() or ch in _GREEK:
            j = i
            while j < n and (text[j].isalnum() or text[j] == "_" or text[j] in _GREEK):
                j += 1
            name = text[i:j]
            name = "".join(_GREEK.get(c, c) for c in name)
            toks.append(("name", name, i))
            i = j
            continue
        raise ParseError("unexpected character %r" % ch, i)
    toks.append(("end", "", n))
    return toks


class _Parser:
    def __init__(self, text, alphabet):
        self.toks = _tokenize(text)
        self.pos = 0
        self.alphabet = alphabet  # set of generator names, or None for scalar-only

    def peek(self):
        return self.toks[self.pos]

    def take(self, kind=None):
        tok = self.toks[self.pos]
        if kind is not None and tok[0] != kind:
            raise ParseError("expected %s, got %r" % (kind, tok[1] or "end of input"),
                             tok[2])
        self.pos += 1
        return tok

    def parse(self):
        p = self.expr()
        tok = self.peek()
        if tok[0] != "end":
            raise ParseError("trailing input %r" % tok[1], tok[2])
        return p

    def expr(self):
        p = self.term()
        while self.peek()[0] in "+-":
            op = self.take()[0]
            r = self.term()
            p = p + r if op == "+" else p - r
        return p

    def term(self):
        p = self.unary()
        while self.peek()[0] in "*/":
            kind, _, off = self.take()
            r = self.unary()
            if kind == "*":
                p = p * r
            else:
                p = p * self._scalar_of(r, off).inv()
        return p

    def unary(self):
        tok = self.peek()
        if tok[0] in "+-":
            self.take()
            p = self.unary()
            return -p if tok[0] == "-" else p
        return self.power()

    def power(self):
        p = self.atom()
        if self.peek()[0] != "^":
            return p
        _, _, off = self.take()
        neg = False
        if self.peek()[0] == "-":
            self.take()
            neg = True
        k = int(self.take("num")[1])
        if neg:
            s = self._scalar_of(p, off)
            return NCPolynomial.unit(_scalar_pow(s.inv(), k))
        return _poly_pow(p, k)

    def atom(self):
        kind, text, off = self.take()
        if kind == "num":
            return NCPolynomial.unit(rational(int(text)))
        if kind == "(":
            p = self.expr()
            self.take(")")
            return p
        if kind == "name":
            if text == "q":
                return NCPolynomial.unit(Q)
            if text == "j":
                return NCPolynomial.unit(J)
            if self.alphabet is None:
                raise ParseError("unknown scalar symbol %r" % text, off)
            if text not in self.alphabet:
                raise ParseError("unknown generator %r" % text, off)
            return NCPolynomial.gen(text)
        raise ParseError("expected a value, got %r" % (text or "end of input"), off)

    @staticmethod
    def _scalar_of(p, off):
        if list(p.support()) not in ([], [()]):
            raise ParseError("divisor and negative powers must be scalar", off)
        s = p.coeff(())
        if s.is_zero():
            raise ParseError("division by zero", off)
        return s


def _scalar_pow(s, k):
    out = ONE
    for _ in range(k):
        out = out * s
    return out


def _poly_pow(p, k):
    out = NCPolynomial.unit()
    for _ in range(k):
        out = out * p
    return out


def parse(text, preset=None):
    """Parse a CLI expression into an NCPolynomial.

    With a preset, its generator names are in scope; without, only
    scalars (numbers, q, j) are accepted.
    """
    alphabet = set(preset.gens) if preset is not None else None
    return _Parser(text, alphabet).parse()


def parse_scalar(text):
    p = _Parser(text, None).parse()
    if list(p.support()) not in ([], [()]):
        raise ParseError("expected a scalar expression", 0)
    from .scalars import ZERO

    return p.coeff(()) if p.t else ZERO
