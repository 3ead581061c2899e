"""Finite presentations of 2-groups, read from a small relator language.

A presentation is plain text of the form

    fpgroup; gens x,y; rel x^4=[s2,y,y]; rel [x^2,y]; end

Words multiply by juxtaposition (an optional * separates factors), carry
integer exponents including negative ones, and bracket expressions
[u,v,w,...] are left-normed commutators [[u,v],w]...  A relation with an
equals sign stands for the relator lhs * rhs^-1.  Three abbreviations
are predeclared for two-generator presentations:

    s2 := [y,x]        t3 := [s2,y]        w := [t3,s2]

They expand at parse time, so w is the word [[[y,x],y],[y,x]].

Parsed words are evaluated against any backend exposing mul, inv, power
and commutator; pc groups do, and so do the brute-force Cayley oracles
in the test suite.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

MACROS = {
    "s2": "[y,x]",
    "t3": "[s2,y]",
    "w": "[t3,s2]",
}

_TOKEN = re.compile(r"\s*([A-Za-z_][A-Za-z0-9_]*|-?\d+|[;,=^*\[\]()])")


class FpSyntaxError(ValueError):
    pass


def _tokenize(text: str):
    out = []
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None:
            if text[pos:].strip() == "":
                break
            raise FpSyntaxError(f"unreadable input at {text[pos:pos+12]!r}")
        out.append(m.group(1))
        pos = m.end()
    return out


# Word AST nodes are plain tuples:
#   ("gen", name) | ("pow", word, e) | ("comm", (w1, w2, ...))
#   | ("prod", (w1, w2, ...))


@dataclass(frozen=True)
class FpPresentation:
    gens: tuple
    relators: tuple
    source: str

    def text(self) -> str:
        """Canonical one-line rendering; reparses to the same relators."""
        rels = "".join(f" rel {format_word(r)};" for r in self.relators)
        return f"fpgroup; gens {','.join(self.gens)};{rels} end"


class _Parser:
    def __init__(self, tokens, gens, macros):
        self.toks = tokens
        self.i = 0
        self.gens = gens
        self.macros = macros

    def peek(self):
        return self.toks[self.i] if self.i < len(self.toks) else None

    def take(self, expected=None):
        t = self.peek()
        if t is None:
            raise FpSyntaxError("input ended early")
        if expected is not None and t != expected:
            raise FpSyntaxError(f"expected {expected!r}, got {t!r}")
        self.i += 1
        return t

    def word(self):
        factors = [self.factor()]
        while True:
            t = self.peek()
            if t == "*":
                self.take()
                t = self.peek()
            if t is None or t in (";", ",", "=", "]", ")"):
                break
            factors.append(self.factor())
        return factors[0] if len(factors) == 1 else ("prod", tuple(factors))

    def factor(self):
        atom = self.atom()
        if self.peek() == "^":
            self.take()
            t = self.take()
            try:
                e = int(t)
            except ValueError:
                raise FpSyntaxError(f"exponent must be an integer, got {t!r}")
            return ("pow", atom, e)
        return atom

    def atom(self):
        t = self.take()
        if t == "(":
            wrd = self.word()
            self.take(")")
            return wrd
        if t == "[":
            parts = [self.word()]
            while self.peek() == ",":
                self.take()
                parts.append(self.word())
            self.take("]")
            if len(parts) < 2:
                raise FpSyntaxError("a commutator needs at least two entries")
            return ("comm", tuple(parts))
        if re.fullmatch(r"[A-Za-z_][A-Za-z0-9_]*", t):
            if t in self.gens:
                return ("gen", t)
            if t in self.macros:
                return self.macro_body(t)
            raise FpSyntaxError(f"unknown name {t!r}")
        raise FpSyntaxError(f"unexpected token {t!r}")

    def macro_body(self, name):
        cached = self.macros[name]
        if isinstance(cached, str):
            sub = _Parser(_tokenize(cached), self.gens, self.macros)
            body = sub.word()
            if sub.peek() is not None:
                raise FpSyntaxError(f"macro {name} has trailing input")
            self.macros[name] = body
            return body
        return cached


def parse_presentation(text: str) -> FpPresentation:
    toks = _tokenize(text)
    p = _Parser(toks, (), dict(MACROS))
    p.take("fpgroup")
    p.take(";")
    p.take("gens")
    gens = [p.take()]
    while p.peek() == ",":
        p.take()
        gens.append(p.take())
    p.take(";")
    for g in gens:
        if not re.fullmatch(r"[A-Za-z_][A-Za-z0-9_]*", g):
            raise FpSyntaxError(f"bad generator name {g!r}")
        if g in MACROS:
            raise FpSyntaxError(f"generator name {g!r} shadows an abbreviation")
    if len(set(gens)) != len(gens):
        raise FpSyntaxError("repeated generator name")
    p.gens = tuple(gens)
    relators = []
    while p.peek() == "rel":
        p.take()
        lhs = p.word()
        if p.peek() == "=":
            p.take()
            rhs = p.word()
            relators.append(("prod", (lhs, ("pow", rhs, -1))))
        else:
            relators.append(lhs)
        p.take(";")
    p.take("end")
    if p.peek() is not None:
        raise FpSyntaxError(f"trailing input after end: {p.peek()!r}")
    return FpPresentation(gens=tuple(gens), relators=tuple(relators),
                          source=text)


def evaluate(word, images: dict, ops):
    """Value of a parsed word under generator images, in the backend ops."""
    kind = word[0]
    if kind == "gen":
        return images[word[1]]
    if kind == "prod":
        val = None
        for part in word[1]:
            v = evaluate(part, images, ops)
            val = v if val is None else ops.mul(val, v)
        return val
    if kind == "pow":
        return ops.power(evaluate(word[1], images, ops), word[2])
    if kind == "comm":
        parts = word[1]
        val = evaluate(parts[0], images, ops)
        for part in parts[1:]:
            val = ops.commutator(val, evaluate(part, images, ops))
        return val
    raise ValueError(f"not a word node: {word!r}")


def format_word(word) -> str:
    kind = word[0]
    if kind == "gen":
        return word[1]
    if kind == "prod":
        return "*".join(_braced(p) for p in word[1])
    if kind == "pow":
        return f"{_braced(word[1])}^{word[2]}"
    if kind == "comm":
        return "[" + ",".join(format_word(p) for p in word[1]) + "]"
    raise ValueError(f"not a word node: {word!r}")


def _braced(word):
    if word[0] in ("gen", "comm"):
        return format_word(word)
    return "(" + format_word(word) + ")"


# -- stock presentations ----------------------------------------------

def metabelian_limit_presentation() -> FpPresentation:
    """The two-generator metabelian pro-2 limit: both fourth powers fall
    into the weight-five layer, [x^2,y] dies, and w is killed outright."""
    return parse_presentation(
        "fpgroup; gens x,y;"
        " rel x^4=[t3,y,y];"
        " rel y^4=[t3,y,x*y];"
        " rel [x^2,y];"
        " rel w;"
        " end")


def limit_presentation(e: int, f: int, g: int) -> FpPresentation:
    """The two-generator pro-2 limits, an eight-element family indexed
    by which relations absorb the word w:

        [x^2,y] w^e = 1,  x^4 w^f = [t3,y,y],  y^4 w^g = [t3,y^2].

    They differ from the metabelian relator set in the y^4 relation
    even at e = f = g = 0.
    """
    if not all(v in (0, 1) for v in (e, f, g)):
        raise ValueError("indices must be 0 or 1")
    r1 = "[x^2,y]" + ("*w" if e else "")
    r2 = "x^4" + ("*w" if f else "") + "=[t3,y,y]"
    r3 = "y^4" + ("*w" if g else "") + "=[t3,y^2]"
    return parse_presentation(
        f"fpgroup; gens x,y; rel {r1}; rel {r2}; rel {r3}; end")
