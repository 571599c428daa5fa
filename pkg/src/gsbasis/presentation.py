"""Line-oriented presentation files.

::

    # Sklyanin-type example
    generators z < y < x
    constraint a^3 = -1
    nonzero a, s, s^3 + 1
    relation x^2 - 1/s*y*z + a/s*z*y
    relation x*y = a*y*x + s*z^2
    meta expected_finite = true
    choice p in -1, 1

Identifiers that are not generators are parameters and may only appear in
coefficient position.  ``choice`` lines expand into one concrete instance per
listed value (see :meth:`Presentation.instances`).
"""

from __future__ import annotations

import itertools
import re
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

from .coeffs import EMPTY, Coefficient, ConstraintSet, NotProvablyNonzero, ParamPoly
from .ncpoly import NCPolynomial, add, make_monic, mul, neg, scale
from .rewrite import ReductionSystem
from .words import Alphabet


class PresentationError(ValueError):
    def __init__(self, message: str, line: int = 0, column: int = 0):
        self.message, self.line, self.column = message, line, column
        where = f"line {line}, column {column}: " if line else ""
        super().__init__(where + message)


_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z0-9_]*)|(\*\*|[-+*/^()=]))")


def _tokenize(text: str, line: int, col0: int):
    pos, out = 0, []
    text = text.rstrip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            raise PresentationError(f"unexpected character {text[pos:].strip()[:1]!r}", line, col0 + pos + 1)
        kind = "num" if m.group(1) else "name" if m.group(2) else "op"
        value = m.group(1) or m.group(2) or m.group(3)
        if value == "**":
            value = "^"
        out.append((kind, value, col0 + m.start(m.lastindex) + 1))
        pos = m.end()
    return out


class _Parser:
    """Recursive descent over + - * / ^ ( ) producing NCPolynomials."""

    def __init__(self, tokens, alphabet: Optional[Alphabet], k: ConstraintSet, line: int):
        self.toks, self.i = tokens, 0
        self.alphabet, self.k, self.line = alphabet, k, line

    def error(self, msg):
        col = self.toks[self.i][2] if self.i < len(self.toks) else (self.toks[-1][2] + 1 if self.toks else 1)
        raise PresentationError(msg, self.line, col)

    def peek(self):
        return self.toks[self.i][1] if self.i < len(self.toks) else None

    def take(self):
        tok = self.toks[self.i]
        self.i += 1
        return tok

    def parse(self) -> NCPolynomial:
        if not self.toks:
            self.error("empty expression")
        value = self.expr()
        if self.i != len(self.toks):
            self.error(f"unexpected {self.peek()!r}")
        return value

    def expr(self):
        value = self.term()
        while self.peek() in ("+", "-"):
            op = self.take()[1]
            rhs = self.term()
            value = add(value, rhs if op == "+" else neg(rhs), self.k)
        return value

    def term(self):
        value = self.unary()
        while self.peek() in ("*", "/"):
            op = self.take()[1]
            rhs = self.unary()
            if op == "*":
                value = mul(value, rhs, self.k)
            else:
                if any(w for w, _ in rhs.terms):
                    self.error("division by a non-scalar")
                if not rhs:
                    self.error("division by zero")
                c = rhs.terms[0][1]
                try:
                    value = scale(self.k.invert(c), value, self.k)
                except NotProvablyNonzero as exc:
                    col = self.toks[self.i - 1][2]
                    raise NotProvablyNonzero(f"line {self.line}, column {col}: {exc}") from None
        return value

    def unary(self):
        if self.peek() == "-":
            self.take()
            return neg(self.unary())
        if self.peek() == "+":
            self.take()
            return self.unary()
        return self.power()

    def power(self):
        base = self.atom()
        if self.peek() == "^":
            self.take()
            if self.i >= len(self.toks) or self.toks[self.i][0] != "num":
                self.error("exponent must be a nonnegative integer")
            n = int(self.take()[1])
            out = NCPolynomial.monomial((), self.k.coerce(1))
            for _ in range(n):
                out = mul(out, base, self.k)
            return out
        return base

    def atom(self):
        if self.i >= len(self.toks):
            self.error("unexpected end of expression")
        kind, value, _ = self.take()
        if kind == "num":
            return NCPolynomial.monomial((), self.k.coerce(Fraction(int(value))))
        if kind == "name":
            if self.alphabet is not None and value in self.alphabet.names:
                return NCPolynomial.monomial((self.alphabet.index(value),), self.k.coerce(1))
            return NCPolynomial.monomial((), self.k.coerce(Coefficient.param(value)))
        if value == "(":
            inner = self.expr()
            if self.peek() != ")":
                self.error("expected ')'")
            self.take()
            return inner
        self.i -= 1
        self.error(f"unexpected {value!r}")


def _split_equation(tokens, line):
    eq = [j for j, t in enumerate(tokens) if t[1] == "="]
    if len(eq) > 1:
        raise PresentationError("more than one '='", line, tokens[eq[1]][2])
    if not eq:
        return tokens, []
    return tokens[: eq[0]], tokens[eq[0] + 1 :]


def parse_polynomial(text: str, alphabet: Optional[Alphabet], k: ConstraintSet = EMPTY, line: int = 0, col0: int = 0) -> NCPolynomial:
    """Parse ``lhs`` or ``lhs = rhs`` (read as ``lhs - rhs``)."""
    toks = _tokenize(text, line, col0)
    lhs, rhs = _split_equation(toks, line)
    value = _Parser(lhs, alphabet, k, line).parse()
    if rhs:
        value = add(value, neg(_Parser(rhs, alphabet, k, line).parse()), k)
    return value


def _param_poly(text: str, line: int, col0: int) -> ParamPoly:
    poly = parse_polynomial(text, None, EMPTY, line, col0)
    if not poly:
        return ParamPoly()
    (w, c), = poly.terms
    if not c.den.is_constant():
        raise PresentationError("parameter conditions must be polynomial", line, col0 + 1)
    return c.num.scale(1 / c.den.constant_value())


@dataclass
class Presentation:
    alphabet: Alphabet
    constraints: ConstraintSet
    relations: list
    relation_texts: list = field(default_factory=list)
    meta: dict = field(default_factory=dict)
    choices: dict = field(default_factory=dict)
    # (line, kind, text) for re-instancing under substitutions
    source: list = field(default_factory=list, repr=False)

    def system(self, interreduce: bool = False) -> ReductionSystem:
        """Monic rules from the relations (zero relations dropped)."""
        rules = []
        for f in self.relations:
            if f:
                rules.append(make_monic(f, self.constraints))
        R = ReductionSystem(tuple(rules), self.alphabet, self.constraints)
        if interreduce:
            from .shirshov import interreduce as _ir

            R = _ir(R)
        return R

    def instances(self) -> list:
        """``[(label, Presentation)]``, one per combination of ``choice`` values."""
        if not self.choices:
            return [("", self)]
        names = sorted(self.choices)
        out = []
        for combo in itertools.product(*(self.choices[n] for n in names)):
            values = dict(zip(names, combo))
            label = ",".join(f"{n}={v}" for n, v in values.items())
            out.append((label, _build(self.source, values)))
        return out


def _build(source, values: dict) -> Presentation:
    generators = None
    eqs, nonzero, rel_lines, meta, choices = [], [], [], {}, {}

    def subst(poly: ParamPoly) -> ParamPoly:
        return poly.substitute(values) if values else poly

    for line, kind, text, col in source:
        if kind == "generators":
            names = [n.strip() for n in text.split("<")]
            try:
                generators = Alphabet(tuple(names))
            except ValueError as exc:
                raise PresentationError(str(exc), line, col) from None
        elif kind == "constraint":
            toks = _tokenize(text, line, col)
            lhs, rhs = _split_equation(toks, line)
            if not rhs:
                raise PresentationError("constraint needs '='", line, col)
            eq = _param_poly(text, line, col)
            eq = subst(eq)
            if eq.is_constant():
                if eq:
                    raise PresentationError("constraint contradicts the chosen values", line, col)
                continue
            eqs.append(eq)
        elif kind == "nonzero":
            for part in text.split(","):
                p = subst(_param_poly(part, line, col))
                if not p:
                    raise PresentationError(f"nonzero assumption {part.strip()} vanishes", line, col)
                if not p.is_constant():
                    nonzero.append(p)
        elif kind == "relation":
            rel_lines.append((line, text, col))
        elif kind == "meta":
            key, _, value = text.partition("=")
            meta[key.strip()] = value.strip()
        elif kind == "choice":
            m = re.fullmatch(r"\s*([A-Za-z_]\w*)\s+in\s+(.+)", text)
            if not m:
                raise PresentationError("expected 'choice NAME in v1, v2, ...'", line, col)
            try:
                vals = tuple(Fraction(v.strip()) for v in m.group(2).split(","))
            except ValueError:
                raise PresentationError("choice values must be rationals", line, col) from None
            if m.group(1) not in values:
                choices[m.group(1)] = vals
    if generators is None:
        raise PresentationError("missing 'generators' line", 1, 1)
    try:
        k = ConstraintSet.from_equations(eqs, nonzero)
    except ValueError as exc:
        raise PresentationError(str(exc), 1, 1) from None
    relations, texts = [], []
    for line, text, col in rel_lines:
        poly = parse_polynomial(text, generators, k, line, col)
        if values:
            poly = _substitute_poly(poly, values, k)
        relations.append(poly)
        texts.append(text.strip())
    return Presentation(generators, k, relations, texts, meta, choices, list(source))


def _substitute_poly(poly: NCPolynomial, values: dict, k: ConstraintSet) -> NCPolynomial:
    d = {}
    for w, c in poly.terms:
        d[w] = k.normalize(Coefficient(c.num.substitute(values), c.den.substitute(values)))
    return NCPolynomial.from_dict(d)


_KEYWORDS = ("generators", "constraint", "nonzero", "relation", "meta", "choice")


def _scan(text: str, first_line: int = 1) -> list:
    source = []
    for offset, raw in enumerate(text.splitlines()):
        line = first_line + offset
        body = raw.split("#", 1)[0]
        if not body.strip():
            continue
        m = re.match(r"\s*(\w+)\s*", body)
        if not m or m.group(1) not in _KEYWORDS:
            word = m.group(1) if m else body.strip()[:1]
            raise PresentationError(f"unknown directive {word!r}", line, (m.start(1) if m else 0) + 1)
        source.append((line, m.group(1), body[m.end():], m.end()))
    return source


def parse_presentation(text: str, first_line: int = 1) -> Presentation:
    """Parse a presentation.  Choices stay symbolic; use ``instances()`` to expand them."""
    source = _scan(text, first_line)
    return _build(source, {})


def load_presentation(path) -> Presentation:
    with open(path, encoding="utf-8") as fh:
        return parse_presentation(fh.read())


def format_presentation(alphabet: Alphabet, constraints: ConstraintSet, rules, meta=None) -> str:
    lines = ["generators " + " < ".join(alphabet.names)]
    lines += constraints.describe()
    lines += [f"relation {r.format(alphabet)}" for r in rules]
    for key, value in (meta or {}).items():
        lines.append(f"meta {key} = {value}")
    return "\n".join(lines) + "\n"

