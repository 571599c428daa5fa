"""Polynomials in the free associative algebra over the coefficient field."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

from .coeffs import EMPTY, ONE, Coefficient, ConstraintSet
from .words import Alphabet, Word, deglex_key


class ZeroPolynomial(ValueError):
    pass


@dataclass(frozen=True)
class LeadingData:
    word: Word
    coefficient: Coefficient


class NCPolynomial:
    """Immutable sum of coefficient-weighted words.

    ``terms`` is a tuple of ``(word, coefficient)`` in strictly descending
    deglex order with no zero coefficients.  Coefficients are expected to be
    normalized for the constraint set they are used with.
    """

    __slots__ = ("terms", "_hash")

    def __init__(self, terms: tuple = ()):
        self.terms = terms
        self._hash = None

    @classmethod
    def from_dict(cls, d: dict) -> "NCPolynomial":
        items = [(w, c) for w, c in d.items() if not c.is_zero()]
        items.sort(key=lambda t: deglex_key(t[0]), reverse=True)
        return cls(tuple(items))

    @classmethod
    def from_terms(cls, terms: Iterable, k: ConstraintSet = EMPTY) -> "NCPolynomial":
        acc: dict = {}
        for w, c in terms:
            c = k.coerce(c)
            acc[tuple(w)] = k.add(acc[tuple(w)], c) if tuple(w) in acc else c
        return cls.from_dict(acc)

    @classmethod
    def monomial(cls, w: Word, c: Coefficient = ONE) -> "NCPolynomial":
        return cls(((tuple(w), c),)) if not c.is_zero() else cls()

    def as_dict(self) -> dict:
        return dict(self.terms)

    def __eq__(self, other):
        return isinstance(other, NCPolynomial) and self.terms == other.terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(self.terms)
        return self._hash

    def __bool__(self):
        return bool(self.terms)

    def __len__(self):
        return len(self.terms)

    def words(self) -> list:
        return [w for w, _ in self.terms]

    def coefficient(self, w: Word) -> Coefficient | None:
        for ww, c in self.terms:
            if ww == w:
                return c
        return None

    def degree(self) -> int:
        return len(self.terms[0][0]) if self.terms else -1

    def is_homogeneous(self) -> bool:
        return len({len(w) for w, _ in self.terms}) <= 1

    def format(self, alphabet: Alphabet) -> str:
        return format_poly(self, alphabet)

    def __repr__(self):
        return f"NCPolynomial({self.terms!r})"


def leading(f: NCPolynomial) -> LeadingData:
    if not f.terms:
        raise ZeroPolynomial("the zero polynomial has no leading term")
    w, c = f.terms[0]
    return LeadingData(w, c)


def add(f: NCPolynomial, g: NCPolynomial, k: ConstraintSet = EMPTY) -> NCPolynomial:
    if not f.terms:
        return g
    if not g.terms:
        return f
    acc = dict(f.terms)
    for w, c in g.terms:
        acc[w] = k.add(acc[w], c) if w in acc else c
    return NCPolynomial.from_dict(acc)


def scale(c: Coefficient, f: NCPolynomial, k: ConstraintSet = EMPTY) -> NCPolynomial:
    if c.is_one():
        return f
    if c.is_zero():
        return NCPolynomial()
    return NCPolynomial.from_dict({w: k.mul(c, d) for w, d in f.terms})


def neg(f: NCPolynomial) -> NCPolynomial:
    return NCPolynomial(tuple((w, -c) for w, c in f.terms))


def sub(f: NCPolynomial, g: NCPolynomial, k: ConstraintSet = EMPTY) -> NCPolynomial:
    return add(f, neg(g), k)


def mul_word(a: Word, f: NCPolynomial, b: Word) -> NCPolynomial:
    """``a * f * b``; deglex is compatible with concatenation so order is kept."""
    if not a and not b:
        return f
    return NCPolynomial(tuple((a + w + b, c) for w, c in f.terms))


def mul(f: NCPolynomial, g: NCPolynomial, k: ConstraintSet = EMPTY) -> NCPolynomial:
    acc: dict = {}
    for u, c in f.terms:
        for v, d in g.terms:
            w, e = u + v, k.mul(c, d)
            acc[w] = k.add(acc[w], e) if w in acc else e
    return NCPolynomial.from_dict(acc)


def make_monic(f: NCPolynomial, k: ConstraintSet = EMPTY) -> NCPolynomial:
    lc = leading(f).coefficient
    if lc.is_one():
        return f
    return scale(k.invert(lc), f, k)


def normalize_coefficients(f: NCPolynomial, k: ConstraintSet) -> NCPolynomial:
    return NCPolynomial.from_dict({w: k.normalize(c) for w, c in f.terms})


def _coef_text(c: Coefficient) -> tuple:
    """(sign, body) where body is empty for a unit coefficient."""
    if c.den.is_one() and len(c.num.terms) == 1:
        (m, r), = c.num.terms.items()
        sign = "-" if r < 0 else "+"
        if not m:
            return sign, "" if abs(r) == 1 else str(abs(r))
        return sign, str(Coefficient(c.num.scale(-1 if r < 0 else 1)))
    if c.den.is_one():
        return "+", f"({c})"
    lead = c.num.leading()[1]
    if lead < 0 and len(c.num.terms) == 1:
        return "-", str(-c)
    return "+", f"({c})"


def format_poly(f: NCPolynomial, alphabet: Alphabet) -> str:
    if not f.terms:
        return "0"
    out = []
    for i, (w, c) in enumerate(f.terms):
        sign, body = _coef_text(c)
        word = alphabet.format_word(w) if w else ""
        if body and word:
            text = f"{body}*{word}"
        else:
            text = body or word or "1"
        if i == 0:
            out.append(("-" if sign == "-" else "") + text)
        else:
            out.append(f" {sign} {text}")
    return "".join(out)
