"""Reduction systems over the free algebra.

A rule ``s`` (monic) rewrites its leading word to ``lead(s) - s``.  Normal
forms use a fixed strategy: the highest reducible term first, then the first
rule in system order, then the leftmost occurrence.  A random strategy is
available for confluence checks.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from typing import Optional

from .coeffs import EMPTY, Coefficient, ConstraintSet
from .ncpoly import NCPolynomial, mul_word
from .words import EPSILON, Alphabet, Word, deglex_key, find_subword, occurrences


class InvalidRule(ValueError):
    pass


@dataclass(frozen=True, eq=False)
class ReductionSystem:
    rules: tuple
    alphabet: Alphabet
    constraints: ConstraintSet = EMPTY
    _memo: dict = field(default_factory=dict, repr=False)

    def __post_init__(self):
        object.__setattr__(self, "rules", tuple(self.rules))
        for i, r in enumerate(self.rules):
            if not r:
                raise InvalidRule(f"rule {i} is zero")
            if not r.terms[0][1].is_one():
                raise InvalidRule(f"rule {i} is not monic")
            for w, _ in r.terms:
                if any(x >= len(self.alphabet) for x in w):
                    raise InvalidRule(f"rule {i} uses a letter outside the alphabet")

    @property
    def leading_words(self) -> list:
        lw = self._memo.get("lw")
        if lw is None:
            lw = self._memo["lw"] = [r.terms[0][0] for r in self.rules]
        return lw

    def __len__(self):
        return len(self.rules)

    def __eq__(self, other):
        return (
            isinstance(other, ReductionSystem)
            and self.rules == other.rules
            and self.alphabet == other.alphabet
            and self.constraints is other.constraints
        )

    __hash__ = object.__hash__

    def with_rules(self, rules) -> "ReductionSystem":
        return ReductionSystem(tuple(rules), self.alphabet, self.constraints)

    def tail(self, i: int) -> NCPolynomial:
        """``lead(s_i) - s_i``: what the leading word of rule ``i`` rewrites to."""
        return NCPolynomial(tuple((w, -c) for w, c in self.rules[i].terms[1:]))

    def reducer(self, w: Word) -> Optional[tuple]:
        """``(rule index, position)`` of the first applicable rule, or None."""
        memo = self._memo.setdefault("red", {})
        if w in memo:
            return memo[w]
        hit = None
        for i, lw in enumerate(self.leading_words):
            pos = find_subword(w, lw)
            if pos is not None:
                hit = (i, pos)
                break
        memo[w] = hit
        return hit

    def is_reducible_word(self, w: Word) -> bool:
        return self.reducer(w) is not None

    def format(self) -> list:
        return [r.format(self.alphabet) for r in self.rules]


def _apply(acc: dict, w: Word, c: Coefficient, R: ReductionSystem, i: int, pos: int, cert):
    k = R.constraints
    lw = R.leading_words[i]
    a, b = w[:pos], w[pos + len(lw) :]
    del acc[w]
    for u, d in R.rules[i].terms[1:]:
        ww = a + u + b
        e = k.mul(c, -d)
        if ww in acc:
            s = k.add(acc[ww], e)
            if s.is_zero():
                del acc[ww]
            else:
                acc[ww] = s
        elif not e.is_zero():
            acc[ww] = e
    if cert is not None:
        key = (a, i, b)
        cert[key] = k.add(cert[key], c) if key in cert else c


def reduce_once(f: NCPolynomial, R: ReductionSystem) -> Optional[NCPolynomial]:
    """One reduction step under the fixed strategy, or None if ``f`` is irreducible."""
    for w, c in f.terms:
        hit = R.reducer(w)
        if hit is not None:
            acc = dict(f.terms)
            _apply(acc, w, c, R, hit[0], hit[1], None)
            return NCPolynomial.from_dict(acc)
    return None


def is_irreducible(f: NCPolynomial, R: ReductionSystem) -> bool:
    return all(R.reducer(w) is None for w, _ in f.terms)


def normal_form(
    f: NCPolynomial,
    R: ReductionSystem,
    *,
    certificate: Optional[dict] = None,
    rng: Optional[random.Random] = None,
) -> NCPolynomial:
    """Reduce ``f`` to an irreducible polynomial.

    If ``certificate`` is a dict it receives entries ``(a, i, b) -> c`` with
    ``f == normal_form + sum(c * a * rule_i * b)``.  With ``rng`` every step
    picks a random reducible term, rule and occurrence instead.
    """
    if rng is not None:
        return _random_normal_form(f, R, rng, certificate)
    acc = dict(f.terms)
    out: dict = {}
    while acc:
        w = max(acc, key=deglex_key)
        hit = R.reducer(w)
        if hit is None:
            out[w] = acc.pop(w)
        else:
            _apply(acc, w, acc[w], R, hit[0], hit[1], certificate)
    return NCPolynomial.from_dict(out)


def _random_normal_form(f, R, rng, certificate):
    acc = dict(f.terms)
    lws = R.leading_words
    while True:
        choices = [w for w in acc if R.reducer(w) is not None]
        if not choices:
            return NCPolynomial.from_dict(acc)
        w = rng.choice(sorted(choices, key=deglex_key))
        options = [(i, p) for i, lw in enumerate(lws) for p in occurrences(w, lw)]
        i, pos = rng.choice(options)
        _apply(acc, w, acc[w], R, i, pos, certificate)


def expand_certificate(cert: dict, rules, k: ConstraintSet = EMPTY) -> NCPolynomial:
    """``sum(c * a * rules[i] * b)`` over certificate entries."""
    acc: dict = {}
    for (a, i, b), c in cert.items():
        for w, d in mul_word(a, rules[i], b).terms:
            e = k.mul(c, d)
            acc[w] = k.add(acc[w], e) if w in acc else e
    return NCPolynomial.from_dict(acc)


def irr_words(R: ReductionSystem, max_degree: int) -> list:
    """Words of degree <= max_degree avoiding every leading word, in increasing deglex order."""
    lws = R.leading_words
    level = [EPSILON]
    out = [EPSILON]
    for _ in range(max_degree):
        nxt = []
        for w in level:
            for x in range(len(R.alphabet)):
                u = w + (x,)
                # prefixes are already irreducible, so only suffixes can match
                if not any(len(lw) <= len(u) and u[len(u) - len(lw) :] == lw for lw in lws):
                    nxt.append(u)
        nxt.sort()
        out.extend(nxt)
        level = nxt
    return out
