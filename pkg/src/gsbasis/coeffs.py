"""Exact coefficient field: rational functions in named parameters.

A coefficient is a fraction ``num/den`` of sparse polynomials over the
rationals.  Parameters may be tied together by oriented rewrite rules
(``a^3 -> -1``) and declared nonzero; a :class:`ConstraintSet` bundles both
and owns every arithmetic operation, because the result of ``a * a^2``
depends on which constraints are active.

Canonical form of a coefficient under a constraint set:

* numerator and denominator are reduced by the rewrite rules;
* powers of a constrained parameter are cleared from the denominator when the
  parameter's rule is univariate (``p^k -> r(p)``) and the offending factor
  is coprime to ``p^k - r(p)``, e.g. ``1/a^2 == -a`` under ``a^3 = -1``;
* the fraction is gcd-reduced and the denominator has leading coefficient 1.

Equality of normalized coefficients is therefore structural.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Mapping

__all__ = [
    "ConstraintError",
    "DenominatorVanishes",
    "NotProvablyNonzero",
    "ParamPoly",
    "Coefficient",
    "ConstraintSet",
    "EMPTY",
    "normalize",
    "add",
    "mul",
    "invert",
    "is_zero",
]

# A parameter monomial is a tuple of (name, exponent) pairs sorted by name,
# with every exponent positive.  () is the constant monomial.
Monomial = tuple


class ConstraintError(ValueError):
    """Constraint rules that cannot be used as a terminating, confluent system."""


class DenominatorVanishes(ZeroDivisionError):
    pass


class NotProvablyNonzero(ArithmeticError):
    """Division by a value whose nonvanishing is not implied by the assumptions."""


# ---------------------------------------------------------------------------
# monomials


def mono_mul(m1: Monomial, m2: Monomial) -> Monomial:
    if not m1:
        return m2
    if not m2:
        return m1
    d = dict(m1)
    for name, e in m2:
        d[name] = d.get(name, 0) + e
    return tuple(sorted(d.items()))


def mono_div(m: Monomial, d: Monomial):
    """``m / d`` if ``d`` divides ``m``, else None."""
    if not d:
        return m
    md = dict(m)
    for name, e in d:
        have = md.get(name, 0)
        if have < e:
            return None
        if have == e:
            del md[name]
        else:
            md[name] = have - e
    return tuple(sorted(md.items()))


def mono_gcd(m1: Monomial, m2: Monomial) -> Monomial:
    d2 = dict(m2)
    return tuple((n, min(e, d2[n])) for n, e in m1 if n in d2)


def mono_degree(m: Monomial) -> int:
    return sum(e for _, e in m)


def _name_key(name: str):
    # Reverses string order so that alphabetically earlier parameters are
    # more significant in the lex comparison below.
    return tuple(-ord(ch) for ch in name) + (1,)


@lru_cache(maxsize=None)
def mono_key(m: Monomial):
    """Sort key for the degree-then-lex order on parameter monomials."""
    return (mono_degree(m), tuple((_name_key(n), e) for n, e in m))


def mono_str(m: Monomial) -> str:
    return "*".join(n if e == 1 else f"{n}^{e}" for n, e in m)


# ---------------------------------------------------------------------------
# parameter polynomials


class ParamPoly:
    """Sparse polynomial in named parameters with rational coefficients.

    Treated as immutable; ``terms`` maps monomials to nonzero Fractions.
    """

    __slots__ = ("terms", "_hash")

    def __init__(self, terms: Mapping[Monomial, Fraction] | None = None):
        self.terms = {m: c if type(c) is Fraction else Fraction(c) for m, c in (terms or {}).items() if c}
        self._hash = None

    @classmethod
    def constant(cls, c) -> "ParamPoly":
        c = Fraction(c)
        return cls({(): c}) if c else cls()

    @classmethod
    def var(cls, name: str, exp: int = 1) -> "ParamPoly":
        return cls({((name, exp),): Fraction(1)})

    def __eq__(self, other):
        return isinstance(other, ParamPoly) and self.terms == other.terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self.terms.items()))
        return self._hash

    def __bool__(self):
        return bool(self.terms)

    def is_constant(self) -> bool:
        return not self.terms or (len(self.terms) == 1 and () in self.terms)

    def constant_value(self) -> Fraction:
        return self.terms.get((), Fraction(0))

    def is_one(self) -> bool:
        return len(self.terms) == 1 and self.terms.get(()) == 1

    def is_monomial(self) -> bool:
        return len(self.terms) == 1

    def variables(self) -> set:
        return {n for m in self.terms for n, _ in m}

    def sorted_terms(self):
        return sorted(self.terms.items(), key=lambda t: mono_key(t[0]), reverse=True)

    def leading(self):
        return max(self.terms.items(), key=lambda t: mono_key(t[0]))

    def degree(self) -> int:
        return max((mono_degree(m) for m in self.terms), default=-1)

    def __add__(self, other: "ParamPoly") -> "ParamPoly":
        out = dict(self.terms)
        for m, c in other.terms.items():
            out[m] = out.get(m, 0) + c
        return ParamPoly(out)

    def __neg__(self) -> "ParamPoly":
        return ParamPoly({m: -c for m, c in self.terms.items()})

    def __sub__(self, other: "ParamPoly") -> "ParamPoly":
        return self + (-other)

    def __mul__(self, other: "ParamPoly") -> "ParamPoly":
        if self.is_one():
            return other
        if other.is_one():
            return self
        out: dict = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                m = mono_mul(m1, m2)
                out[m] = out.get(m, 0) + c1 * c2
        return ParamPoly(out)

    def scale(self, c) -> "ParamPoly":
        if c == 1:
            return self
        return ParamPoly({m: v * c for m, v in self.terms.items()})

    def mul_monomial(self, mono: Monomial) -> "ParamPoly":
        return ParamPoly({mono_mul(m, mono): c for m, c in self.terms.items()})

    def pow(self, n: int) -> "ParamPoly":
        out = ParamPoly.constant(1)
        for _ in range(n):
            out = out * self
        return out

    def evaluate(self, values: Mapping[str, object]):
        total = 0
        for m, c in self.terms.items():
            t = c
            for n, e in m:
                t = t * values[n] ** e
            total = total + t
        return total

    def substitute(self, values: Mapping[str, Fraction]) -> "ParamPoly":
        """Replace some parameters by rational numbers."""
        out: dict = {}
        for m, c in self.terms.items():
            rest = []
            for n, e in m:
                if n in values:
                    c = c * Fraction(values[n]) ** e
                else:
                    rest.append((n, e))
            key = tuple(rest)
            out[key] = out.get(key, 0) + c
        return ParamPoly(out)

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for m, c in self.sorted_terms():
            sign = "-" if c < 0 else "+"
            a = abs(c)
            if not m:
                body = str(a)
            elif a == 1:
                body = mono_str(m)
            else:
                body = f"{a}*{mono_str(m)}"
            parts.append((sign, body))
        s = ("-" if parts[0][0] == "-" else "") + parts[0][1]
        for sign, body in parts[1:]:
            s += f" {sign} {body}"
        return s

    def __repr__(self):
        return f"ParamPoly({self})"


ZERO_POLY = ParamPoly()
ONE_POLY = ParamPoly.constant(1)


def _content_free_monomial_gcd(f: ParamPoly, g: ParamPoly) -> ParamPoly:
    m = None
    for mono in list(f.terms) + list(g.terms):
        m = mono if m is None else mono_gcd(m, mono)
        if not m:
            break
    return ParamPoly({m or (): Fraction(1)})


def _to_sympy(polys: Iterable[ParamPoly]):
    import sympy

    polys = list(polys)
    names = sorted(set().union(*(p.variables() for p in polys)))
    index = {n: i for i, n in enumerate(names)}
    gens = sympy.symbols(names) if names else []
    if len(names) == 1:
        gens = [gens]
    out = []
    for p in polys:
        data = {}
        for m, c in p.terms.items():
            exps = [0] * len(names)
            for n, e in m:
                exps[index[n]] = e
            data[tuple(exps)] = sympy.Rational(c.numerator, c.denominator)
        out.append(sympy.Poly.from_dict(data, *gens, domain="QQ"))
    return names, out


def _from_sympy(names, poly) -> ParamPoly:
    terms = {}
    for exps, c in poly.terms():
        mono = tuple((names[i], e) for i, e in enumerate(exps) if e)
        terms[mono] = Fraction(int(c.p), int(c.q))
    return ParamPoly(terms)


def poly_cofactors(f: ParamPoly, g: ParamPoly):
    """Return ``(h, f/h, g/h)`` with ``h`` a monic gcd of ``f`` and ``g``."""
    if f.is_monomial() or g.is_monomial() or f.is_constant() or g.is_constant():
        h = _content_free_monomial_gcd(f, g)
        (hm,) = h.terms
        return (
            h,
            ParamPoly({mono_div(m, hm): c for m, c in f.terms.items()}),
            ParamPoly({mono_div(m, hm): c for m, c in g.terms.items()}),
        )
    names, (sf, sg) = _to_sympy([f, g])
    h, a, b = sf.cofactors(sg)
    h, a, b = _from_sympy(names, h), _from_sympy(names, a), _from_sympy(names, b)
    lc = h.leading()[1]
    if lc != 1:
        h, a, b = h.scale(1 / lc), a.scale(lc), b.scale(lc)
    return h, a, b


def poly_gcd(f: ParamPoly, g: ParamPoly) -> ParamPoly:
    return poly_cofactors(f, g)[0]


# univariate helpers, coefficient lists lowest degree first


def _trim(a):
    while a and a[-1] == 0:
        a.pop()
    return a


def _udivmod(a, b):
    a = list(a)
    q = [Fraction(0)] * max(len(a) - len(b) + 1, 1)
    inv = 1 / Fraction(b[-1])
    while len(_trim(a)) >= len(b):
        shift = len(a) - len(b)
        c = a[-1] * inv
        q[shift] = c
        for i, bc in enumerate(b):
            a[i + shift] -= c * bc
    return _trim(q), a


def _uinverse(a, m):
    """Inverse of ``a`` modulo ``m`` over Q, or None if they share a factor."""
    r0, r1 = list(m), _trim(list(a))
    s0, s1 = [], [Fraction(1)]
    while r1:
        q, r = _udivmod(r0, r1)
        # s0 - q*s1
        prod = [Fraction(0)] * (len(q) + len(s1))
        for i, x in enumerate(q):
            for j, y in enumerate(s1):
                prod[i + j] += x * y
        s2 = [Fraction(0)] * max(len(s0), len(prod))
        for i, x in enumerate(s0):
            s2[i] += x
        for i, x in enumerate(prod):
            s2[i] -= x
        r0, r1, s0, s1 = r1, r, s1, _trim(s2)
    if len(r0) != 1:
        return None
    c = 1 / r0[0]
    return [x * c for x in s0]


def _as_univariate(poly: ParamPoly, name: str):
    """Coefficient list of ``poly`` as a polynomial in ``name`` alone, or None."""
    out: list = []
    for m, c in poly.terms.items():
        if m and (len(m) != 1 or m[0][0] != name):
            return None
        e = m[0][1] if m else 0
        while len(out) <= e:
            out.append(Fraction(0))
        out[e] += c
    return _trim(out)


def _from_univariate(coeffs, name: str) -> ParamPoly:
    return ParamPoly({((name, e),) if e else (): c for e, c in enumerate(coeffs)})


# ---------------------------------------------------------------------------
# coefficients


@dataclass(frozen=True, eq=True)
class Coefficient:
    num: ParamPoly
    den: ParamPoly = ONE_POLY

    @classmethod
    def of(cls, value) -> "Coefficient":
        if isinstance(value, Coefficient):
            return value
        if isinstance(value, ParamPoly):
            return cls(value)
        return cls(ParamPoly.constant(value))

    @classmethod
    def param(cls, name: str) -> "Coefficient":
        return cls(ParamPoly.var(name))

    def is_zero(self) -> bool:
        # meaningful on normalized values
        return not self.num.terms

    def is_one(self) -> bool:
        return self.num.is_one() and self.den.is_one()

    def is_rational(self) -> bool:
        return self.num.is_constant() and self.den.is_constant()

    def __neg__(self) -> "Coefficient":
        return Coefficient(-self.num, self.den)

    def evaluate(self, values):
        return self.num.evaluate(values) / self.den.evaluate(values)

    def __str__(self):
        if self.den.is_one():
            return str(self.num)
        num = str(self.num)
        if len(self.num.terms) > 1:
            num = f"({num})"
        den = str(self.den)
        bare = False
        if self.den.is_monomial():
            (m, c), = self.den.terms.items()
            bare = not m or (c == 1 and len(m) == 1)
        if not bare:
            den = f"({den})"
        return f"{num}/{den}"

    def __repr__(self):
        return f"Coefficient({self})"


ZERO = Coefficient(ZERO_POLY)
ONE = Coefficient(ONE_POLY)


@dataclass(frozen=True, eq=False)
class ConstraintSet:
    """Oriented parameter rules plus nonzero assumptions.

    ``rules`` holds pairs ``(lhs, rhs)`` meaning ``lhs -> rhs`` where ``lhs``
    is a monomial strictly above every monomial of ``rhs``.  ``nonzero`` lists
    polynomials assumed not to vanish.
    """

    rules: tuple = ()
    nonzero: tuple = ()
    _cache: dict = field(default_factory=dict, repr=False, compare=False)

    def __post_init__(self):
        for lhs, rhs in self.rules:
            if not lhs:
                raise ConstraintError("constraint rewrites a constant")
            for m in rhs.terms:
                if mono_key(m) >= mono_key(lhs):
                    raise ConstraintError(
                        f"rule {mono_str(lhs)} -> {rhs} does not decrease the monomial order"
                    )
        self._check_confluent()
        reduced = tuple(self.reduce(h) for h in self.nonzero)
        for h, orig in zip(reduced, self.nonzero):
            if not h:
                raise ConstraintError(f"nonzero assumption {orig} is forced to vanish")
        object.__setattr__(self, "nonzero", reduced)

    # -- construction -----------------------------------------------------

    @classmethod
    def from_equations(cls, equations=(), nonzero=()) -> "ConstraintSet":
        """Build from polynomials ``e`` read as ``e = 0``, orienting each by its leading monomial."""
        rules = []
        for eq in equations:
            if not eq:
                continue
            lhs, lc = eq.leading()
            if not lhs:
                raise ConstraintError(f"inconsistent constraint {eq} = 0")
            rest = ParamPoly({m: -c / lc for m, c in eq.terms.items() if m != lhs})
            rules.append((lhs, rest))
        return cls(tuple(rules), tuple(nonzero))

    def _check_confluent(self):
        rules = self.rules
        for i, (l1, r1) in enumerate(rules):
            for l2, r2 in rules[i + 1 :]:
                if not mono_gcd(l1, l2):
                    continue
                lcm = mono_mul(l1, mono_div(l2, mono_gcd(l1, l2)))
                left = r1.mul_monomial(mono_div(lcm, l1))
                right = r2.mul_monomial(mono_div(lcm, l2))
                if self.reduce(left) != self.reduce(right):
                    raise ConstraintError(
                        f"constraints {mono_str(l1)} and {mono_str(l2)} are not confluent"
                    )

    @property
    def parameters(self) -> set:
        names = set()
        for lhs, rhs in self.rules:
            names |= {n for n, _ in lhs} | rhs.variables()
        for h in self.nonzero:
            names |= h.variables()
        return names

    def _univariate_moduli(self):
        """(name, modulus coefficient list) for rules of the form p^k -> r(p)."""
        key = "__moduli__"
        if key not in self._cache:
            out = []
            for lhs, rhs in self.rules:
                if len(lhs) != 1:
                    continue
                name, k = lhs[0]
                r = _as_univariate(rhs, name)
                if r is None:
                    continue
                modulus = [-c for c in r] + [Fraction(0)] * (k - len(r))
                modulus.append(Fraction(1))
                out.append((name, modulus))
            self._cache[key] = out
        return self._cache[key]

    # -- polynomial reduction ---------------------------------------------

    def reduce(self, poly: ParamPoly) -> ParamPoly:
        if not self.rules or not poly.terms:
            return poly
        pending = dict(poly.terms)
        done: dict = {}
        while pending:
            m, c = pending.popitem()
            for lhs, rhs in self.rules:
                q = mono_div(m, lhs)
                if q is not None:
                    for m2, c2 in rhs.terms.items():
                        mm = mono_mul(q, m2)
                        pending[mm] = pending.get(mm, 0) + c * c2
                    break
            else:
                done[m] = done.get(m, 0) + c
        return ParamPoly(done)

    # -- coefficient arithmetic -------------------------------------------

    def coerce(self, value) -> Coefficient:
        return self.normalize(Coefficient.of(value))

    def normalize(self, c: Coefficient) -> Coefficient:
        if c.den.is_one() and not self.rules:
            return c
        cache = self._cache
        hit = cache.get(c)
        if hit is not None:
            return hit
        out = self._normalize(c)
        cache[c] = out
        cache[out] = out
        return out

    def _normalize(self, c: Coefficient) -> Coefficient:
        num, den = self.reduce(c.num), self.reduce(c.den)
        if not den:
            raise DenominatorVanishes(f"denominator {c.den} vanishes under the constraints")
        if not num:
            return ZERO
        for _ in range(4):
            num, den = self._clear_constrained(num, den)
            if den.is_constant():
                break
            _, num2, den2 = poly_cofactors(num, den)
            num2, den2 = self.reduce(num2), self.reduce(den2)
            if num2 == num and den2 == den:
                break
            num, den = num2, den2
        lc = den.leading()[1]
        if lc != 1:
            num, den = num.scale(1 / lc), den.scale(1 / lc)
        return Coefficient(num, den)

    def _clear_constrained(self, num: ParamPoly, den: ParamPoly):
        for name, modulus in self._univariate_moduli():
            if name not in den.variables():
                continue
            # split den = rest(others) * part(name), if it factors that way
            by_exp: dict = {}
            for m, c in den.terms.items():
                e = dict(m).get(name, 0)
                other = tuple(t for t in m if t[0] != name)
                by_exp.setdefault(e, {})[other] = c
            first = next(iter(by_exp.values()))
            (m0, c0) = next(iter(first.items()))
            part = []
            for e, sub in by_exp.items():
                if set(sub) != set(first):
                    break
                ratio = sub[m0] / c0
                if any(sub[m] != first[m] * ratio for m in sub):
                    break
                while len(part) <= e:
                    part.append(Fraction(0))
                part[e] = ratio
            else:
                inv = _uinverse(part, modulus)
                if inv is None:
                    continue
                num = self.reduce(num * _from_univariate(inv, name))
                den = ParamPoly(first)
        return num, den

    def add(self, x: Coefficient, y: Coefficient) -> Coefficient:
        if not x.num.terms:
            return y
        if not y.num.terms:
            return x
        if x.den == y.den:
            s = x.num + y.num
            if not s.terms:
                return ZERO
            if x.den.is_one():
                return Coefficient(self.reduce(s))
            return self.normalize(Coefficient(s, x.den))
        return self.normalize(Coefficient(x.num * y.den + y.num * x.den, x.den * y.den))

    def sub(self, x: Coefficient, y: Coefficient) -> Coefficient:
        return self.add(x, -y)

    def mul(self, x: Coefficient, y: Coefficient) -> Coefficient:
        if not x.num.terms or not y.num.terms:
            return ZERO
        if x.is_one():
            return y
        if y.is_one():
            return x
        if x.den.is_one() and y.den.is_one():
            return Coefficient(self.reduce(x.num * y.num))
        return self.normalize(Coefficient(x.num * y.num, x.den * y.den))

    def is_zero(self, x: Coefficient) -> bool:
        return not self.reduce(x.num).terms

    def prove_nonzero(self, poly: ParamPoly) -> bool:
        """Conservative certificate that ``poly`` does not vanish.

        Accepted: nonzero rationals, factors of declared nonzero polynomials,
        and univariate factors in a constrained parameter that are coprime to
        its defining relation.
        """
        r = self.reduce(poly)
        if not r:
            return False
        progress = True
        while progress and not r.is_constant():
            progress = False
            for h in self.nonzero:
                g, r2, _ = poly_cofactors(r, h)
                if not g.is_constant():
                    r, progress = r2, True
                    break
        if r.is_constant():
            return True
        for name, modulus in self._univariate_moduli():
            u = _as_univariate(r, name)
            if u is not None and _uinverse(u, modulus) is not None:
                return True
        return False

    def invert(self, x: Coefficient) -> Coefficient:
        x = self.normalize(x)
        if not x.num.terms:
            raise NotProvablyNonzero("cannot invert 0")
        if not self.prove_nonzero(x.num):
            raise NotProvablyNonzero(f"cannot prove {x.num} != 0 from the assumptions")
        return self.normalize(Coefficient(x.den, x.num))

    def div(self, x: Coefficient, y: Coefficient) -> Coefficient:
        return self.mul(x, self.invert(y))

    def substitute(self, values: Mapping[str, Fraction]) -> "ConstraintSet":
        """Constraint set after fixing some parameters to rational values."""
        eqs = []
        for lhs, rhs in self.rules:
            eq = (ParamPoly({lhs: Fraction(1)}) - rhs).substitute(values)
            if eq.is_constant() and eq:
                raise ConstraintError("substitution contradicts a constraint")
            eqs.append(eq)
        nz = []
        for h in self.nonzero:
            h2 = h.substitute(values)
            if not h2:
                raise ConstraintError(f"substitution makes nonzero assumption {h} vanish")
            if not h2.is_constant():
                nz.append(h2)
        return ConstraintSet.from_equations(eqs, nz)

    def describe(self) -> list:
        lines = [f"constraint {mono_str(lhs)} = {rhs}" for lhs, rhs in self.rules]
        lines += [f"nonzero {h}" for h in self.nonzero]
        return lines


EMPTY = ConstraintSet()


# Module-level spellings of the field operations.


def normalize(c: Coefficient, k: ConstraintSet = EMPTY) -> Coefficient:
    return k.normalize(c)


def add(x: Coefficient, y: Coefficient, k: ConstraintSet = EMPTY) -> Coefficient:
    return k.add(x, y)


def mul(x: Coefficient, y: Coefficient, k: ConstraintSet = EMPTY) -> Coefficient:
    return k.mul(x, y)


def invert(x: Coefficient, k: ConstraintSet = EMPTY) -> Coefficient:
    return k.invert(x)


def is_zero(x: Coefficient, k: ConstraintSet = EMPTY) -> bool:
    return k.is_zero(x)
