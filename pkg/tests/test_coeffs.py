import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from gsbasis.coeffs import (
    EMPTY,
    ONE,
    ZERO,
    Coefficient,
    ConstraintError,
    ConstraintSet,
    DenominatorVanishes,
    NotProvablyNonzero,
    ParamPoly,
    add,
    invert,
    is_zero,
    mul,
    normalize,
)
from gsbasis.presentation import parse_polynomial

from oracles import primitive_root


def P(text):
    """Parameter polynomial from text."""
    f = parse_polynomial(text, None)
    if not f:
        return ParamPoly()
    c = f.terms[0][1]
    return c.num.scale(1 / c.den.constant_value())


def K(eqs=(), nonzero=()):
    return ConstraintSet.from_equations([P(e) for e in eqs], [P(h) for h in nonzero])


def C(text, k=EMPTY):
    f = parse_polynomial(text, None, k)
    return f.terms[0][1] if f else ZERO


SK = K(["a^3 + 1"], ["a", "s", "s^3 + 1"])
PI = K(["p^2 + 1"], ["p"])
OMEGA = K(["p^2 + p + 1"], ["p"])
GEN = K([], ["p", "p - 1", "p + 1", "alpha"])


# -- examples ---------------------------------------------------------------


def test_cube_rule_reduces_power():
    assert normalize(Coefficient.of(ParamPoly.var("a", 3)), SK) == C("-1")


def test_vanishing_coefficient_from_sklyanin_reduction():
    c = Coefficient(P("a^3*s + s"), P("a^2"))
    assert normalize(c, SK).is_zero()


def test_one_is_fixed():
    for k in (EMPTY, SK, PI):
        assert normalize(ONE, k) == ONE


def test_additive_inverse():
    x = C("1/a", SK)
    assert add(x, -x, SK).is_zero()


def test_sum_collapses_under_cube_rule():
    # a/s - s^2/a^2 = (a^3 - s^3)/(s a^2) = -(s^3 + 1)/(s a^2)
    x = SK.sub(C("a/s", SK), C("s^2/a^2", SK))
    expected = C("-(s^3 + 1)/(s*a^2)", SK)
    assert x == expected


def test_zero_is_additive_identity():
    x = C("(a + s)/s", SK)
    assert add(ZERO, x, SK) == x


def test_mul_by_square_gives_minus_one():
    assert mul(C("a"), C("a^2"), SK) == C("-1")


def test_inverse_square_is_minus_a():
    inv = mul(C("1/a", SK), C("1/a", SK), SK)
    assert inv == C("-a", SK)
    # cross-multiplication check
    assert mul(inv, C("a^2"), SK) == ONE


def test_invert_sklyanin_coefficient():
    x = C("-(s^3 + 1)/(a*s)", SK)
    assert invert(x, SK) == C("-a*s/(s^3 + 1)", SK)


def test_invert_one_and_parameter():
    assert invert(ONE) == ONE
    assert invert(C("p"), GEN) == C("1/p", GEN)


def test_invert_refuses_unknown_parameter():
    with pytest.raises(NotProvablyNonzero):
        invert(C("beta"), GEN)
    with pytest.raises(NotProvablyNonzero):
        invert(C("p - 2"), GEN)


def test_invert_zero_refused():
    with pytest.raises(NotProvablyNonzero):
        invert(ZERO, SK)


def test_is_zero_examples():
    assert is_zero(Coefficient(P("s*a^3 + s"), P("a^3")), SK)
    assert not is_zero(C("s^3 + 1"))
    assert is_zero(C("a^3 + 1"), SK)


def test_denominator_vanishing_is_reported():
    with pytest.raises(DenominatorVanishes):
        SK.normalize(Coefficient(ONE.num, P("a^3 + 1")))


def test_univariate_factor_coprime_to_modulus_is_nonzero():
    # p^2 + p + 1 = 0 forces p != 0, p != 1
    assert OMEGA.prove_nonzero(P("p"))
    assert OMEGA.prove_nonzero(P("p - 1"))
    assert OMEGA.prove_nonzero(P("p + 2"))


def test_factors_of_assumptions_are_nonzero():
    k = K([], ["alpha^2 - beta^2"])
    assert k.prove_nonzero(P("alpha - beta"))
    assert k.prove_nonzero(P("3*alpha + 3*beta"))
    assert not k.prove_nonzero(P("alpha"))


def test_canonical_denominator_is_monic():
    c = normalize(Coefficient(P("2*s"), P("-4*s^2 - 4")))
    assert c.den.leading()[1] == 1
    assert c == normalize(Coefficient(P("-s"), P("2*s^2 + 2")))


def test_constrained_parameter_leaves_denominator():
    c = C("1/a^2", SK)
    assert c.den.is_one()


def test_nonconfluent_constraints_rejected():
    with pytest.raises(ConstraintError):
        K(["a^2*b - 1", "a*b^2 - 2"])


def test_constraint_must_decrease():
    with pytest.raises(ConstraintError):
        ConstraintSet(((((("a", 1),)), P("a^2")),))


def test_nonzero_assumption_forced_to_vanish():
    with pytest.raises(ConstraintError):
        K(["p^2 + 1"], ["p^2 + 1"])


def test_substitute_fixes_parameters():
    k = GEN.substitute({"alpha": Fraction(2)})
    assert "alpha" not in k.parameters
    with pytest.raises(ConstraintError):
        GEN.substitute({"p": Fraction(1)})


def test_printing_round_trips():
    k = K(["a^3 + 1"], ["a", "s", "s^3 + 1", "beta"])
    for text in ["-(s^3 + 1)/(a*s)", "a^2*s/(s^3 + 1)", "1/2", "(alpha + 1)/(2*beta)"]:
        c = C(text, k)
        assert C(str(c), k) == c


def test_parser_division_needs_assumption():
    with pytest.raises(NotProvablyNonzero):
        C("1/beta", SK)


# -- property tests -----------------------------------------------------------

# (constraint set, parameter names, sampler of numeric points satisfying it)
CASES = {
    "free": (EMPTY, ["s", "t"], lambda r: {"s": r.uniform(-3, 3), "t": r.uniform(-3, 3)}),
    "cube": (SK, ["a", "s"], lambda r: {"a": r.choice([-1, primitive_root(6), primitive_root(6, -1)]), "s": r.uniform(0.5, 2)}),
    "i": (PI, ["p", "t"], lambda r: {"p": r.choice([1j, -1j]), "t": r.uniform(-2, 2)}),
    "omega": (OMEGA, ["p"], lambda r: {"p": r.choice([primitive_root(3), primitive_root(3, 2)])}),
}


@st.composite
def coefficients(draw, names, k, depth=3):
    """Random unnormalized expressions; division only by values ``k`` proves nonzero.

    Under a constraint like a^3 = -1 the parameter ring has zero divisors
    (a + 1), so dividing by an unproven value would not be well defined.
    """
    if depth == 0 or draw(st.booleans()):
        if draw(st.booleans()):
            return Coefficient.of(Fraction(draw(st.integers(-4, 4)), draw(st.integers(1, 3))))
        return Coefficient(ParamPoly.var(draw(st.sampled_from(names)), draw(st.integers(1, 4))))
    x = draw(coefficients(names, k, depth - 1))
    y = draw(coefficients(names, k, depth - 1))
    op = draw(st.sampled_from(["+", "*", "/"]))
    if op == "+":
        return Coefficient(x.num * y.den + y.num * x.den, x.den * y.den)
    if op == "*":
        return Coefficient(x.num * y.num, x.den * y.den)
    if not k.prove_nonzero(y.num):
        return x
    return Coefficient(x.num * y.den, x.den * y.num)


def _value(c, point):
    d = c.den.evaluate(point)
    if abs(d) < 1e-6:
        return None
    return c.num.evaluate(point) / d


def _close(u, v):
    return abs(u - v) <= 1e-9 * max(1.0, abs(u), abs(v))


@pytest.mark.parametrize("case", sorted(CASES))
def test_substitution_soundness(case):
    """Normalization agrees numerically with the raw expression at roots of the constraints."""
    k, names, sampler = CASES[case]
    rng = random.Random(case)
    checked = 0

    @settings(max_examples=1000, database=None)
    @given(coefficients(names, k))
    def run(c):
        nonlocal checked
        n = k.normalize(c)
        assert k.normalize(n) == n
        for _ in range(3):
            point = sampler(rng)
            raw, canon = _value(c, point), _value(n, point)
            if raw is None or canon is None or abs(raw) > 1e6:
                continue
            assert _close(complex(raw), complex(canon)), (c, n, point)
            checked += 1

    run()
    assert checked > 500


@pytest.mark.parametrize("case", sorted(CASES))
def test_field_laws(case):
    k, names, _ = CASES[case]

    @settings(max_examples=1000, database=None)
    @given(coefficients(names, k, 2), coefficients(names, k, 2), coefficients(names, k, 2))
    def run(x, y, z):
        x, y, z = k.normalize(x), k.normalize(y), k.normalize(z)
        assert k.add(x, y) == k.add(y, x)
        assert k.mul(x, y) == k.mul(y, x)
        assert k.add(k.add(x, y), z) == k.add(x, k.add(y, z))
        assert k.mul(x, k.add(y, z)) == k.add(k.mul(x, y), k.mul(x, z))
        assert k.add(x, -x).is_zero()
        try:
            inv = k.invert(x)
        except NotProvablyNonzero:
            return
        assert k.mul(x, inv) == ONE

    run()


@given(st.integers(-50, 50), st.integers(1, 50))
def test_rationals_match_fraction(n, d):
    c = normalize(Coefficient(ParamPoly.constant(n), ParamPoly.constant(d)))
    assert c.num.evaluate({}) / c.den.evaluate({}) == Fraction(n, d)
