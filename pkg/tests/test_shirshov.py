import random

import pytest
import sympy as sp

from gsbasis.families import get_family
from gsbasis.ncpoly import add, neg
from gsbasis.presentation import parse_polynomial, parse_presentation
from gsbasis.rewrite import expand_certificate
from gsbasis.shirshov import (
    BudgetExceeded,
    Certified,
    Limits,
    ambiguities,
    certify,
    complete,
    composition,
    interreduce,
    pbw_check,
)

from oracles import ideal_rank


def P(text, R):
    return parse_polynomial(text, R.alphabet, R.constraints)


def words(R, ambs):
    return [(R.alphabet.format_word(a.word), a.left, a.right) for a in ambs]


@pytest.fixture(scope="module")
def S(sklyanin):
    return sklyanin.system()


@pytest.fixture(scope="module")
def Sc(S):
    return complete(S)


def test_initial_ambiguities(S):
    assert words(S, ambiguities(S)) == [("x^2*z", 0, 2), ("x^2*y", 0, 1), ("x^3", 0, 0)]


def test_enlarged_ambiguities(S, Sc):
    f4, f5 = P("y^2*z + 1/a*z*y^2", S), P("y*z^2 + 1/a*z^2*y", S)
    S1 = S.with_rules(list(S.rules) + [f4, f5])
    got = {w for w, _, _ in words(S1, ambiguities(S1))}
    assert got == {"x^2*y", "x^2*z", "x^3", "x*y^2*z", "x*y*z^2", "y^2*z^2"}


def test_no_overlap_no_ambiguity():
    R = parse_presentation("generators z < y < x\nrelation x*y\nrelation x*z").system()
    assert ambiguities(R) == []
    # xy against zx has no overlap, but zx against xy does
    R = parse_presentation("generators z < y < x\nrelation x*y\nrelation z*x").system()
    assert words(R, ambiguities(R)) == [("z*x*y", 1, 0)]


def test_raw_compositions(S):
    by_word = {S.alphabet.format_word(a.word): a for a in ambiguities(S)}
    assert composition(by_word["x^2*y"], S) == P("-1/s*y*z*y + a/s*z*y^2 + a*x*y*x + s*x*z^2", S)
    assert composition(by_word["x^3"], S) == P("-1/s*y*z*x + a/s*z*y*x + 1/s*x*y*z - a/s*x*z*y", S)


def test_inclusion_needs_distinct_rules():
    R = parse_presentation("generators y < x\nrelation x*y*x - y\nrelation y*x - x").system()
    kinds = [(a.kind, a.left, a.right) for a in ambiguities(R)]
    assert ("inclusion", 0, 1) in kinds
    assert all(not (k == "inclusion" and l == r) for k, l, r in kinds)


def test_certify_examples(S, Sc):
    ok, records = certify(Sc.basis)
    assert ok and all(r.trivial for r in records)
    ok, records = certify(S)
    assert not ok
    first = [r for r in records if S.alphabet.format_word(r.ambiguity.word) == "x^2*y"][0]
    lead_word, lead_coef = first.normal_form.terms[0]
    assert S.alphabet.format_word(lead_word) == "y^2*z"
    monic = [(w, S.constraints.div(c, lead_coef)) for w, c in first.normal_form.terms]
    assert monic == list(P("y^2*z + 1/a*z*y^2", S).terms)


def test_family_k_has_four_trivial_compositions():
    for _, pres in get_family("K").instances():
        ok, records = certify(interreduce(pres.system()))
        assert ok and len(records) == 4


def test_interreduce_family_a():
    R = interreduce(get_family("A").presentation.system())
    assert P("x2*y1 - y1*x2 + y2*x1", R) in R.rules
    assert P("x2*y2 - y2*x2 - 2*y1*x2 + y2*x1", R) in R.rules


def test_interreduce_family_e_halves():
    pres = get_family("E").presentation
    R = interreduce(pres.system())
    expected = [
        "x2*y2 - 1/2*y1*x1 + 1/2*y1*x2",
        "x1*y2 - 1/2*y1*x1 - 1/2*y1*x2",
        "x2*y1 - 1/2*y2*x1 - 1/2*y2*x2",
        "x1*y1 + 1/2*y2*x1 - 1/2*y2*x2",
    ]
    for text in expected:
        assert P(text, R) in R.rules
    # the printed variant with -1/2*y2*x1 in the last rule is not in the ideal
    raw = pres.relations
    values = {"p": sp.I}
    printed = P("x1*y1 - 1/2*y2*x1 - 1/2*y2*x2", R)
    assert ideal_rank(raw + [P(expected[3], R)], 2, 4, values) == 6
    assert ideal_rank(raw + [printed], 2, 4, values) == 7


def test_interreduce_is_fixpoint(corpus):
    for name, R in corpus:
        assert interreduce(R) == R, name


def test_interreduce_keeps_the_ideal():
    for label in "ACSE":
        pres = get_family(label).presentation
        R = interreduce(pres.system())
        values = {"p": (-1 + sp.sqrt(3) * sp.I) / 2} if label == "C" else {"p": sp.I}
        assert ideal_rank(list(pres.relations) + list(R.rules), 2, 4, values) == 6


def test_complete_example(S, Sc):
    assert Sc.status == Certified and Sc.iterations == 2
    assert set(Sc.added) == {P("y^2*z + 1/a*z*y^2", S), P("y*z^2 + 1/a*z^2*y", S)}
    assert len(Sc.basis) == 5


def test_complete_smallest_first_strategy(S, Sc):
    res = complete(S, strategy="smallest")
    assert res.status == Certified
    assert set(res.basis.rules) == set(Sc.basis.rules)
    assert res.iterations == 3


def test_complete_family_b_adds_nothing():
    res = complete(get_family("B").presentation.system())
    assert res.status == Certified and res.added == []


def test_complete_single_commutator():
    R = parse_presentation("generators y < x\nrelation x*y - y*x").system()
    res = complete(R)
    assert res.status == Certified and res.iterations == 1 and res.trace == []


def test_certificates_reexpand_to_basis(S, Sc):
    for rule, cert in zip(Sc.basis.rules, Sc.certificates):
        assert expand_certificate(cert, S.rules, S.constraints) == rule


def test_certificates_for_raw_family():
    R = get_family("C").presentation.system()
    res = complete(R)
    assert res.status == Certified
    for rule, cert in zip(res.basis.rules, res.certificates):
        assert expand_certificate(cert, R.rules, R.constraints) == rule


def test_budget_limits():
    R = parse_presentation("generators a < b\nrelation b*a*b - a*b*a").system()
    for limits, reason in [
        (Limits(6, 12, 500), "max_iterations"),
        (Limits(50, 6, 500), "max_degree"),
        (Limits(50, 50, 3), "max_rules"),
    ]:
        res = complete(R, limits)
        assert res.status == BudgetExceeded and res.reason.startswith(reason)
        assert res.trace
    with pytest.raises(ValueError):
        Limits(0, 1, 1)


def test_budget_partial_basis_is_in_ideal():
    R = parse_presentation("generators a < b\nrelation b*a*b - a*b*a").system()
    res = complete(R, Limits(4, 12, 500))
    for rule, cert in zip(res.basis.rules, res.certificates):
        assert expand_certificate(cert, R.rules, R.constraints) == rule


def test_completion_idempotent(corpus):
    for name, R in corpus:
        res = complete(R)
        assert res.status == Certified and res.added == [] and res.basis == R, name


def test_monic_invariant(corpus, Sc):
    for _, R in corpus + [("sc", Sc.basis)]:
        assert all(r.terms[0][1].is_one() for r in R.rules)


def test_pbw_examples(Sc):
    for _, pres in get_family("Y").instances():
        rep = pbw_check(interreduce(pres.system()))
        assert rep.shape_ok and rep.pbw
    rep = pbw_check(Sc.basis)
    assert not rep.shape_ok and not rep.pbw


def test_pbw_needs_every_pair():
    R = parse_presentation("generators x < y < z\nrelation y*x - x*y\nrelation z*x - x*z").system()
    rep = pbw_check(R)
    assert not rep.shape_ok


def test_pbw_shape_but_not_gs():
    # shape is fine but the overlap z*y*x does not resolve
    R = parse_presentation("generators x < y < z\nrelation y*x - x*y\nrelation z*x - x*z\nrelation z*y - x*y - y*z").system()
    rep = pbw_check(R)
    ok, _ = certify(R)
    assert rep.shape_ok and rep.pbw == ok


def test_record_serialization(S):
    _, records = certify(S)
    d = records[0].to_dict(S)
    assert set(d) == {"iteration", "ambiguity", "left_rule", "right_rule", "kind", "raw", "normal_form", "trivial"}
    assert d["ambiguity"] == "x^2*z"
