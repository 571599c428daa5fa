"""Compositions, Gröbner–Shirshov certification and Shirshov completion."""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from typing import Literal, Optional

from .coeffs import ONE, ConstraintSet
from .ncpoly import NCPolynomial, add, leading, mul_word, neg, scale
from .rewrite import ReductionSystem, normal_form
from .words import Overlap, Word, deglex_key, find_inclusions, find_intersections

log = logging.getLogger(__name__)

Certified = "Certified"
BudgetExceeded = "BudgetExceeded"


@dataclass(frozen=True)
class Ambiguity:
    left: int
    right: int
    overlap: Overlap

    @property
    def word(self) -> Word:
        return self.overlap.word

    @property
    def kind(self) -> str:
        return self.overlap.kind


@dataclass
class CompositionRecord:
    ambiguity: Ambiguity
    raw: NCPolynomial
    normal_form: NCPolynomial
    certificate: Optional[dict] = field(default=None, repr=False, compare=False)
    iteration: int = 1

    @property
    def trivial(self) -> bool:
        return not self.normal_form

    def to_dict(self, R: ReductionSystem) -> dict:
        alpha = R.alphabet
        return {
            "iteration": self.iteration,
            "ambiguity": alpha.format_word(self.ambiguity.word),
            "left_rule": self.ambiguity.left,
            "right_rule": self.ambiguity.right,
            "kind": self.ambiguity.kind,
            "raw": self.raw.format(alpha),
            "normal_form": self.normal_form.format(alpha),
            "trivial": self.trivial,
        }


@dataclass(frozen=True)
class Limits:
    max_iterations: int = 50
    max_degree: int = 12
    max_rules: int = 500

    def __post_init__(self):
        if min(self.max_iterations, self.max_degree, self.max_rules) < 1:
            raise ValueError("limits must be positive")


@dataclass
class CompletionResult:
    basis: ReductionSystem
    status: Literal["Certified", "BudgetExceeded"]
    iterations: int
    added: list
    trace: list
    # per basis rule: certificate over the input rules, when tracked
    certificates: Optional[list] = field(default=None, repr=False)
    reason: str = ""

    @property
    def certified(self) -> bool:
        return self.status == Certified


def ambiguities(R: ReductionSystem) -> list:
    """All intersection ambiguities (ordered pairs, self included) and inclusions (distinct pairs)."""
    lws = R.leading_words
    out = []
    for i, u in enumerate(lws):
        for j, v in enumerate(lws):
            for ov in find_intersections(u, v):
                out.append(Ambiguity(i, j, ov))
            if i != j:
                for ov in find_inclusions(u, v):
                    out.append(Ambiguity(i, j, ov))
    out.sort(key=lambda amb: (deglex_key(amb.word), amb.left, amb.right, amb.kind, amb.overlap.a))
    return out


def composition(amb: Ambiguity, R: ReductionSystem) -> NCPolynomial:
    """``f*a - b*g`` for an intersection, ``f - a*g*b`` for an inclusion."""
    f, g = R.rules[amb.left], R.rules[amb.right]
    ov = amb.overlap
    if ov.kind == "intersection":
        return add(mul_word((), f, ov.a), neg(mul_word(ov.b, g, ())), R.constraints)
    return add(f, neg(mul_word(ov.a, g, ov.b)), R.constraints)


def _composition_certificate(amb: Ambiguity, R: ReductionSystem, certs, k) -> dict:
    """Certificate of the raw composition over whatever ``certs`` is expressed in."""
    ov = amb.overlap
    out: dict = {}
    if ov.kind == "intersection":
        _accumulate(out, certs[amb.left], (), ov.a, None, k)
        _accumulate(out, certs[amb.right], ov.b, (), "neg", k)
    else:
        _accumulate(out, certs[amb.left], (), (), None, k)
        _accumulate(out, certs[amb.right], ov.a, ov.b, "neg", k)
    return out


def _accumulate(target: dict, cert: dict, a: Word, b: Word, factor, k: ConstraintSet):
    """target += factor * a * cert * b  (factor None = 1, "neg" = -1, else a Coefficient)."""
    for (a2, o, b2), c in cert.items():
        if factor == "neg":
            c = -c
        elif factor is not None:
            c = k.mul(factor, c)
        key = (a + a2, o, b2 + b)
        if key in target:
            s = k.add(target[key], c)
            if s.is_zero():
                del target[key]
            else:
                target[key] = s
        elif not c.is_zero():
            target[key] = c


def _nf_certificate(raw_cert: dict, nf_cert: dict, certs, k) -> dict:
    """Certificate of ``raw - sum(nf_cert)`` given certificates of the reducers."""
    out = dict(raw_cert)
    for (a, i, b), c in nf_cert.items():
        _accumulate(out, certs[i], a, b, -c, k)
    return out


def _records(R: ReductionSystem, with_certificates: bool, iteration: int = 1) -> list:
    out = []
    for amb in ambiguities(R):
        raw = composition(amb, R)
        cert = {} if with_certificates else None
        nf = normal_form(raw, R, certificate=cert)
        out.append(CompositionRecord(amb, raw, nf, cert, iteration))
    return out


def certify(R: ReductionSystem) -> tuple:
    """``(is_gs_basis, records)``: every composition must reduce to zero."""
    records = _records(R, False)
    return all(r.trivial for r in records), records


def _interreduce(rules: list, certs: Optional[list], R0: ReductionSystem) -> tuple:
    k = R0.constraints
    rules = list(rules)
    certs = list(certs) if certs is not None else None
    changed = True
    while changed:
        changed = False
        for i in range(len(rules)):
            others = [j for j in range(len(rules)) if j != i]
            sub = R0.with_rules([rules[j] for j in others])
            cert = {} if certs is not None else None
            nf = normal_form(rules[i], sub, certificate=cert)
            if nf == rules[i]:
                continue
            changed = True
            if not nf:
                log.debug("rule %d reduced to zero", i)
                del rules[i]
                if certs is not None:
                    del certs[i]
            else:
                inv = k.invert(leading(nf).coefficient)
                rules[i] = scale(inv, nf, k)
                if certs is not None:
                    mapped = {(a, others[j], b): c for (a, j, b), c in cert.items()}
                    raw = _nf_certificate(certs[i], mapped, certs, k)
                    certs[i] = {}
                    _accumulate(certs[i], raw, (), (), inv, k)
            break
    return rules, certs


def interreduce(R: ReductionSystem) -> ReductionSystem:
    """Reduce every rule by the others and re-monicize, to a fixpoint."""
    rules, _ = _interreduce(list(R.rules), None, R)
    return R.with_rules(rules)


def _identity_certificates(n: int) -> list:
    return [{((), i, ()): ONE} for i in range(n)]


def complete(
    R: ReductionSystem,
    limits: Limits = Limits(),
    *,
    certificates: bool = True,
    strategy: Literal["batch", "smallest"] = "batch",
) -> CompletionResult:
    """Shirshov completion in passes.

    Each pass reduces every composition of the current system.  With the
    ``batch`` strategy all nontrivial results (in ambiguity order, each reduced
    again by the rules added before it in the same pass) are made monic and
    added; with ``smallest`` only the deglex-smallest one is.  The system is
    then interreduced.  The pass that finds only trivial compositions certifies.
    """
    if strategy not in ("batch", "smallest"):
        raise ValueError(f"unknown strategy {strategy!r}")
    k = R.constraints
    original = list(R.rules)
    rules = list(R.rules)
    certs = _identity_certificates(len(rules)) if certificates else None
    trace: list = []
    iteration = 0

    def result(status, reason=""):
        basis = R.with_rules(rules)
        added = [r for r in rules if r not in original]
        return CompletionResult(basis, status, iteration, added, trace, certs, reason)

    while True:
        if iteration >= limits.max_iterations:
            return result(BudgetExceeded, f"max_iterations={limits.max_iterations}")
        iteration += 1
        current = R.with_rules(rules)
        records = _records(current, certificates, iteration)
        trace.extend(records)
        nontrivial = [r for r in records if not r.trivial]
        log.info("pass %d: %d rules, %d compositions, %d nontrivial",
                 iteration, len(rules), len(records), len(nontrivial))
        if not nontrivial:
            return result(Certified)
        if strategy == "smallest":
            nontrivial = nontrivial[:1]

        for rec in nontrivial:
            grown = R.with_rules(rules)
            cert = {} if certificates else None
            nf = normal_form(rec.normal_form, grown, certificate=cert)
            if not nf:
                continue
            if len(leading(nf).word) > limits.max_degree:
                return result(BudgetExceeded, f"max_degree={limits.max_degree}")
            if len(rules) + 1 > limits.max_rules:
                return result(BudgetExceeded, f"max_rules={limits.max_rules}")
            inv = k.invert(leading(nf).coefficient)
            rules.append(scale(inv, nf, k))
            if certificates:
                raw = _composition_certificate(rec.ambiguity, current, certs, k)
                first = _nf_certificate(raw, rec.certificate, certs, k)
                full = _nf_certificate(first, cert, certs, k)
                new = {}
                _accumulate(new, full, (), (), inv, k)
                certs.append(new)
        rules, certs = _interreduce(rules, certs, R)


@dataclass(frozen=True)
class PBWReport:
    shape_ok: bool
    pbw: bool
    reasons: tuple = ()
    # tail words above x_i x_j in deglex: tolerated, reported
    flags: tuple = ()


def pbw_check(R: ReductionSystem) -> PBWReport:
    """Check the pairwise quadratic shape ``x_j x_i - l x_i x_j - d`` and GS-ness."""
    n = len(R.alphabet)
    alpha = R.alphabet
    reasons = []
    flags = []
    seen = {}
    lws = R.leading_words
    for idx, (rule, lw) in enumerate(zip(R.rules, lws)):
        if len(lw) != 2 or lw[0] <= lw[1]:
            reasons.append(f"rule {idx}: leading word {alpha.format_word(lw)} is not x_j*x_i with i<j")
            continue
        if lw in seen:
            reasons.append(f"rules {seen[lw]} and {idx} share leading word {alpha.format_word(lw)}")
            continue
        seen[lw] = idx
        swapped = (lw[1], lw[0])
        for w, _ in rule.terms[1:]:
            if w == swapped:
                continue
            if w and any(_is_subword(w, other) for other in lws):
                reasons.append(
                    f"rule {idx}: tail word {alpha.format_word(w)} is a subword of a leading word"
                )
            if deglex_key(w) > deglex_key(swapped):
                flags.append(f"rule {idx}: tail word {alpha.format_word(w)} exceeds {alpha.format_word(swapped)}")
    if len(seen) != n * (n - 1) // 2 and not reasons:
        reasons.append(f"expected {n * (n - 1) // 2} pairwise rules, found {len(seen)}")
    shape_ok = not reasons
    pbw = shape_ok and certify(R)[0]
    return PBWReport(shape_ok, pbw, tuple(reasons), tuple(flags))


def _is_subword(needle: Word, hay: Word) -> bool:
    m = len(needle)
    return any(hay[i : i + m] == needle for i in range(len(hay) - m + 1))
