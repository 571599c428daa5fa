"""The catalog of 26 trimmed double extensions of type (14641) and a batch verifier.

Relations live in ``data/families.txt`` in the presentation format, one block
per family introduced by a ``family X`` line.
"""

from __future__ import annotations

import logging
import re
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from importlib import resources
from typing import Optional, Sequence

from .coeffs import NotProvablyNonzero
from .presentation import Presentation, PresentationError, parse_presentation
from .shirshov import Limits, certify, complete, interreduce, pbw_check

log = logging.getLogger(__name__)

EXPECTED_FINITE = frozenset("ABDEGKLQRVXY")

Certified = "Certified"
FirstPassNontrivial = "FirstPassNontrivial"
BudgetExceeded = "BudgetExceeded"
Error = "Error"


@dataclass(frozen=True, eq=False)
class FamilyPresentation:
    label: str
    presentation: Presentation
    expected_finite: bool
    text: str = field(default="", repr=False)

    @property
    def relations(self) -> list:
        return self.presentation.relations

    @property
    def constraints(self):
        return self.presentation.constraints

    def instances(self) -> list:
        return self.presentation.instances()


@dataclass
class FamilyReport:
    label: str
    status: str
    basis_size: int = 0
    compositions: list = field(default_factory=list, repr=False)
    # None when the system was not certified
    pbw: Optional[bool] = None
    instance: str = ""
    added: int = 0
    nontrivial: int = 0
    ambiguity_words: tuple = ()
    expected_finite: bool = False
    seconds: float = 0.0
    error: str = ""
    # nontrivial compositions of the monic relations before interreduction;
    # None when those relations cannot be made monic
    raw_nontrivial: Optional[int] = None
    basis: object = field(default=None, repr=False)

    @property
    def name(self) -> str:
        return f"{self.label}[{self.instance}]" if self.instance else self.label

    def to_dict(self) -> dict:
        return {
            "label": self.label,
            "instance": self.instance,
            "status": self.status,
            "basis_size": self.basis_size,
            "added": self.added,
            "nontrivial": self.nontrivial,
            "ambiguities": list(self.ambiguity_words),
            "pbw": self.pbw,
            "expected_finite": self.expected_finite,
            "seconds": round(self.seconds, 4),
            "error": self.error,
            "raw_nontrivial": self.raw_nontrivial,
        }


_HEADER = re.compile(r"^\s*family\s+([A-Z])\s*(?:#.*)?$")


def parse_catalog(text: str) -> list:
    """Split a catalog file into :class:`FamilyPresentation` blocks."""
    blocks: list = []
    current = None
    for lineno, raw in enumerate(text.splitlines(), start=1):
        m = _HEADER.match(raw)
        if m:
            current = [m.group(1), lineno + 1, []]
            blocks.append(current)
        elif current is not None:
            current[2].append(raw)
        elif raw.split("#", 1)[0].strip():
            raise PresentationError("text before the first 'family' line", lineno, 1)
    out = []
    for label, first, lines in blocks:
        body = "\n".join(lines)
        pres = parse_presentation(body, first_line=first)
        flag = pres.meta.get("expected_finite", "false").lower()
        if flag not in ("true", "false"):
            raise PresentationError(f"family {label}: expected_finite must be true or false", first, 1)
        out.append(FamilyPresentation(label, pres, flag == "true", body))
    return out


_CATALOG: Optional[list] = None


def builtin_catalog() -> list:
    """All 26 families, ordered by label."""
    global _CATALOG
    if _CATALOG is None:
        text = resources.files("gsbasis").joinpath("data/families.txt").read_text(encoding="utf-8")
        _CATALOG = sorted(parse_catalog(text), key=lambda f: f.label)
    return list(_CATALOG)


def get_family(label: str) -> FamilyPresentation:
    for fam in builtin_catalog():
        if fam.label == label:
            return fam
    raise KeyError(f"no family labelled {label!r}")


def verify_family(fam: FamilyPresentation, limits: Optional[Limits] = None, complete_hard: bool = False) -> list:
    """One report per instance: interreduce, certify, then PBW or (optionally) completion.

    Raises NotProvablyNonzero with the family label in the message when a
    leading coefficient cannot be shown invertible.
    """
    reports = []
    for inst_label, pres in fam.instances():
        t0 = time.perf_counter()
        try:
            R = interreduce(pres.system())
            ok, records = certify(R)
        except NotProvablyNonzero as exc:
            raise NotProvablyNonzero(f"family {fam.label}{' ' + inst_label if inst_label else ''}: {exc}") from exc
        words = tuple(R.alphabet.format_word(r.ambiguity.word) for r in records)
        rep = FamilyReport(
            label=fam.label,
            status=Certified if ok else FirstPassNontrivial,
            basis_size=len(R),
            compositions=records,
            instance=inst_label,
            nontrivial=sum(not r.trivial for r in records),
            ambiguity_words=words,
            expected_finite=fam.expected_finite,
            basis=R,
        )
        rep.raw_nontrivial = _raw_nontrivial(pres)
        if ok:
            rep.pbw = pbw_check(R).pbw
        elif complete_hard:
            res = complete(R, limits or Limits(), certificates=False)
            rep.basis = res.basis
            rep.basis_size = len(res.basis)
            rep.added = len(res.added)
            rep.status = Certified if res.certified else BudgetExceeded
            if res.certified:
                rep.pbw = pbw_check(res.basis).pbw
            else:
                rep.error = res.reason
        rep.seconds = time.perf_counter() - t0
        log.info("%s: %s in %.3fs", rep.name, rep.status, rep.seconds)
        reports.append(rep)
    return reports


def _raw_nontrivial(pres: Presentation) -> Optional[int]:
    try:
        _, records = certify(pres.system())
    except NotProvablyNonzero:
        return None
    return sum(not r.trivial for r in records)


def _verify_label(args) -> list:
    label, limits, complete_hard, strip = args
    fam = get_family(label)
    try:
        reports = verify_family(fam, limits, complete_hard)
    except (NotProvablyNonzero, PresentationError) as exc:
        return [FamilyReport(label, Error, expected_finite=fam.expected_finite, error=str(exc))]
    if strip:
        # systems are bulky to ship between processes
        for rep in reports:
            rep.basis = None
    return reports


def verify_all(
    limits: Optional[Limits] = None,
    labels: Optional[Sequence[str]] = None,
    jobs: int = 1,
    complete_hard: bool = False,
) -> list:
    """Verify every family (or those in ``labels``), ordered by label.

    Failures are recorded as ``Error`` reports and never abort the batch.
    """
    catalog = builtin_catalog()
    wanted = [f.label for f in catalog if labels is None or f.label in set(labels)]
    if jobs > 1 and len(wanted) > 1:
        tasks = [(lab, limits, complete_hard, True) for lab in wanted]
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            chunks = list(pool.map(_verify_label, tasks))
    else:
        chunks = [_verify_label((lab, limits, complete_hard, False)) for lab in wanted]
    return [rep for chunk in chunks for rep in chunk]
