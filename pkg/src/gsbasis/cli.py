"""Command-line interface.

Exit codes: 0 success, 1 not a GS basis, 2 parse error, 3 a coefficient
could not be proved nonzero, 4 completion budget exceeded.

A FILE argument is either a presentation file or ``family:X`` (``family:X:p=1``
for one discrete instance) naming a built-in family.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
import time

from .coeffs import NotProvablyNonzero
from .families import get_family, verify_all
from .presentation import Presentation, PresentationError, format_presentation, load_presentation, parse_polynomial
from .rewrite import ReductionSystem, irr_words, normal_form
from .shirshov import Limits, certify, complete, pbw_check

SCHEMA_VERSION = 1

EXIT_OK, EXIT_NOT_GS, EXIT_PARSE, EXIT_NONZERO, EXIT_BUDGET = 0, 1, 2, 3, 4


class UsageError(Exception):
    pass


def _load(target: str) -> Presentation:
    if target.startswith("family:"):
        parts = target.split(":")
        try:
            fam = get_family(parts[1])
        except KeyError as exc:
            raise UsageError(str(exc.args[0])) from None
        instances = fam.instances()
        if len(parts) > 2:
            for label, pres in instances:
                if label == parts[2]:
                    return pres
            raise UsageError(f"family {fam.label} has instances {[l for l, _ in instances]}")
        if len(instances) > 1:
            raise UsageError(f"family {fam.label} needs an instance, one of {[l for l, _ in instances]}")
        return instances[0][1]
    pres = load_presentation(target)
    if pres.choices:
        raise UsageError("presentation has 'choice' lines; pick values with a constraint instead")
    return pres


def _system(args) -> ReductionSystem:
    return _load(args.file).system(interreduce=getattr(args, "interreduce", False))


def _emit_json(payload: dict):
    payload = {"schema_version": SCHEMA_VERSION, **payload}
    print(json.dumps(payload, indent=2, sort_keys=False))


def cmd_nf(args) -> int:
    R = _system(args)
    f = parse_polynomial(args.polynomial, R.alphabet, R.constraints)
    nf = normal_form(f, R)
    if args.json:
        _emit_json({"command": "nf", "input": f.format(R.alphabet), "normal_form": nf.format(R.alphabet)})
    else:
        print(nf.format(R.alphabet))
    return EXIT_OK


def _record_line(d: dict) -> str:
    mark = "trivial" if d["trivial"] else "NONTRIVIAL"
    return (
        f"[pass {d['iteration']}] {d['kind']} {d['ambiguity']} (rules {d['left_rule']},{d['right_rule']}): {mark}\n"
        f"    raw: {d['raw']}\n    nf:  {d['normal_form']}"
    )


def cmd_certify(args) -> int:
    R = _system(args)
    ok, records = certify(R)
    rows = [r.to_dict(R) for r in records]
    if args.json:
        _emit_json({"command": "certify", "gs_basis": ok, "rules": R.format(), "compositions": rows})
    else:
        for i, r in enumerate(R.format()):
            print(f"f{i} = {r}")
        for d in rows:
            print(_record_line(d))
        print(f"{len(rows)} compositions, {sum(not d['trivial'] for d in rows)} nontrivial")
        print("GS basis" if ok else "not a GS basis")
    return EXIT_OK if ok else EXIT_NOT_GS


def cmd_complete(args) -> int:
    R = _system(args)
    limits = Limits(args.max_iter, args.max_deg, args.max_rules)
    t0 = time.perf_counter()
    res = complete(R, limits, certificates=False, strategy=args.strategy)
    seconds = time.perf_counter() - t0
    alpha = R.alphabet
    if args.output:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(format_presentation(alpha, R.constraints, res.basis.rules))
    if args.json:
        _emit_json({
            "command": "complete",
            "status": res.status,
            "reason": res.reason,
            "iterations": res.iterations,
            "basis": res.basis.format(),
            "added": [f.format(alpha) for f in res.added],
            "trace": [r.to_dict(res.basis) for r in res.trace] if args.trace else [],
            "seconds": round(seconds, 4),
        })
    else:
        print(f"status: {res.status}{' (' + res.reason + ')' if res.reason else ''}")
        print(f"passes: {res.iterations}")
        print(f"basis ({len(res.basis)}):")
        for r in res.basis.format():
            print(f"  {r}")
        print(f"added ({len(res.added)}):")
        for f in res.added:
            print(f"  {f.format(alpha)}")
        if args.trace:
            for rec in res.trace:
                print(_record_line(rec.to_dict(res.basis)))
    return EXIT_OK if res.certified else EXIT_BUDGET


def cmd_irr(args) -> int:
    R = _system(args)
    words = irr_words(R, args.max_deg)
    by_degree: dict = {}
    for w in words:
        by_degree.setdefault(len(w), []).append(R.alphabet.format_word(w))
    if args.json:
        _emit_json({
            "command": "irr",
            "max_degree": args.max_deg,
            "count": len(words),
            "counts_by_degree": [len(by_degree.get(d, [])) for d in range(args.max_deg + 1)],
            "words": [R.alphabet.format_word(w) for w in words],
        })
    else:
        for d in range(args.max_deg + 1):
            ws = by_degree.get(d, [])
            print(f"degree {d} ({len(ws)}): {' '.join(ws)}")
        print(f"total: {len(words)}")
    return EXIT_OK


def cmd_pbw(args) -> int:
    R = _system(args)
    rep = pbw_check(R)
    if args.json:
        _emit_json({
            "command": "pbw",
            "shape_ok": rep.shape_ok,
            "pbw": rep.pbw,
            "reasons": list(rep.reasons),
            "flags": list(rep.flags),
        })
    else:
        print(f"shape_ok: {str(rep.shape_ok).lower()}")
        print(f"pbw: {str(rep.pbw).lower()}")
        for r in rep.reasons:
            print(f"  reason: {r}")
        for f in rep.flags:
            print(f"  note: {f}")
    return EXIT_OK if rep.pbw else EXIT_NOT_GS


def cmd_families(args) -> int:
    labels = None if args.all or not args.label else [l.upper() for l in args.label]
    limits = Limits(args.max_iter, args.max_deg, args.max_rules)
    t0 = time.perf_counter()
    reports = verify_all(limits, labels, jobs=args.jobs, complete_hard=args.complete)
    seconds = time.perf_counter() - t0
    if args.json:
        _emit_json({"command": "families", "seconds": round(seconds, 4), "families": [r.to_dict() for r in reports]})
    else:
        header = f"{'family':<10} {'status':<20} {'rules':>5} {'added':>5} {'nontriv':>7} {'pbw':<5} {'table':<5}"
        print(header)
        print("-" * len(header))
        for r in reports:
            pbw = "-" if r.pbw is None else str(r.pbw).lower()
            table = "yes" if r.expected_finite else "no"
            print(f"{r.name:<10} {r.status:<20} {r.basis_size:>5} {r.added:>5} {r.nontrivial:>7} {pbw:<5} {table:<5}"
                  + (f"  {r.error}" if r.error else ""))
        n_cert = sum(r.status == "Certified" for r in reports)
        print(f"{len(reports)} reports, {n_cert} Certified, {seconds:.2f}s")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="gsbasis", description="Groebner-Shirshov bases for finitely presented algebras.")
    p.add_argument("-v", "--verbose", action="count", default=0)
    sub = p.add_subparsers(dest="command", required=True)

    def with_file(name, help_text):
        sp = sub.add_parser(name, help=help_text)
        sp.add_argument("file", help="presentation file or family:X[:instance]")
        sp.add_argument("--interreduce", action="store_true", help="interreduce the relations first")
        sp.add_argument("--json", action="store_true", help="structured output")
        return sp

    def with_limits(sp):
        d = Limits()
        sp.add_argument("--max-iter", type=int, default=d.max_iterations)
        sp.add_argument("--max-deg", type=int, default=d.max_degree)
        sp.add_argument("--max-rules", type=int, default=d.max_rules)

    sp = with_file("nf", "normal form of a polynomial")
    sp.add_argument("polynomial")
    sp.set_defaults(func=cmd_nf)

    sp = with_file("complete", "run Shirshov completion")
    with_limits(sp)
    sp.add_argument("--strategy", choices=("batch", "smallest"), default="batch")
    sp.add_argument("--trace", action="store_true", help="print every composition")
    sp.add_argument("-o", "--output", help="write the basis as a presentation file")
    sp.set_defaults(func=cmd_complete)

    sp = with_file("certify", "check whether the relations form a GS basis")
    sp.set_defaults(func=cmd_certify)

    sp = with_file("irr", "irreducible words up to a degree")
    sp.add_argument("--max-deg", type=int, default=3)
    sp.set_defaults(func=cmd_irr)

    sp = with_file("pbw", "check the PBW shape and GS property")
    sp.set_defaults(func=cmd_pbw)

    sp = sub.add_parser("families", help="verify the built-in families")
    g = sp.add_mutually_exclusive_group()
    g.add_argument("--all", action="store_true")
    g.add_argument("--label", action="append", help="family label (repeatable)")
    sp.add_argument("--jobs", type=int, default=1)
    sp.add_argument("--complete", action="store_true", help="run completion on families that fail the first pass")
    sp.add_argument("--json", action="store_true")
    with_limits(sp)
    sp.set_defaults(func=cmd_families)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.WARNING - 10 * min(args.verbose, 2), format="%(levelname)s %(name)s: %(message)s")
    try:
        return args.func(args)
    except PresentationError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except NotProvablyNonzero as exc:
        print(f"coefficient error: {exc}", file=sys.stderr)
        return EXIT_NONZERO
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE


if __name__ == "__main__":
    sys.exit(main())
