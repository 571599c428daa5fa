"""Verify all 26 families and compare the outcome with the table checkmarks.

    python scripts/run_families.py [--jobs 4] [--complete] [--json out.json]
"""

import argparse
import json
import time
from dataclasses import asdict, dataclass
from typing import Optional

from gsbasis.families import EXPECTED_FINITE, verify_all
from gsbasis.shirshov import Limits


@dataclass
class RunConfig:
    jobs: int = 1
    complete_hard: bool = False
    max_iterations: int = 50
    max_degree: int = 12
    max_rules: int = 500
    json_path: Optional[str] = None


def run(cfg: RunConfig) -> list:
    t0 = time.perf_counter()
    limits = Limits(cfg.max_iterations, cfg.max_degree, cfg.max_rules)
    reports = verify_all(limits, jobs=cfg.jobs, complete_hard=cfg.complete_hard)
    seconds = time.perf_counter() - t0
    print(f"{'family':<8} {'status':<20} {'raw':>4} {'pbw':<6} checkmark")
    for r in reports:
        raw = "-" if r.raw_nontrivial is None else r.raw_nontrivial
        pbw = "-" if r.pbw is None else str(r.pbw).lower()
        print(f"{r.name:<8} {r.status:<20} {raw:>4} {pbw:<6} {'yes' if r.expected_finite else ''}")
    certified = sorted({r.label for r in reports if r.status == "Certified" and r.added == 0})
    print(f"\ncertified with no additions: {''.join(certified)}")
    print(f"checkmarked:                 {''.join(sorted(EXPECTED_FINITE))}")
    print(f"{len(reports)} reports in {seconds:.2f}s")
    if cfg.json_path:
        with open(cfg.json_path, "w") as fh:
            json.dump({"config": asdict(cfg), "reports": [r.to_dict() for r in reports]}, fh, indent=2)
    return reports


def main():
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--complete", action="store_true", help="complete families failing the first pass")
    p.add_argument("--json", dest="json_path")
    args = p.parse_args()
    run(RunConfig(jobs=args.jobs, complete_hard=args.complete, json_path=args.json_path))


if __name__ == "__main__":
    main()
