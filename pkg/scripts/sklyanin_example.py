"""Complete the three-relation example with a^3 = -1 and print every composition."""

import argparse
from dataclasses import dataclass
from pathlib import Path

from gsbasis.presentation import load_presentation
from gsbasis.shirshov import Limits, complete

DEFAULT_FILE = Path(__file__).resolve().parent.parent / "examples_data" / "sklyanin.txt"


@dataclass
class ExampleConfig:
    path: str = str(DEFAULT_FILE)
    strategy: str = "batch"
    max_iterations: int = 10


def run(cfg: ExampleConfig):
    R = load_presentation(cfg.path).system()
    res = complete(R, Limits(max_iterations=cfg.max_iterations), strategy=cfg.strategy)
    alpha = res.basis.alphabet
    for rec in res.trace:
        d = rec.to_dict(res.basis)
        print(f"pass {d['iteration']}: ({d['left_rule']},{d['right_rule']}) on {d['ambiguity']} -> {d['normal_form']}")
    print(f"\n{res.status} after {res.iterations} passes; basis:")
    for rule in res.basis.rules:
        print(f"  {rule.format(alpha)}")
    return res


def main():
    p = argparse.ArgumentParser(description=__doc__)
    p.add_argument("--file", default=str(DEFAULT_FILE))
    p.add_argument("--strategy", choices=("batch", "smallest"), default="batch")
    args = p.parse_args()
    run(ExampleConfig(path=args.file, strategy=args.strategy))


if __name__ == "__main__":
    main()
