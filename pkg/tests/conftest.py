from pathlib import Path

import pytest
from hypothesis import HealthCheck, settings

from gsbasis.families import builtin_catalog
from gsbasis.presentation import load_presentation, parse_presentation

settings.register_profile(
    "default",
    deadline=None,
    suppress_health_check=[HealthCheck.too_slow, HealthCheck.data_too_large],
)
settings.load_profile("default")

ROOT = Path(__file__).resolve().parent.parent
SKLYANIN = ROOT / "examples_data" / "sklyanin.txt"

COMMUTATIVE_4 = """
generators x1 < x2 < x3 < x4
relation x2*x1 - x1*x2
relation x3*x1 - x1*x3
relation x4*x1 - x1*x4
relation x3*x2 - x2*x3
relation x4*x2 - x2*x4
relation x4*x3 - x3*x4
"""


@pytest.fixture(scope="session")
def sklyanin():
    return load_presentation(SKLYANIN)


@pytest.fixture(scope="session")
def sklyanin_file():
    return str(SKLYANIN)


@pytest.fixture(scope="session")
def commutative4():
    return parse_presentation(COMMUTATIVE_4)


def certified_family_systems():
    """(name, interreduced system) for every instance of the twelve checkmarked families."""
    from gsbasis.shirshov import interreduce

    out = []
    for fam in builtin_catalog():
        if not fam.expected_finite:
            continue
        for label, pres in fam.instances():
            out.append((f"{fam.label}{'[' + label + ']' if label else ''}", interreduce(pres.system())))
    return out


def certified_corpus():
    """Every certified system used by the property suites: (name, system)."""
    from gsbasis.shirshov import complete

    out = certified_family_systems()
    sk = load_presentation(SKLYANIN).system()
    out.append(("sklyanin-completed", complete(sk).basis))
    out.append(("commutative4", parse_presentation(COMMUTATIVE_4).system()))
    return out


_CORPUS = None


@pytest.fixture(scope="session")
def corpus():
    global _CORPUS
    if _CORPUS is None:
        _CORPUS = certified_corpus()
    return _CORPUS


def pytest_terminal_summary(terminalreporter):
    import sys

    module = sys.modules.get("test_acceptance")
    results = getattr(module, "RESULTS", None)
    if results:
        terminalreporter.section("acceptance criteria")
        for n in sorted(results):
            terminalreporter.write_line(results[n])
