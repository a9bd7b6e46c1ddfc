import os
from fractions import Fraction
from pathlib import Path

import pytest
from hypothesis import strategies as st

from fuzzysoft.algebra import FuzzySoftSet, SpaceSignature
from fuzzysoft.cli import read_document
from fuzzysoft.topology import generate_from_subbasis

GOLDEN = Path(__file__).parent / "golden"
UPDATE = os.environ.get("FUZZYSOFT_UPDATE_GOLDEN") == "1"


def check_golden(name: str, text: str) -> None:
    """Compare ``text`` with tests/golden/NAME; rewrite it when
    FUZZYSOFT_UPDATE_GOLDEN=1."""
    path = GOLDEN / name
    if UPDATE or not path.exists():
        if not UPDATE:
            pytest.fail(f"missing golden file {name}; run with FUZZYSOFT_UPDATE_GOLDEN=1")
        path.write_text(text, encoding="utf-8")
    assert text == path.read_text(encoding="utf-8"), f"golden mismatch: {name}"


@pytest.fixture(scope="session")
def example_doc():
    return read_document("bundled:mahanta_example")


@pytest.fixture(scope="session")
def example_tau(example_doc):
    return example_doc.space()


@pytest.fixture(scope="session")
def crisp():
    """U = {a, b, c}, one parameter, topology generated by {a} and {b}."""
    sig = SpaceSignature(["a", "b", "c"], ["e"])
    a = sig.make([1, 0, 0])
    b = sig.make([0, 1, 0])
    return sig, generate_from_subbasis([a, b], sig)


def crisp_set(sig, members: str) -> FuzzySoftSet:
    return sig.make([1 if x in members else 0 for x in sig.universe])


@st.composite
def signatures(draw, max_objects=3, max_parameters=2, max_denominator=4):
    d = draw(st.integers(1, max_denominator))
    n = draw(st.integers(1, max_objects))
    m = draw(st.integers(1, max_parameters))
    ambient = [Fraction(draw(st.integers(0, d)), d) for _ in range(n * m)]
    sig = SpaceSignature([f"x{i}" for i in range(n)], [f"e{j}" for j in range(m)], ambient)
    return sig, d


def subsets_of(sig: SpaceSignature, d: int):
    return st.tuples(*(st.integers(0, int(a * d)) for a in sig.ambient.grades)).map(
        lambda nums: FuzzySoftSet(sig, [Fraction(k, d) for k in nums])
    )


@st.composite
def spaces(draw, max_subbasis=3):
    """(signature, grid denominator, topology) with a random subbasis."""
    sig, d = draw(signatures())
    family = draw(st.lists(subsets_of(sig, d), max_size=max_subbasis))
    return sig, d, generate_from_subbasis(family, sig)


_CRITERIA: dict[int, list] = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(n, title): acceptance criterion number and title")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    mark = item.get_closest_marker("criterion")
    if mark is None or rep.when != "call" and not (rep.when == "setup" and rep.failed):
        return
    n, title = mark.args
    entry = _CRITERIA.setdefault(n, [title, []])
    entry[1].append((item.name, rep.outcome))


def pytest_terminal_summary(terminalreporter):
    if not _CRITERIA:
        return
    tr = terminalreporter
    tr.section("acceptance criteria")
    for n in sorted(_CRITERIA):
        title, results = _CRITERIA[n]
        failed = [name for name, outcome in results if outcome != "passed"]
        verdict = "PASS" if not failed else "FAIL"
        tr.write_line(f"criterion {n} ({title}): {verdict}" + (f"  failing: {', '.join(failed)}" if failed else ""))
