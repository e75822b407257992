import numpy as np
import pytest

from arkit import morcat as mc
from arkit import repmod as rm
from arkit.algebra import example_three_vertex, nakayama

SEEDS = [0, 1, 2, 3, 4]


@pytest.fixture(scope="session")
def kx2():
    return nakayama(1, 2)


@pytest.fixture(scope="session")
def kx3():
    return nakayama(1, 3)


@pytest.fixture(scope="session")
def l22():
    return nakayama(2, 2)


@pytest.fixture(scope="session")
def three_vertex():
    return example_three_vertex()


def random_chains(alg, n, count, seed, max_summands=2):
    rng = np.random.default_rng(seed)
    return [mc.random_chain(alg, n, rng, max_summands) for _ in range(count)]


def random_mono_chain(alg, n, rng, max_summands=2):
    """A random object of the monomorphism category, via Mono of a random chain."""
    return mc.mono(mc.random_chain(alg, n, rng, max_summands))


def uniserial(alg, v, length):
    return rm.uniserial(alg, v, length)


def pytest_terminal_summary(terminalreporter):
    """One line per acceptance criterion, taken from the ``criterion`` property of each test."""
    rows = {}
    for status in ("passed", "failed", "error"):
        for rep in terminalreporter.getreports(status):
            props = dict(getattr(rep, "user_properties", []))
            if "criterion" not in props:
                continue
            ok = rep.passed and rows.get(props["criterion"], "PASS") == "PASS"
            rows[props["criterion"]] = "PASS" if ok else "FAIL"
    if rows:
        terminalreporter.section("acceptance criteria")
        for name in sorted(rows):
            terminalreporter.write_line(f"criterion {name}: {rows[name]}")
