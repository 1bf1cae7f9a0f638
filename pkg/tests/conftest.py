import functools

import pytest

from nudirac.oracle import OracleConfig, find_levels
from nudirac.spectrum import solve
from nudirac.suite import validation_suite

SUITE = {e.name: e for e in validation_suite()}

# Shooting-oracle energies (approximated centrifugal term), frozen from an
# independent Numerov run on a log grid; keyed by (suite entry, n).
ORACLE_E = {
    ("morse-pseudospin-a", 0): -2.4692998011830571,
    ("morse-pseudospin-a", 1): -1.8210634612682093,
    ("morse-pseudospin-a", 2): -1.4069842318569008,
    ("morse-pseudospin-b", 0): -3.4372301688574058,
    ("morse-pseudospin-b", 1): -2.5439969931922604,
    ("morse-spin-a", 1): 0.39339637157455337,
    ("morse-spin-a", 2): 0.77375584995487412,
    ("morse-spin-b", 1): 0.15144570651233696,
    ("morse-spin-b", 2): 0.74990993468321021,
    ("morse-spin-b", 3): 1.1700243182381567,
    ("pt-pseudospin", 0): -2.7793496664021582,
    ("pt-pseudospin", 1): -1.7192235935874558,
    ("pt-spin", 0): 0.45773791286860155,
    ("pt-spin", 1): 1.8458470953853023,
    ("hyper-pseudospin-k1", 0): -4.4921111262700339,
    ("hyper-pseudospin-k2", 0): -3.2806328938579603,
    ("hyper-pseudospin-k2", 1): -3.7243359520277468,
    ("hyper-spin-k1", 0): 3.2016905603359183,
    ("hyper-spin-k1", 1): 4.3510041448772574,
    ("hyper-spin-k1", 2): 4.8723908493729446,
    ("hyper-spin-k2", 0): 3.7827768127799781,
    ("hyper-spin-k2", 1): 4.6090648823216434,
}


@functools.lru_cache(maxsize=None)
def oracle_levels(name):
    e = SUITE[name]
    return tuple(find_levels(e.problem, OracleConfig(), max(e.levels), solver_cfg=e.solver))


@functools.lru_cache(maxsize=None)
def solved(name):
    """{n: [EnergyLevel, ...]} for every checked level of a suite entry."""
    e = SUITE[name]
    return {p.state.n: solve(p, e.solver) for p in e.problems()}


def suite_levels():
    """(name, problem, level) for every level the analytic solver returns."""
    out = []
    for name, e in SUITE.items():
        for p in e.problems():
            for lv in solved(name)[p.state.n]:
                out.append((name, p, lv))
    return out


@pytest.fixture(scope="session")
def suite():
    return SUITE


ACCEPTANCE_LINES = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_LINES:
        return
    terminalreporter.section("acceptance criteria")
    for k in sorted(ACCEPTANCE_LINES):
        terminalreporter.write_line(ACCEPTANCE_LINES[k])
