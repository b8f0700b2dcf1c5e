import os
import sys
import time

import pytest
from hypothesis import HealthCheck, settings

sys.path.insert(0, os.path.dirname(__file__))

settings.register_profile("default", deadline=None, suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")


@pytest.fixture(scope="session")
def associator():
    from propquant.associator import solve_associator

    return solve_associator(3)


@pytest.fixture(scope="session")
def hopf(associator):
    """Universal structure at cobracket degree 2 on source cells of total degree <= 3, with its report."""
    from propquant.quantize import QuantizeConfig, QuantizedHopf

    t0 = time.time()
    H = QuantizedHopf(associator.phi, QuantizeConfig(2, 3, associator.sign))
    H.report = H.check_hopf()
    H.build_seconds = time.time() - t0
    return H


CLI_RUNS = (
    ("a.json", ["solve-associator", "--max-degree", "3", "--out", "{d}/a.json"]),
    ("h.json", ["quantize", "--degree", "2", "--sym-cap", "3", "--associator", "{d}/a.json", "--out", "{d}/h.json"]),
    ("uq.json", ["eval", "--bialgebra", "borel2", "--h-order", "2", "--sym-cap", "3", "--hopf", "{d}/h.json",
                 "--out", "{d}/uq.json"]),
    ("r.json", ["qyb", "--degree", "2", "--associator", "{d}/a.json", "--out", "{d}/r.json"]),
)


@pytest.fixture(scope="session")
def cli_artifacts(tmp_path_factory):
    """One in-process run of the artifact pipeline: name -> (path, exit code)."""
    from propquant.cli import main

    d = tmp_path_factory.mktemp("cli")
    out = {}
    for name, argv in CLI_RUNS:
        code = main([a.format(d=d) for a in argv])
        out[name] = (d / name, code)
    return out


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    if mod is not None and mod.RESULTS:
        terminalreporter.section("acceptance criteria")
        for k in sorted(mod.RESULTS):
            terminalreporter.write_line(mod.RESULTS[k])
