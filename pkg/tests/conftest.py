import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    reports = [
        r
        for key in ("passed", "failed")
        for r in terminalreporter.stats.get(key, [])
        if "test_acceptance" in r.nodeid and r.when == "call"
    ]
    if not reports:
        return
    terminalreporter.write_line("")
    terminalreporter.write_line("acceptance criteria:")
    for r in sorted(reports, key=lambda r: r.nodeid):
        name = r.nodeid.split("::")[-1].replace("test_criterion_", "").replace("_", " ")
        terminalreporter.write_line(f"  {'PASS' if r.passed else 'FAIL'}: {name}")

from argsim.backends import ExactMatchProvider, LookupTableProvider
from argsim.core import SimConfig

FIXTURES = Path(__file__).parent.parent / "fixtures"


@pytest.fixture(scope="session")
def fixtures_dir() -> Path:
    return FIXTURES


@pytest.fixture
def eq_provider():
    return ExactMatchProvider()


@pytest.fixture
def paper_lookup():
    return LookupTableProvider.from_pairs([("dog", "monkey", 0.466)])


@pytest.fixture
def paper_config(paper_lookup):
    """The running configuration: lambda 0.8, Dice, average pair weights."""
    return SimConfig(provider=paper_lookup, lam=0.8, eta=0.5,
                     tversky_preset="dic", pair_weight_aggregator="avg")


@pytest.fixture
def eq_config(eq_provider):
    return SimConfig(provider=eq_provider, lam=0.8, eta=0.5,
                     tversky_preset="dic", pair_weight_aggregator="avg")
