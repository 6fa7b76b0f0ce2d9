import re

import pytest

from cpsfr.bundle import bundled_domain, bundled_scenario
from cpsfr.language import parse_domain, parse_scenario

# acceptance criterion label -> outcome, filled in by the log hook below
_acceptance_results = {}


def pytest_runtest_logreport(report):
    if report.when != "call" or "test_acceptance" not in report.nodeid:
        return
    name = report.nodeid.rsplit("::", 1)[-1]
    if re.match(r"test_c\d+_", name):
        _acceptance_results[name] = report.outcome


def pytest_terminal_summary(terminalreporter):
    if not _acceptance_results:
        return
    terminalreporter.section("acceptance criteria")
    for name in sorted(_acceptance_results):
        body = name[len("test_c"):]
        num, _, rest = body.partition("_")
        status = "PASS" if _acceptance_results[name] == "passed" else "FAIL"
        terminalreporter.write_line(
            f"criterion {num} ({rest.replace('_', ' ')}): {status}"
        )


def _domain(name):
    spec = parse_domain(bundled_domain(name), f"{name}.cpsf")
    assert not isinstance(spec, list), spec
    return spec


def _scenario(name, spec):
    sc = parse_scenario(bundled_scenario(name), spec, f"{name}.cpss")
    assert not isinstance(sc, list), sc
    return sc


@pytest.fixture(scope="session")
def lkas():
    return _domain("lkas")


@pytest.fixture(scope="session")
def lkas_patch():
    return _domain("lkas_patch")


@pytest.fixture(scope="session")
def design1(lkas):
    return _scenario("design1", lkas)


@pytest.fixture(scope="session")
def partial1(lkas):
    return _scenario("partial1", lkas)


@pytest.fixture(scope="session")
def attacked(lkas):
    return _scenario("attacked", lkas)


@pytest.fixture(scope="session")
def attacked_patch(lkas_patch):
    return _scenario("attacked", lkas_patch)
