import numpy as np
import pytest

from isac_intrusion import RadioConfig, ScenarioConfig


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


@pytest.fixture
def quiet_radio():
    return RadioConfig(sigma_fading=0.0, sigma_shadowing=0.0)


@pytest.fixture
def quiet_scenario(quiet_radio):
    return ScenarioConfig(radio=quiet_radio)


def pytest_terminal_summary(terminalreporter):
    from . import test_acceptance

    if not test_acceptance.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for name, ok, detail in test_acceptance.RESULTS:
        terminalreporter.write_line(f"{'PASS' if ok else 'FAIL'}  {name}: {detail}")
