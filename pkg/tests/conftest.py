import json

import numpy as np
import pytest

from regorbit import data_path
from regorbit.scen import assemble_scenario, parse_scenario

# filled by tests/test_acceptance.py, printed at the end of the run
ACCEPTANCE: dict[int, tuple[bool, str]] = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(ACCEPTANCE):
        ok, detail = ACCEPTANCE[n]
        terminalreporter.write_line(f"criterion {n}: {'PASS' if ok else 'FAIL'}  {detail}")


def load_json(name):
    with open(data_path(name)) as fh:
        return json.load(fh)


_SCENARIOS = {}


def scenario(name):
    if name not in _SCENARIOS:
        _SCENARIOS[name] = assemble_scenario(parse_scenario(load_json(f"{name}.json")))
    return _SCENARIOS[name]


@pytest.fixture
def rng():
    return np.random.default_rng(12345)
