import numpy as np
import pytest

from sphdes.catalog import PLATONIC_NAMES, default_product_spec, platonic, product_design

ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)


@pytest.fixture(scope="session")
def platonic_designs():
    return {name: platonic(name) for name in PLATONIC_NAMES}


@pytest.fixture(scope="session")
def product_designs():
    return {d: product_design(default_product_spec(d)) for d in range(1, 8)}


@pytest.fixture
def rng():
    return np.random.default_rng(12345)
