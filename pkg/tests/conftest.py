import pytest

from semigalois.actions import Signature, validate_action, terminal
from semigalois.monoid import boolean_monoid, cyclic_group, direct_product

ACCEPTANCE_LINES = []


@pytest.fixture
def free_a():
    return Signature.free("a")


@pytest.fixture
def parity(free_a):
    # a swaps the two states
    return validate_action(free_a, [(1, 0)])


@pytest.fixture
def chain(free_a):
    # a: 0 -> 1, 1 -> 1
    return validate_action(free_a, [(1, 1)])


@pytest.fixture
def point(free_a):
    return terminal(free_a)


@pytest.fixture
def c2():
    return cyclic_group(2)


@pytest.fixture
def u2():
    return boolean_monoid()


@pytest.fixture
def klein():
    return direct_product(cyclic_group(2), cyclic_group(2))


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
