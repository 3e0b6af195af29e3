import pytest

from deak.calculus import builtin
from deak.corpus import load_decls


@pytest.fixture(scope="session")
def decls():
    return load_decls()


@pytest.fixture(scope="session")
def prime(decls):
    return builtin("deak-prime", decls)


@pytest.fixture(scope="session")
def legacy(decls):
    return builtin("deak-legacy", decls)


_ACCEPTANCE: list = []


@pytest.fixture(scope="session")
def acceptance_lines():
    return _ACCEPTANCE


def pytest_terminal_summary(terminalreporter):
    if _ACCEPTANCE:
        terminalreporter.section("acceptance criteria")
        for line in sorted(_ACCEPTANCE):
            terminalreporter.write_line(line)
