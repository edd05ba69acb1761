import pytest

from pentagon.catalog import hopf_example
from pentagon.classifier import enumerate_solutions
from pentagon.groups import cyclic


@pytest.fixture(scope="session")
def corpus2():
    return enumerate_solutions(2)


@pytest.fixture(scope="session")
def corpus3():
    return enumerate_solutions(3)


@pytest.fixture(scope="session")
def corpus(corpus2, corpus3):
    return [s for s in enumerate_solutions(1)] + corpus2 + corpus3


@pytest.fixture(scope="session")
def hx_z2():
    return hopf_example(cyclic(2), cyclic(2))


def pytest_terminal_summary(terminalreporter):
    import sys
    mod = sys.modules.get("test_acceptance") or sys.modules.get("tests.test_acceptance")
    results = getattr(mod, "RESULTS", None)
    if not results:
        return
    terminalreporter.section("acceptance criteria")
    for n in range(1, 12):
        if n in results:
            terminalreporter.write_line("criterion %d: %s" % (n, "PASS" if results[n] else "FAIL"))
        else:
            terminalreporter.write_line("criterion %d: NOT RUN" % n)
