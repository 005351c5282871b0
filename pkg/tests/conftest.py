import mpmath
import pytest

from gammaseq import _backend

# acceptance lines collected by tests/test_acceptance.py
ACCEPTANCE = {}


@pytest.fixture(scope="session")
def mp():
    mpmath.mp.dps = 40
    return mpmath


@pytest.fixture(params=_backend.available())
def backend(request):
    return _backend.get(request.param)


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for k in sorted(ACCEPTANCE):
        ok, detail = ACCEPTANCE[k]
        terminalreporter.write_line(f"criterion {k:2d}: {'PASS' if ok else 'FAIL'}  {detail}")
