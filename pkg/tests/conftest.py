import pytest

from congruence_lab.qseries import load_fixture

# criterion number -> (passed, detail); filled by test_acceptance.py
ACCEPTANCE = {}


def record(n, ok, detail=""):
    ACCEPTANCE[n] = (bool(ok), detail)


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(ACCEPTANCE):
        ok, detail = ACCEPTANCE[n]
        terminalreporter.write_line(f"criterion {n}: {'PASS' if ok else 'FAIL'}  {detail}")


@pytest.fixture(scope="session")
def f11():
    return load_fixture("level11", 100000)


@pytest.fixture(scope="session")
def f33():
    return load_fixture("level33", 100000)


@pytest.fixture(scope="session")
def g_mod3(f11, f33):
    """(f_1 - f_2)/3 for the level 11 and level 33 newforms."""
    d = f11 - f33
    assert all(v % 3 == 0 for v in d.coeffs)
    return d.with_coeffs(tuple(v // 3 for v in d.coeffs))
