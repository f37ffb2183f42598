import pytest

from isw.corpus import standard_corpus

# criterion -> (passed, note); filled by test_acceptance, printed at the end
ACCEPTANCE = {}


@pytest.fixture(scope="session")
def corpus():
    return standard_corpus()


def record(criterion, passed, note=""):
    ACCEPTANCE[criterion] = (passed, note)


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    tr = terminalreporter
    tr.section("acceptance criteria")
    for key in sorted(ACCEPTANCE, key=lambda k: (int("".join(c for c in k if c.isdigit())), k)):
        passed, note = ACCEPTANCE[key]
        line = f"criterion {key}: {'PASS' if passed else 'FAIL'}"
        tr.write_line(line + (f"  ({note})" if note else ""))
