from fractions import Fraction

import pytest


def exact_bargain(gov_ideal, t_f):
    """Closed-form bargain in rational arithmetic: (t*, m_min, m_max, m*)."""
    g, f = Fraction(gov_ideal), Fraction(t_f)
    t = (g + f) / 2
    m_max = (g - f) ** 2 - (t - f) ** 2
    m_min = (g - t) ** 2
    return t, m_min, m_max, (m_max + m_min) / 2


@pytest.fixture
def exact():
    return exact_bargain


ACCEPTANCE_LINES: list[str] = []


@pytest.fixture
def criterion():
    """Record one PASS/FAIL line per acceptance criterion."""
    def _report(label: str, ok: bool, detail: str = "") -> None:
        line = f"[{'PASS' if ok else 'FAIL'}] {label}" + (f" -- {detail}" if detail else "")
        ACCEPTANCE_LINES.append(line)
        print(line)
        assert ok, line
    return _report


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
