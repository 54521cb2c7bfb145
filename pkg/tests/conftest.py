from fractions import Fraction

import pytest
import sympy as sp

from m1n_chi.series import MultiSeries


def sympy_expand(expr, xs, caps) -> MultiSeries:
    """Truncated Taylor expansion of a sympy expression, one variable at a time.

    Shares no code with the package's series arithmetic, so it serves as an
    oracle for closed forms typed in independently.
    """
    e = expr
    for x, c in zip(xs, caps):
        e = sp.series(e, x, 0, c + 1).removeO()
    poly = sp.Poly(sp.expand(e), *xs)
    terms = {}
    for mono, c in poly.terms():
        if all(m <= cap for m, cap in zip(mono, caps)):
            c = sp.Rational(c)
            terms[mono] = Fraction(int(c.p), int(c.q))
    return MultiSeries(caps, terms)


@pytest.fixture
def expand():
    return sympy_expand


@pytest.fixture(autouse=True)
def _no_ambient_cache(monkeypatch):
    monkeypatch.delenv("CHI_CACHE_DIR", raising=False)


def pytest_configure(config):
    config.addinivalue_line("markers", "acceptance: exit criteria")


def pytest_terminal_summary(terminalreporter):
    rows = {}
    for outcome in ("passed", "failed", "error"):
        for rep in terminalreporter.stats.get(outcome, []):
            nodeid = getattr(rep, "nodeid", "")
            if "test_acceptance.py::test_criterion_" not in nodeid or rep.when != "call" and outcome != "error":
                continue
            name = nodeid.split("::test_")[1]
            number = int(name.split("_")[1])
            rows[name] = (number, "PASS" if outcome == "passed" else "FAIL")
    if not rows:
        return
    terminalreporter.section("acceptance criteria")
    for name, (_, status) in sorted(rows.items(), key=lambda kv: (kv[1][0], kv[0])):
        terminalreporter.write_line(f"{status}  {name}")
