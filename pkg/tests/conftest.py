import random
from collections import OrderedDict
from pathlib import Path

import pytest
import sympy

from skeintorus.scalars import GroundScalar

FIXTURES = Path(__file__).parent / "fixtures"
SEED = 20240611

V = sympy.Symbol("v")


def to_sympy(s: GroundScalar):
    return sum((c * V ** e for e, c in s.items()), sympy.Integer(0))


def sympy_reduce(expr, m):
    """Canonical remainder of a Laurent polynomial in v modulo Phi_m."""
    expr = sympy.expand(expr)
    if expr == 0:
        return sympy.Integer(0)
    low = min(sympy.Poly(sympy.expand(expr * V ** 400), V).monoms())[0] - 400
    shift = -low if low < 0 else 0
    # v^-1 = v^(m-1) at a primitive m-th root of unity
    shift = (shift + m - 1) // m * m
    poly = sympy.Poly(sympy.expand(expr * V ** shift), V)
    return sympy.rem(poly, sympy.Poly(sympy.cyclotomic_poly(m, V), V)).as_expr()


@pytest.fixture
def rng():
    return random.Random(SEED)


# ------------------------------------------------------------ acceptance log

CRITERIA = OrderedDict()


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(n, title): acceptance criterion a test belongs to")


def pytest_runtest_makereport(item, call):
    mark = item.get_closest_marker("criterion")
    if mark is None or call.when != "call" and not (call.when == "setup" and call.excinfo):
        return
    n, title = mark.args
    entry = CRITERIA.setdefault(n, {"title": title, "ok": True, "count": 0})
    entry["count"] += 1
    if call.excinfo is not None:
        entry["ok"] = False


def pytest_terminal_summary(terminalreporter):
    if not CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(CRITERIA):
        e = CRITERIA[n]
        status = "PASS" if e["ok"] else "FAIL"
        terminalreporter.write_line(f"{status} criterion {n:2d}: {e['title']} ({e['count']} tests)")
