import pytest
from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from cartier.fq import make_field
from cartier.series import TruncatedLaurent

settings.register_profile("default", max_examples=60, deadline=None,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")

FIELDS = [make_field(2), make_field(3), make_field(2, 2)]
SMALL_FIELDS = [make_field(2), make_field(3)]


@st.composite
def series(draw, fields=SMALL_FIELDS, lo=0, min_lo=None, prec=24):
    F = draw(st.sampled_from(fields))
    if min_lo is not None:
        lo = draw(st.integers(min_lo, 0))
    cs = draw(st.lists(st.integers(0, F.q - 1), min_size=prec - lo, max_size=prec - lo))
    return TruncatedLaurent(F, cs, lo, prec)


def series_over(F, lo=0, prec=24):
    return st.lists(st.integers(0, F.q - 1), min_size=prec - lo, max_size=prec - lo).map(
        lambda cs: TruncatedLaurent(F, cs, lo, prec))


def polys_over(F, max_deg=8):
    return st.lists(st.integers(0, F.q - 1), max_size=max_deg + 1).map(
        lambda cs: TruncatedLaurent(F, cs, 0, None))


# acceptance summary: one line per criterion

_criteria = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(number, title, limit): acceptance criterion")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    mark = item.get_closest_marker("criterion")
    if mark is None:
        return
    num, title, limit = mark.args
    if rep.when == "call" or (rep.when == "setup" and rep.failed):
        _criteria[num] = (title, limit, rep.passed, rep.duration)


def pytest_terminal_summary(terminalreporter):
    if not _criteria:
        return
    tr = terminalreporter
    tr.section("acceptance criteria")
    for num in sorted(_criteria):
        title, limit, ok, dur = _criteria[num]
        tr.write_line(f"criterion {num:2d}: {'PASS' if ok else 'FAIL'}  {title}  ({dur:.2f}s, limit {limit}s)")
