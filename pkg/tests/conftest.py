import mpmath as mp
import pytest
from hypothesis import HealthCheck, settings

from umbra.numerics import set_precision

settings.register_profile(
    "umbra",
    deadline=None,
    max_examples=40,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("umbra")


@pytest.fixture(autouse=True)
def _precision_30():
    previous = mp.mp.dps
    set_precision(30)
    yield
    mp.mp.dps = previous


def close(a, b, tol):
    return abs(mp.mpmathify(a) - mp.mpmathify(b)) < mp.mpf(tol)


_CRITERIA: dict[int, tuple[bool, str]] = {}


@pytest.fixture
def criterion(capsys):
    """record(n, ok, detail): prints one status line per acceptance criterion."""

    def record(n: int, ok: bool, detail: str = "") -> bool:
        _CRITERIA[n] = (ok, detail)
        with capsys.disabled():
            print(f"\ncriterion {n}: {'PASS' if ok else 'FAIL'}  {detail}")
        return ok

    return record


def pytest_terminal_summary(terminalreporter):
    if not _CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(_CRITERIA):
        ok, detail = _CRITERIA[n]
        terminalreporter.write_line(f"criterion {n}: {'PASS' if ok else 'FAIL'}  {detail}")
