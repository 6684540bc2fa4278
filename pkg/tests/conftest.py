import pytest
from hypothesis import HealthCheck, settings

settings.register_profile("default", deadline=None, suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")

_ACCEPTANCE: list[tuple[str, bool, str]] = []


@pytest.fixture
def criterion():
    """Record one acceptance line: ``criterion(label, passed, detail)``."""

    def record(label: str, passed: bool, detail: str = "") -> bool:
        _ACCEPTANCE.append((label, bool(passed), detail))
        return passed

    return record


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for label, passed, detail in _ACCEPTANCE:
        status = "PASS" if passed else "FAIL"
        terminalreporter.write_line(f"[{status}] {label}" + (f"  ({detail})" if detail else ""))
