from __future__ import annotations

from hypothesis import HealthCheck, settings

settings.register_profile("default", max_examples=60, deadline=None,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")


# one summary line per acceptance criterion
_ACCEPT: dict[str, tuple[str, str]] = {}


def pytest_runtest_logreport(report):
    if "test_acceptance.py::test_criterion_" not in report.nodeid:
        return
    if report.when == "call" or (report.when == "setup" and report.outcome != "passed"):
        name = report.nodeid.split("::")[-1][len("test_criterion_"):]
        num, _, label = name.partition("_")
        _ACCEPT[num] = ("PASS" if report.outcome == "passed" else "FAIL", label.replace("_", " "))


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPT:
        return
    terminalreporter.section("acceptance criteria")
    for num in sorted(_ACCEPT, key=int):
        status, label = _ACCEPT[num]
        terminalreporter.write_line(f"criterion {int(num):2d}: {status}  {label}")
