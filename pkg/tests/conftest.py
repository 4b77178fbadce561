import pytest

_results = {}

TITLES = {
    1: "identity suite",
    2: "kernel suite",
    3: "summation suite",
    4: "wave operator decay",
    5: "divergence of P_r phi",
    6: "Poisson/Cauchy identity",
    7: "Clark suite",
    8: "determinism",
}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(n): acceptance criterion the test belongs to")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    marker = item.get_closest_marker("criterion")
    if marker is None or (report.when != "call" and not report.failed):
        return
    entry = _results.setdefault(marker.args[0], {"passed": True, "notes": []})
    entry["passed"] &= report.passed
    note = getattr(item, "acceptance_detail", None)
    if report.when == "call":
        entry["notes"].append(f"{item.name.split('_', 3)[-1]}: {note or ('ok' if report.passed else 'failed')}")


def pytest_terminal_summary(terminalreporter):
    if not _results:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(_results):
        r = _results[n]
        status = "PASS" if r["passed"] else "FAIL"
        terminalreporter.write_line(f"{status} criterion {n} ({TITLES.get(n, '')}): " + "; ".join(r["notes"]))
