_acceptance = {}
_durations = {}


def pytest_runtest_logreport(report):
    if "test_acceptance.py::" not in report.nodeid:
        return
    _durations[report.nodeid] = _durations.get(report.nodeid, 0.0) + report.duration
    # Keep the most telling phase: any failure, else the call (or skipping setup).
    prev = _acceptance.get(report.nodeid)
    if report.failed or prev is None or (report.when == "call" and not prev.failed):
        _acceptance[report.nodeid] = report


def pytest_terminal_summary(terminalreporter):
    if not _acceptance:
        return
    terminalreporter.section("acceptance criteria")
    for nodeid, rep in _acceptance.items():
        name = nodeid.split("::", 1)[1].removeprefix("test_")
        label = "FAIL" if rep.failed else "SKIP" if rep.skipped else "PASS"
        note = ""
        if rep.skipped and isinstance(rep.longrepr, tuple):
            note = f"  ({rep.longrepr[2].removeprefix('Skipped: ')})"
        terminalreporter.write_line(f"{label:5} {name}  [{_durations[nodeid]:.2f}s]{note}")
