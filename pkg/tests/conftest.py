"""Echo the acceptance criterion lines in the terminal summary."""

_lines = []


def pytest_runtest_logreport(report):
    if report.when == "call" and "test_acceptance" in report.nodeid:
        _lines.extend(x for x in report.capstdout.splitlines() if x.startswith(("PASS", "FAIL")))
        if report.failed and not report.capstdout:
            _lines.append(f"FAIL {report.nodeid}")


def pytest_terminal_summary(terminalreporter):
    if _lines:
        terminalreporter.section("acceptance criteria")
        for line in _lines:
            terminalreporter.write_line(line)
