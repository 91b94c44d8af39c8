"""Repeats the acceptance scorecard after the run summary.

Capture swallows in-test prints for passing tests, so the one-line-per-
criterion scorecard is also emitted through the terminal reporter, which
always reaches the console.
"""

import sys


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance") or sys.modules.get(
        "tests.test_acceptance"
    )
    lines = getattr(mod, "SCORECARD", None) if mod else None
    if not lines:
        return
    terminalreporter.section("acceptance scorecard")
    for line in lines:
        terminalreporter.write_line(line)
