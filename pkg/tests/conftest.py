"""Prints one scoreboard line per acceptance criterion after the run."""
from __future__ import annotations


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    try:
        import _acceptance_log
    except ImportError:
        return
    if not _acceptance_log.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for num, label, ok, elapsed, budget in sorted(_acceptance_log.RESULTS):
        word = "PASS" if ok else "FAIL"
        terminalreporter.write_line(
            f"ACCEPTANCE {num:2d} {word} {elapsed:7.2f}s (budget {budget:.0f}s) {label}"
        )
