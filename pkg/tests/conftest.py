"""Shared pytest wiring.

The acceptance tests record a verdict per criterion; the terminal summary
prints them as a block so a full run always ends with one PASS/FAIL line
per criterion, visible without -s.
"""

from __future__ import annotations

import recording


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    verdicts = recording.all_verdicts()
    if not verdicts:
        return
    terminalreporter.section("acceptance criteria")
    for v in verdicts:
        word = "PASS" if v.passed else "FAIL"
        terminalreporter.write_line(f"{word}  {v.name}: {v.detail}")
