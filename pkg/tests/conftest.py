"""Shared pytest hooks.

The acceptance module's tests are summarized with one PASS/FAIL line
per behaviour target at the end of a run, so the gate can be read off
directly from the terminal output.
"""

from __future__ import annotations

import sys
from pathlib import Path

# Make the sibling oracles module importable regardless of rootdir.
sys.path.insert(0, str(Path(__file__).parent))

_ACCEPTANCE_FILE = "test_acceptance.py"


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    lines = []
    for outcome, label in (("passed", "PASS"), ("failed", "FAIL"), ("error", "ERROR")):
        for report in terminalreporter.stats.get(outcome, []):
            if report.when != "call" or _ACCEPTANCE_FILE not in report.nodeid:
                continue
            name = report.nodeid.split("::")[-1]
            lines.append((name, label))
    if not lines:
        return
    terminalreporter.section("acceptance criteria")
    for name, label in sorted(lines):
        terminalreporter.write_line(f"{label:5s} {name}")
