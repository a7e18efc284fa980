import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).parent))

# Filled by test_acceptance; printed once at the end of the session so the
# pass/fail lines show up even when output capture is on.
ACCEPTANCE_LINES: dict[int, str] = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_LINES:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(ACCEPTANCE_LINES):
        terminalreporter.write_line(ACCEPTANCE_LINES[number])
