"""Shared test plumbing.

The acceptance tests record one verdict per criterion here; the terminal
summary prints them as a block, one line each, after the normal pytest
report. Criteria that never ran (collection error, crash) show up as FAIL
(not reached) instead of disappearing.
"""

ACCEPTANCE_TOTAL = 11
ACCEPTANCE_RESULTS: dict[int, tuple[bool, str]] = {}


def record_acceptance(criterion: int, ok: bool, detail: str) -> None:
    ACCEPTANCE_RESULTS[criterion] = (ok, detail)


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    if not ACCEPTANCE_RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for k in range(1, ACCEPTANCE_TOTAL + 1):
        ok, detail = ACCEPTANCE_RESULTS.get(k, (False, "not reached"))
        verdict = "PASS" if ok else "FAIL"
        terminalreporter.write_line(f"criterion {k:2d}: {verdict} ({detail})")
