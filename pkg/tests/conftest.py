from __future__ import annotations

# criterion number -> (passed, seconds, limit, label), filled in by test_acceptance
ACCEPTANCE: dict = {}


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for key in sorted(ACCEPTANCE):
        ok, secs, limit, label = ACCEPTANCE[key]
        verdict = "PASS" if ok else "FAIL"
        terminalreporter.write_line(f"[{verdict}] criterion {key}: {label} ({secs:.2f}s, limit {limit:g}s)")
