def pytest_terminal_summary(terminalreporter, exitstatus, config):
    # Re-prints the acceptance verdict lines after capture ends so they are
    # visible in plain `pytest -v` output.
    import sys

    module = sys.modules.get("test_acceptance")
    lines = getattr(module, "REPORT_LINES", None) if module else None
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in lines:
            terminalreporter.write_line(line)
