import sys


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    # acceptance tests collect their PASS/FAIL lines while running; echo
    # them here because fd-level capture would swallow direct prints
    mod = sys.modules.get("test_acceptance")
    lines = getattr(mod, "ACCEPTANCE_LINES", None) if mod else None
    if lines:
        terminalreporter.write_sep("-", "acceptance criteria")
        for line in lines:
            terminalreporter.write_line(line)
