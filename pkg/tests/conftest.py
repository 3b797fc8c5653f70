import absurd.core

# verify every canonical-form invariant after each core operation
absurd.core.CHECK_INVARIANTS = True

# one line per acceptance criterion, filled in by test_acceptance
ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
