"""Shared pytest plumbing: the acceptance suite records one line per
criterion and this hook prints them after the run, outside output capture."""

acceptance_lines = []


def record(line):
    acceptance_lines.append(line)


def pytest_terminal_summary(terminalreporter):
    if acceptance_lines:
        terminalreporter.section("acceptance criteria")
        for line in acceptance_lines:
            terminalreporter.write_line(line)
