"""Shared fixtures: collects acceptance-criterion result lines for the summary."""

import pytest


def pytest_configure(config):
    config._criterion_lines = []


@pytest.fixture(scope="session")
def criterion_lines(request):
    """Append 'PASS criterion N: ...' lines here; printed at session end."""
    return request.config._criterion_lines


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    lines = getattr(config, "_criterion_lines", [])
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in sorted(lines):
            terminalreporter.line(line)
