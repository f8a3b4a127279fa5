import os

import pytest

from olse.core import Instance

ACCEPTANCE_LINES = []


def pytest_configure(config):
    config.acceptance_lines = ACCEPTANCE_LINES


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    if not ACCEPTANCE_LINES:
        return
    terminalreporter.section("acceptance criteria")
    for line in ACCEPTANCE_LINES:
        terminalreporter.write_line(line)


def identity_instance(n, edges_g=(), edges_h=(), k=None):
    return Instance.build(n, n, edges_g, edges_h, [[i] for i in range(n)], k)


@pytest.fixture
def tmp_json(tmp_path):
    def write(name, data):
        p = tmp_path / name
        p.write_bytes(data if isinstance(data, bytes) else data.encode())
        return str(p)
    return write
