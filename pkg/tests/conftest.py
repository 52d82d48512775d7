from __future__ import annotations

import sys

import pytest
from hypothesis import settings

from effcat.instances import InstanceConfig, build_instance

settings.register_profile("effcat", max_examples=60, deadline=None)
settings.load_profile("effcat")


def make(tag: str, sizes=(("A", 2),), **kw):
    return build_instance(InstanceConfig(tag, sizes=tuple(sizes), **kw))


@pytest.fixture
def mk():
    return make


def pytest_terminal_summary(terminalreporter):
    module = sys.modules.get("test_acceptance")
    if module is None or not module.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for line in module.summary_lines():
        terminalreporter.write_line(line)
