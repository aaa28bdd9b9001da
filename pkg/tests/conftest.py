import random
import sys
from pathlib import Path

import pytest

from gdet.fields import GF, QQ

sys.path.insert(0, str(Path(__file__).parent))

FIELDS = [QQ, GF(10007)]


@pytest.fixture
def rng():
    return random.Random(20261018)


@pytest.fixture(params=FIELDS, ids=["QQ", "GF10007"])
def field(request):
    return request.param


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    if mod is None or not mod.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for line in mod.RESULTS:
        terminalreporter.write_line(line)
