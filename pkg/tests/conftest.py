from __future__ import annotations

import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from gpcat.groups import make_cyclic, make_product, make_symmetric  # noqa: E402

C1, C2, C3, C6 = (make_cyclic(n) for n in (1, 2, 3, 6))
S3 = make_symmetric(3)
V4 = make_product(C2, C2)

SMALL_GROUPS = [C1, C2, C3]
TEST_GROUPS = [C1, C2, C3, S3]


@pytest.fixture(params=TEST_GROUPS, ids=lambda g: g.name)
def group(request):
    return request.param


# lines reported by the acceptance suite, echoed at the end of the run
ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES, key=lambda s: int(s.split()[1].rstrip(":"))):
            terminalreporter.write_line(line)
