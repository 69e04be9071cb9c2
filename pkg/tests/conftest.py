import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

ACCEPTANCE_LINES = []


@pytest.fixture
def criterion(request):
    """Record one PASS/FAIL line for an acceptance criterion.

    Usage: ``with criterion("1", "description"): <asserts>``.
    """
    class _Rec:
        def __call__(self, cid, text):
            self.cid, self.text = cid, text
            return self

        def __enter__(self):
            return self

        def __exit__(self, exc_type, exc, tb):
            status = "PASS" if exc_type is None else "FAIL"
            line = f"{status}  criterion {self.cid}: {self.text}"
            if exc_type is not None:
                line += f"  [{exc_type.__name__}: {str(exc).splitlines()[0] if str(exc) else ''}]"
            ACCEPTANCE_LINES.append(line)
            print(line)
            return False

    return _Rec()


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
