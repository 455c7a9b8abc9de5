import pytest
from hypothesis import HealthCheck, settings

settings.register_profile("default", max_examples=40, deadline=None,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")

_CRITERIA: dict[int, tuple[str, bool]] = {}


class Criterion:
    def __init__(self, number: int, title: str):
        self.number, self.title = number, title
        self.failed: list[str] = []

    def check(self, label: str, ok: bool):
        if not ok:
            self.failed.append(label)

    def finish(self):
        ok = not self.failed
        _CRITERIA[self.number] = (self.title, ok)
        assert ok, f"criterion {self.number} failed: {', '.join(self.failed)}"


@pytest.fixture
def criterion(request):
    made = []

    def make(number: int, title: str) -> Criterion:
        c = Criterion(number, title)
        made.append(c)
        return c

    yield make
    for c in made:
        _CRITERIA.setdefault(c.number, (c.title, False))


def pytest_terminal_summary(terminalreporter):
    if not _CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(_CRITERIA):
        title, ok = _CRITERIA[n]
        terminalreporter.write_line(f"{'PASS' if ok else 'FAIL'} criterion {n:2d}: {title}")
