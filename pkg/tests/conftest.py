import pytest

_LINES: list[str] = []


class Criterion:
    def __init__(self, number: int, title: str) -> None:
        self.number, self.title = number, title

    def check(self, ok: bool, detail: str = "") -> None:
        line = f"[{'PASS' if ok else 'FAIL'}] criterion {self.number:>2}: {self.title}"
        if detail:
            line += f" ({detail})"
        _LINES.append(line)
        print(line)
        assert ok, line


@pytest.fixture
def criterion():
    return Criterion


def pytest_terminal_summary(terminalreporter):
    if _LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(_LINES, key=lambda s: int(s.split("criterion")[1].split(":")[0])):
            terminalreporter.write_line(line)
