from __future__ import annotations

import pytest

# criterion number -> list of (check name, passed, detail), filled by test_acceptance
ACCEPTANCE: dict[int, list[tuple[str, bool, str]]] = {}


@pytest.fixture
def record():
    def _record(criterion: int, check: str, passed: bool, detail: str = "") -> bool:
        ACCEPTANCE.setdefault(criterion, []).append((check, bool(passed), detail))
        return bool(passed)

    return _record


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(ACCEPTANCE):
        checks = ACCEPTANCE[n]
        ok = all(p for _, p, _ in checks)
        failed = [f"{name} ({detail})" if detail else name for name, p, detail in checks if not p]
        line = f"criterion {n:>2}: {'PASS' if ok else 'FAIL'}  [{len(checks)} checks]"
        if failed:
            line += "  failing: " + "; ".join(failed)
        terminalreporter.write_line(line)
