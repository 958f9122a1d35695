import contextlib
import time

ACCEPTANCE: list[tuple[int, bool, str]] = []


@contextlib.contextmanager
def criterion(number: int, title: str):
    """Record a PASS/FAIL line for one acceptance criterion."""
    start = time.perf_counter()
    ok = False
    try:
        yield
        ok = True
    finally:
        ACCEPTANCE.append((number, ok, f"{title} ({time.perf_counter() - start:.2f}s)"))


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for number, ok, title in sorted(ACCEPTANCE):
        terminalreporter.write_line(f"{'PASS' if ok else 'FAIL'} criterion {number}: {title}")
