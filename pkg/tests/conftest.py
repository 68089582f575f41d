import pytest

# criterion number -> (title, outcome, seconds), filled in by test_acceptance
ACCEPTANCE: dict[int, list] = {}


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    number = getattr(item.function, "criterion", None)
    if number is None:
        return
    entry = ACCEPTANCE.setdefault(number, [item.function.title, "PASS", 0.0])
    if report.when == "call":
        entry[2] = report.duration
    if report.failed:
        entry[1] = "FAIL"


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(ACCEPTANCE):
        title, status, secs = ACCEPTANCE[number]
        terminalreporter.write_line(f"criterion {number:2d} {status}  {title} ({secs:.2f}s)")
