import pytest

# criterion number -> (passed, description); filled in by test_acceptance.py
ACCEPTANCE = {}


@pytest.fixture
def criterion(request):
    """Record one acceptance criterion's outcome under its number."""
    def register(number, description):
        ACCEPTANCE[number] = (False, description)
        request.node.user_properties.append(("criterion", number))
    yield register
    for key, value in request.node.user_properties:
        if key == "criterion":
            number = value
            passed = getattr(request.node, "acceptance_passed", False)
            ACCEPTANCE[number] = (passed, ACCEPTANCE[number][1])


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    if report.when == "call":
        item.acceptance_passed = report.passed


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(ACCEPTANCE):
        passed, description = ACCEPTANCE[number]
        terminalreporter.write_line(f"criterion {number:2d}: {'PASS' if passed else 'FAIL'}  {description}")
