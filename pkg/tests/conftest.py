import pytest
from hypothesis import settings

SEED = 20261016

settings.register_profile("fixed", derandomize=False, deadline=None, max_examples=60, print_blob=True)
settings.load_profile("fixed")


def pytest_report_header(config):
    return f"hypothesis seed: {SEED}"


def pytest_configure(config):
    config._acceptance = []


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    if config._acceptance:
        terminalreporter.section("acceptance criteria")
        for line in sorted(config._acceptance):
            terminalreporter.write_line(line)


@pytest.fixture
def record(request):
    def _record(number, ok, detail=""):
        line = f"criterion {number:2d}: {'PASS' if ok else 'FAIL'}" + (f"  ({detail})" if detail else "")
        request.config._acceptance.append(line)
        print(line)
    return _record
