import sys

import hypothesis

hypothesis.settings.register_profile(
    "turanlab", deadline=None, max_examples=50, derandomize=True
)
hypothesis.settings.load_profile("turanlab")


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    mod = sys.modules.get("test_acceptance") or sys.modules.get("tests.test_acceptance")
    report = getattr(mod, "REPORT", None) if mod else None
    if report:
        terminalreporter.section("acceptance criteria")
        for line in report:
            terminalreporter.write_line(line)
