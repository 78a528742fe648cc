"""Shared pytest configuration.

Prints one summary line per acceptance criterion as the acceptance module
runs, bypassing output capture so the verdicts always appear in the terminal
log, pass or fail.
"""

import re
import sys

_CRITERION = re.compile(r"test_acceptance\.py::test_criterion_(\d+)_(\w+)")


def pytest_runtest_logreport(report):
    if report.when != "call":
        return
    match = _CRITERION.search(report.nodeid)
    if match is None:
        return
    number = int(match.group(1))
    title = match.group(2).replace("_", " ")
    status = "PASS" if report.passed else "FAIL"
    detail = ""
    for key, value in report.user_properties:
        if key == "detail":
            detail = f"  ({value})"
    line = f"\nACCEPTANCE {number:2d} [{status}] {title}{detail}"
    sys.__stderr__.write(line)
    sys.__stderr__.flush()
