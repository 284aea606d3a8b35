"""Shared pytest configuration.

Collects the outcome of each numbered acceptance test and prints a
one-line verdict per criterion at the end of the run, so the acceptance
status is readable without scrolling through the full test log.
"""

import re

CRITERIA = {
    1: "printed spacing-deviation table reproduced at all ten sizes",
    2: "solvable-point closed-form spectra at 1x4 and 2x2",
    3: "corner-mode pi residuals vanish at kick angle pi/2",
    4: "corner spectral-function thresholds across the h scan",
    5: "subharmonic dominance contrast between 4x2 and 1x8",
    6: "matrix-free propagator agrees with the dense unitary",
    7: "Majorana algebra and dictionary exact on 3x2",
    8: "chain transfer-matrix closed forms and phase raster",
    9: "interior maximum of the 1D subharmonic peak over chain length",
    10: "rotated-axis response at and away from the special kick field",
}

_results: dict[int, str] = {}


def pytest_runtest_logreport(report):
    match = re.search(r"test_criterion_(\d+)", report.nodeid)
    if not match:
        return
    number = int(match.group(1))
    if report.when == "call" or (report.when == "setup" and report.skipped):
        _results[number] = report.outcome


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    if not _results:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(CRITERIA):
        outcome = _results.get(number)
        status = {
            "passed": "PASS",
            "failed": "FAIL",
            "skipped": "SKIP",
            None: "NOT RUN",
        }.get(outcome, str(outcome).upper())
        terminalreporter.write_line(
            f"criterion {number:2d}: {status:7s} {CRITERIA[number]}"
        )
