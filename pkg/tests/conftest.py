import pytest

CRITERIA = {
    1: "eight-level table reproduction",
    2: "three-level table and values",
    3: "closed-form counts",
    4: "oracle equivalence",
    5: "structural invariants",
    6: "double-coset critical points",
    7: "gradient and Hessian finite differences",
    8: "trap-freeness",
    9: "perturbation comparison",
}

_outcomes: dict[int, list[bool]] = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(n): acceptance criterion number")


def pytest_runtest_makereport(item, call):
    marker = item.get_closest_marker("criterion")
    if marker is None:
        return
    if call.when == "call" or (call.when == "setup" and call.excinfo is not None):
        _outcomes.setdefault(marker.args[0], []).append(call.excinfo is None)


def pytest_terminal_summary(terminalreporter):
    if not _outcomes:
        return
    terminalreporter.section("acceptance criteria")
    for n, name in CRITERIA.items():
        results = _outcomes.get(n)
        if results is None:
            status = "NOT RUN"
        else:
            status = "PASS" if all(results) else "FAIL"
        terminalreporter.write_line(f"{status:8} criterion {n}: {name}")
