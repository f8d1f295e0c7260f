import time

SUITE_BUDGET = 60.0

_start = time.perf_counter()
_acceptance = {}


def pytest_runtest_logreport(report):
    if "test_acceptance.py" not in report.nodeid:
        return
    if report.when == "call" or (report.when == "setup" and report.outcome != "passed"):
        name = report.nodeid.split("::")[-1]
        detail = ""
        if report.failed and report.longrepr is not None:
            detail = getattr(report.longrepr, "reprcrash", None)
            detail = detail.message.splitlines()[0] if detail is not None else ""
        _acceptance[name] = (report.outcome, detail)


def pytest_terminal_summary(terminalreporter):
    if not _acceptance:
        return
    elapsed = time.perf_counter() - _start
    tr = terminalreporter
    tr.section("acceptance criteria")
    for name in sorted(_acceptance, key=lambda n: int(n.split("_")[1][2:])):
        outcome, detail = _acceptance[name]
        if name.startswith("test_ac9_") and outcome == "passed" and elapsed >= SUITE_BUDGET:
            outcome, detail = "failed", f"suite runtime {elapsed:.1f} s exceeds {SUITE_BUDGET:.0f} s"
        status = "PASS" if outcome == "passed" else "FAIL"
        line = f"{status}  {name[5:]}"
        if detail:
            line += f"  ({detail})"
        tr.write_line(line)
    tr.write_line(f"suite runtime: {elapsed:.1f} s (budget {SUITE_BUDGET:.0f} s)")
