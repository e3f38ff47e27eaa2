"""Collects acceptance outcomes and prints one line per criterion at the end of the run."""

from collections import defaultdict

ACCEPTANCE = defaultdict(list)


def record(criterion: int, passed: bool, detail: str, label: str = "") -> bool:
    ACCEPTANCE[criterion].append((label, bool(passed), detail))
    return bool(passed)


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    tr = terminalreporter
    tr.section("acceptance criteria")
    for criterion in sorted(ACCEPTANCE):
        entries = ACCEPTANCE[criterion]
        failed = [e for e in entries if not e[1]]
        status = "PASS" if not failed else "FAIL"
        if len(entries) == 1:
            detail = entries[0][2]
        elif failed:
            detail = "; ".join(f"{label}: {d}" for label, _, d in failed)
            detail = f"{len(entries) - len(failed)}/{len(entries)} ok; failing {detail}"
        else:
            detail = f"{len(entries)}/{len(entries)} ok"
        tr.write_line(f"criterion {criterion:2d}: {status}  {detail}")
