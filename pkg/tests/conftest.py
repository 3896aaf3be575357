import os
import sys
import tempfile
from pathlib import Path

sys.path.insert(0, str(Path(__file__).parent))

# keep test runs away from the user's cache
os.environ.setdefault("PARACLASS_CACHE", os.path.join(tempfile.mkdtemp(prefix="paraclass-test-"), "results.jsonl"))


def pytest_terminal_summary(terminalreporter):
    """One PASS/FAIL line per acceptance criterion."""
    lines = []
    for outcome in ("passed", "failed"):
        for rep in terminalreporter.stats.get(outcome, []):
            if rep.when == "call" and "test_acceptance.py::test_acceptance" in rep.nodeid:
                k = int(rep.nodeid.rsplit("criterion_", 1)[1].rstrip("]"))
                detail = dict(rep.user_properties).get("detail", "")
                lines.append((k, f"criterion {k}: {'PASS' if outcome == 'passed' else 'FAIL'}  {detail}"))
    if lines:
        terminalreporter.write_sep("=", "acceptance")
        for _, line in sorted(lines):
            terminalreporter.write_line(line)
