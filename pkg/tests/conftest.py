ACCEPTANCE_CRITERIA = {
    "test_similarity_axioms": "similarity axioms (1000 random pairs, oracle agreement, <5s)",
    "test_worked_similarity_value": "worked similarity value: abcdef/abcdeg = 0.5",
    "test_identity_oracle_equivalence": "identity propagation matches exhaustive oracle, IDs unique",
    "test_diff_minimality": "diff minimality vs DP oracle, reconstruction, classic case",
    "test_conservation": "PV2 stack conservation and PV7 cumulative balance",
    "test_statistics_fixture": "statistics fixture: 5 chars, 5000 ms active, 60 chars/min",
    "test_secure_store": "secure store round-trips, tamper and passcode rejection",
    "test_end_to_end_determinism": "capture -> analyze reproduces the golden bundle twice",
}


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    """One pass/fail line per acceptance criterion."""
    lines = []
    for status in ("passed", "failed", "error"):
        for report in terminalreporter.stats.get(status, []):
            nodeid = getattr(report, "nodeid", "")
            if "test_acceptance.py" not in nodeid:
                continue
            if getattr(report, "when", "call") != "call" and status == "passed":
                continue
            name = nodeid.split("::")[-1]
            label = ACCEPTANCE_CRITERIA.get(name, name)
            lines.append((name, f"{'PASS' if status == 'passed' else 'FAIL'}  {label}"))
    if lines:
        terminalreporter.write_sep("-", "acceptance criteria")
        for _name, line in sorted(set(lines)):
            terminalreporter.write_line(line)
