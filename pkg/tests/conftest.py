import pytest

from octool.harness_cli import build_default_suite, run_scenario


@pytest.fixture(scope="session")
def suite_reports():
    """Run the full default verification suite once; grouped by theorem id."""
    reports = [run_scenario(s) for s in build_default_suite()]
    by_id = {}
    for r in reports:
        by_id.setdefault(r.scenario["theorem_id"], []).append(r)
    return by_id
