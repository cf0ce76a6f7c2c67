"""Replay every shipped scenario through the CLI and compare with its golden file."""

from __future__ import annotations

import time

import pytest

from aspectke.corpus import load_scenarios
from conftest import FIXTURES

SCENARIOS = load_scenarios(FIXTURES)


def test_corpus_is_not_empty():
    assert len(SCENARIOS) >= 50
    assert {s.section for s in SCENARIOS} == {
        "running_example", "dac", "mac", "rbac", "retrofit", "remote_eval", "secondary_use", "klaim"}


@pytest.mark.parametrize("scenario", SCENARIOS, ids=lambda s: s.id)
def test_golden(scenario):
    start = time.perf_counter()
    code, out = scenario.run_cli()
    elapsed = time.perf_counter() - start
    assert code == scenario.exit
    assert out == scenario.expected_path.read_text(encoding="utf-8")
    assert elapsed < 1.0, f"{scenario.id} took {elapsed:.2f}s"
