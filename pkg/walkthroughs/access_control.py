"""Compare the DAC, MAC and RBAC encodings on the same nurse program.

    python walkthroughs/access_control.py
"""

from __future__ import annotations

from pathlib import Path

from aspectke.corpus import load_scenarios
from aspectke.runtime import run

FIXTURES = Path(__file__).resolve().parents[1] / "fixtures"


def verdict_line(scenario) -> str:
    res = run(scenario.load(), seed=scenario.seed, max_steps=scenario.max_steps)
    steps = []
    for ev in res.trace:
        who = ",".join(f"{r.name}:{r.suggestion}" for r in ev.verdict.matched())
        steps.append(f"{ev.verdict.decision}{f' ({who})' if who else ''}")
    return " -> ".join(steps) or "(no steps)"


if __name__ == "__main__":
    wanted = {"dac", "mac", "rbac", "retrofit"}
    for sc in load_scenarios(FIXTURES):
        if sc.section in wanted:
            print(f"{sc.id:42} {verdict_line(sc)}")
