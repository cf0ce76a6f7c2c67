"""Run the medical-records example with and without aspects and show what changes.

    python walkthroughs/running_example.py
"""

from __future__ import annotations

from pathlib import Path

from aspectke.cli import load_system
from aspectke.printer import format_net
from aspectke.runtime import run

HERE = Path(__file__).resolve().parents[1] / "fixtures" / "running_example"
SYSTEM = str(HERE / "running_example.akl")


def show(title: str, *aspect_files: str) -> None:
    state = load_system(SYSTEM, [str(HERE / f) for f in aspect_files])
    result = run(state, seed=0)
    print(f"== {title}")
    print(result.trace_text(), end="")
    print(format_net(result.net, canonical=True))
    print()


if __name__ == "__main__":
    show("no aspects: plain tuple-space execution")
    # the local copy of alicetext is trapped after the read has happened
    show("A1_out: refuse a two-field copy of alicetext", "a1_out.apl")
    # the read itself is refused because the continuation would output
    show("A2_read: refuse reads whose continuation writes", "a2_read.apl")
