"""Rewrite every ``.expected`` file in the fixture corpus from the current build.

Review the diff before committing: golden files are the regression oracle.
"""

from __future__ import annotations

import sys
from pathlib import Path

from aspectke.corpus import load_scenarios

ROOT = Path(__file__).resolve().parent.parent / "fixtures"


def main() -> int:
    bad = 0
    for sc in load_scenarios(ROOT):
        code, text = sc.run_cli()
        if code != sc.exit:
            print(f"{sc.id}: exit {code}, manifest says {sc.exit}", file=sys.stderr)
            bad += 1
        sc.expected_path.write_text(text, encoding="utf-8")
        print(f"wrote {sc.expected_path.relative_to(ROOT)}")
    return 1 if bad else 0


if __name__ == "__main__":
    sys.exit(main())
