"""Scenario manifests for the fixture corpus (``fixtures/<section>/scenarios.json``).

Each scenario names a system file, extra aspect files, a seed and the expected
stdout of ``aspectke run --dump-final``.
"""

from __future__ import annotations

import contextlib
import io
import json
from dataclasses import dataclass
from pathlib import Path


@dataclass(frozen=True)
class Scenario:
    section: str
    name: str
    directory: Path
    system: str
    aspects: tuple[str, ...]
    seed: int
    max_steps: int
    expected: str
    exit: int
    about: str = ""

    @property
    def id(self) -> str:
        return f"{self.section}/{self.name}"

    @property
    def system_path(self) -> Path:
        return self.directory / self.system

    @property
    def aspect_paths(self) -> list[Path]:
        return [self.directory / a for a in self.aspects]

    @property
    def expected_path(self) -> Path:
        return self.directory / self.expected

    def argv(self) -> list[str]:
        args = ["run", str(self.system_path), "--seed", str(self.seed),
                "--max-steps", str(self.max_steps), "--dump-final"]
        for p in self.aspect_paths:
            args += ["--aspects", str(p)]
        return args

    def run_cli(self) -> tuple[int, str]:
        """Run the scenario through the command-line entry point; returns (exit, stdout)."""
        from .cli import main

        out, err = io.StringIO(), io.StringIO()
        with contextlib.redirect_stdout(out), contextlib.redirect_stderr(err):
            code = main(self.argv())
        return code, out.getvalue()

    def load(self):
        from .cli import load_system

        return load_system(str(self.system_path), [str(p) for p in self.aspect_paths])


def load_scenarios(root: Path | str) -> list[Scenario]:
    root = Path(root)
    out: list[Scenario] = []
    for manifest in sorted(root.glob("*/scenarios.json")):
        data = json.loads(manifest.read_text(encoding="utf-8"))
        for s in data["scenarios"]:
            out.append(Scenario(
                section=manifest.parent.name,
                name=s["name"],
                directory=manifest.parent,
                system=s["system"],
                aspects=tuple(s.get("aspects", ())),
                seed=int(s.get("seed", 0)),
                max_steps=int(s.get("max_steps", 10_000)),
                expected=s["expected"],
                exit=int(s.get("exit", 0)),
                about=s.get("about", ""),
            ))
    return out


__all__ = ["Scenario", "load_scenarios"]
