"""Policies that look ahead: behavior analyses over continuations and spawned code.

Prints the analysis sets an aspect would see for a few process terms, then the
verdicts of the remote-evaluation and secondary-use scenarios.

    python walkthroughs/predictive_policies.py
"""

from __future__ import annotations

from pathlib import Path

from aspectke.analysis import run_analysis
from aspectke.corpus import load_scenarios
from aspectke.model import Capability
from aspectke.parser import parse_process
from aspectke.runtime import run

FIXTURES = Path(__file__).resolve().parents[1] / "fixtures"

TERMS = [
    ("continuation of the running example read",
     "out(Alice,content)@DrSmith.out(Alice,MedicalRecord,DrSmith,Recent,newtext)@EHDB", ("content",)),
    ("code shipped by a nurse", "in(Alice,!recordtype,!author,!createdtime,!subject)@EHDB", ()),
    ("code with a computed target", "read(!db)@AdWalker.in(Alice,!note)@db", ()),
    ("linkage code", "read(!patient,MedicalRecord,!author,!createdtime,!subject1)@EHDB."
                     "read(patient,MedicalRecord,!author,!createdtime,!subject2)@EHDB2."
                     "out(subject1,subject2)@Publication", ()),
]


if __name__ == "__main__":
    for label, text, free in TERMS:
        p = parse_process(text, free_vars=free)
        print(f"-- {label}")
        print(f"   Act      = {run_analysis('Act', p)}")
        print(f"   Loc_in   = {run_analysis('Loc', p, Capability.IN)}")
        print(f"   Loc_read = {run_analysis('Loc', p, Capability.READ)}")
        print(f"   LC_read  = {run_analysis('LCc', p, Capability.READ)}")
        print(f"   FV       = {run_analysis('FV', p)}")
    print()
    for sc in load_scenarios(FIXTURES):
        if sc.section not in {"remote_eval", "secondary_use"}:
            continue
        res = run(sc.load(), seed=sc.seed, max_steps=sc.max_steps)
        first = res.trace[0]
        print(f"{sc.id:40} first step {first.verdict.decision}: {first.action[:60]}")
