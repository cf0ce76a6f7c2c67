"""Small-step execution of nets with every action gated by the woven aspects."""

from __future__ import annotations

import enum
import random
from dataclasses import dataclass, field, replace
from typing import Optional

from .matching import JoinPoint, match_template
from .model import (
    NIL, Const, Eval, In, LocatedProcess, LocatedTuple, Newloc, Out, Read, Rep, Sum,
    SystemState, apply_substitution, lift_to_net, Net,
)
from .printer import format_action, format_proc
from .weaver import Decision, Verdict, phi


@dataclass(frozen=True)
class StepCandidate:
    """One enabled step: a located process, the chosen branch and, for in/read, the tuple.

    ``branch_index`` is ``None`` for the unfolding of a replicated process.
    """

    item_index: int
    branch_index: Optional[int] = None
    tuple_index: Optional[int] = None

    @property
    def is_unfold(self) -> bool:
        return self.branch_index is None


class Effect(enum.Enum):
    EXECUTED = "Executed"
    DENIED = "Denied"
    UNFOLDED = "Unfolded"


@dataclass(frozen=True)
class TraceEvent:
    step: int
    node: str
    action: str
    verdict: Verdict
    effect: Effect
    bindings: dict = field(default_factory=dict)

    def format(self) -> str:
        advice = ",".join(f"{r.name}:{r.suggestion}" for r in self.verdict.matched())
        binds = ",".join(f"{k}={v}" for k, v in sorted(self.bindings.items()))
        return f"#{self.step} {self.node} :: {self.action} => {self.verdict.decision} [{advice}] {{{binds}}}"


class HaltReason(enum.Enum):
    QUIESCENT = "Quiescent"
    STEP_BUDGET = "StepBudget"

    def __str__(self) -> str:
        return self.value


@dataclass(frozen=True)
class RunResult:
    state: SystemState
    trace: tuple[TraceEvent, ...]
    halt_reason: HaltReason

    @property
    def net(self) -> Net:
        return self.state.net

    def trace_text(self) -> str:
        return "".join(ev.format() + "\n" for ev in self.trace)


def enabled_candidates(state: SystemState) -> list[StepCandidate]:
    """All steps the scheduler may pick, in net order, then branch, then tuple order."""
    items = state.net.items
    out: list[StepCandidate] = []
    for i, it in enumerate(items):
        if not isinstance(it, LocatedProcess):
            continue
        if isinstance(it.proc, Rep):
            out.append(StepCandidate(i))
            continue
        if not isinstance(it.proc, Sum):
            continue  # a Par root means the net was not lifted
        for j, (act, _) in enumerate(it.proc.branches):
            if isinstance(act, (In, Read)):
                if not isinstance(act.target, Const):
                    continue
                for k, tup in enumerate(items):
                    if (isinstance(tup, LocatedTuple) and tup.node == act.target.name
                            and match_template(act.templ, tup) is not None):
                        out.append(StepCandidate(i, j, k))
            else:
                out.append(StepCandidate(i, j))
    return out


def _used_names(state: SystemState) -> set[str]:
    from .parser import tokenize
    from .printer import pretty_print

    return {t.text for t in tokenize(pretty_print(state)) if t.kind == "ident"}


def fresh_location(state: SystemState) -> tuple[Const, SystemState]:
    """Mint ``loc$N`` from the counter, skipping names already in the system text."""
    used = _used_names(state)
    n = state.fresh_counter
    while f"loc${n}" in used:
        n += 1
    return Const(f"loc${n}"), replace(state, fresh_counter=n + 1)


def execute(state: SystemState, cand: StepCandidate, step: int = 1) -> tuple[SystemState, TraceEvent]:
    items = list(state.net.items)
    item = items[cand.item_index]
    assert isinstance(item, LocatedProcess)
    if cand.is_unfold:
        assert isinstance(item.proc, Rep)
        items.append(LocatedProcess(item.node, item.proc.body, item.span))
        ev = TraceEvent(step, item.node, format_proc(item.proc), Verdict(Decision.ALLOW), Effect.UNFOLDED)
        return replace(state, net=lift_to_net(Net(tuple(items)))), ev

    act, cont = item.proc.branches[cand.branch_index]
    verdict = phi(state.aspects, JoinPoint(item.node, act, cont), state.net)
    if not verdict.allowed:
        items[cand.item_index] = LocatedProcess(item.node, NIL, item.span)
        ev = TraceEvent(step, item.node, format_action(act), verdict, Effect.DENIED)
        return replace(state, net=Net(tuple(items))), ev

    bindings: dict = {}
    added: list = []
    remove_tuple: Optional[int] = None
    if isinstance(act, Out):
        added.append(LocatedTuple(act.target.name, tuple(a.name for a in act.args)))
    elif isinstance(act, (In, Read)):
        bindings = match_template(act.templ, items[cand.tuple_index])
        if isinstance(act, In):
            remove_tuple = cand.tuple_index
    elif isinstance(act, Eval):
        added.append(LocatedProcess(act.target.name, act.proc))
    elif isinstance(act, Newloc):
        fresh, state = fresh_location(state)
        bindings = {act.binder: fresh}
        added.append(LocatedProcess(fresh.name, NIL))

    cont = apply_substitution(cont, bindings)
    items[cand.item_index] = None if isinstance(cont, Sum) and cont.is_nil else LocatedProcess(item.node, cont, item.span)
    if remove_tuple is not None:
        items[remove_tuple] = None
    items = [it for it in items if it is not None] + added
    ev = TraceEvent(step, item.node, format_action(act), verdict, Effect.EXECUTED,
                    {k: str(v) for k, v in bindings.items()})
    return replace(state, net=lift_to_net(Net(tuple(items)))), ev


def run(state: SystemState, seed: int = 0, max_steps: int = 10_000) -> RunResult:
    """Reduce until no step is enabled or ``max_steps`` steps have been taken."""
    if max_steps < 1:
        raise ValueError("max_steps must be positive")
    rng = random.Random(seed)
    state = replace(state, net=lift_to_net(state.net))
    trace: list[TraceEvent] = []
    while True:
        cands = enabled_candidates(state)
        if not cands:
            return RunResult(state, tuple(trace), HaltReason.QUIESCENT)
        if len(trace) >= max_steps:
            return RunResult(state, tuple(trace), HaltReason.STEP_BUDGET)
        cand = cands[rng.randrange(len(cands))]
        state, ev = execute(state, cand, len(trace) + 1)
        trace.append(ev)


__all__ = [
    "StepCandidate", "TraceEvent", "Effect", "HaltReason", "RunResult", "enabled_candidates",
    "execute", "run", "fresh_location",
]
