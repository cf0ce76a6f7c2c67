"""Aspect well-formedness, condition evaluation and the combined verdict."""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from typing import Iterable, Optional

from .analysis import eval_set_expr
from .aspects import (
    Analysis, And, Aspect, CapIn, Cut, CutEval, CutNewloc, Eq, Exists, Forall, Inter, IsEmpty,
    LocIn, NamedSet, Not, Or, SetLit, Suggestion, Test, Union_,
)
from .errors import UnboundVariable
from .matching import JoinPoint, match_cut
from .model import DONT_CARE, Bind, Capability, Const, In, Net, Out, Read, Var, Violation


# -- validation ---------------------------------------------------------------


@dataclass(frozen=True)
class _CutVars:
    plain: frozenset      # location variables bound to constants
    banged: frozenset     # bound to binder names; usable only in set positions
    procs: frozenset      # process variables (Y and X)

    @property
    def all(self) -> frozenset:
        return self.plain | self.banged | self.procs


def _cut_occurrences(cut: Cut) -> list[tuple[str, str]]:
    """(name, kind) for every variable occurrence in the cut, in textual order."""
    occ: list[tuple[str, str]] = []

    def loc(x):
        if isinstance(x, Var):
            occ.append((x.name, "plain"))
        elif isinstance(x, Bind):
            occ.append((x.name, "banged"))

    loc(cut.source)
    act = cut.action
    if isinstance(act, (Out, In, Read)):
        for f in (act.args if isinstance(act, Out) else act.templ):
            loc(f)
        loc(act.target)
    elif isinstance(act, CutEval):
        occ.append((act.proc_var, "proc"))
        loc(act.target)
    elif isinstance(act, CutNewloc) and act.binder:
        occ.append((act.binder, "banged"))
    if cut.cont_var:
        occ.append((cut.cont_var, "proc"))
    return occ


def cut_variables(cut: Cut) -> _CutVars:
    occ = _cut_occurrences(cut)
    return _CutVars(
        frozenset(n for n, k in occ if k == "plain"),
        frozenset(n for n, k in occ if k == "banged"),
        frozenset(n for n, k in occ if k == "proc"),
    )


def validate_aspect(a: Aspect) -> list[Violation]:
    """Return the well-formedness violations of ``a`` (empty when it is well formed)."""
    out: list[Violation] = []

    def v(rule: str, msg: str) -> None:
        out.append(Violation(rule, msg, a.name, None, a.span))

    seen: set[str] = set()
    for name, _ in _cut_occurrences(a.cut):
        if name in seen:
            v("duplicate-cut-variable", f"variable {name} occurs more than once in the cut")
        seen.add(name)
    act = a.cut.action
    if isinstance(act, Out) and any(isinstance(x, Bind) for x in act.args):
        v("binder-in-out-cut", "an out cut cannot contain a defining occurrence")
    if isinstance(act, (Out, In, Read, CutEval)) and isinstance(act.target, Bind):
        v("binder-as-target", "a cut target cannot be a defining occurrence")
    if isinstance(a.cut.source, Bind):
        v("binder-as-target", "a cut source cannot be a defining occurrence")

    cv = cut_variables(a.cut)

    def loc_use(x, scope: frozenset, in_set: bool) -> None:
        if x is DONT_CARE:
            return
        if not isinstance(x, Var):
            return
        n = x.name
        if n in scope or n in cv.plain:
            return
        if n in cv.banged:
            if not in_set:
                v("banged-variable-outside-set",
                  f"banged variable used outside set expression: {n}")
            return
        if n in cv.procs:
            v("process-variable-as-location", f"process variable {n} used as a location")
            return
        v("unbound-variable", f"variable {n} is not bound by the cut")

    def set_uses(s, scope: frozenset) -> None:
        if isinstance(s, SetLit):
            for x in s.items:
                if not isinstance(x, Capability):
                    loc_use(x, scope, True)
        elif isinstance(s, (Inter, Union_)):
            set_uses(s.left, scope)
            set_uses(s.right, scope)
        elif isinstance(s, Analysis):
            if s.var not in cv.procs:
                v("unbound-variable", f"{s.var} is not a process variable of the cut")
        elif isinstance(s, NamedSet):
            pass

    def cond(c, scope: frozenset) -> None:
        if isinstance(c, Eq):
            for x in (c.left, c.right):
                if x is DONT_CARE:
                    v("dont-care-outside-test", "'_' is only allowed in cuts and tests")
                loc_use(x, scope, False)
        elif isinstance(c, Test):
            for x in (*c.fields, c.target):
                loc_use(x, scope, False)
            if c.target is DONT_CARE:
                v("dont-care-as-target", "a test needs a concrete target")
        elif isinstance(c, (And, Or)):
            cond(c.left, scope)
            cond(c.right, scope)
        elif isinstance(c, Not):
            cond(c.cond, scope)
        elif isinstance(c, (Exists, Forall)):
            if c.var in cv.all:
                v("quantifier-shadows-cut-variable",
                  f"quantified variable {c.var} shadows a cut variable")
            set_uses(c.domain, scope)
            cond(c.body, scope | {c.var})
        elif isinstance(c, CapIn):
            set_uses(c.set, scope)
        elif isinstance(c, LocIn):
            loc_use(c.loc, scope, True)
            set_uses(c.set, scope)
        elif isinstance(c, IsEmpty):
            set_uses(c.set, scope)

    for case in a.body.cases:
        cond(case.cond, frozenset())
    return out


# -- evaluation ---------------------------------------------------------------


def _resolve(x, env):
    if isinstance(x, Var):
        try:
            value = env[x.name]
        except KeyError:
            raise UnboundVariable(x.name) from None
        if isinstance(value, Capability):
            return Const(value.keyword)
        return value
    return x


def _test(c: Test, env, net: Net) -> bool:
    target = _resolve(c.target, env)
    if not isinstance(target, Const):
        return False  # a binder name is not a node
    pats = [_resolve(f, env) for f in c.fields]
    for tup in net.tuples_at(target.name):
        if len(tup.fields) != len(pats):
            continue
        if all(p is DONT_CARE or (isinstance(p, Const) and p.name == f) for p, f in zip(pats, tup.fields)):
            return True
    return False


def evaluate_condition(c, env, net: Net) -> bool:
    """Evaluate a condition under the cut bindings ``env`` against a net snapshot."""
    if isinstance(c, Eq):
        return _resolve(c.left, env) == _resolve(c.right, env)
    if isinstance(c, Test):
        return _test(c, env, net)
    if isinstance(c, Not):
        return not evaluate_condition(c.cond, env, net)
    if isinstance(c, And):
        return evaluate_condition(c.left, env, net) and evaluate_condition(c.right, env, net)
    if isinstance(c, Or):
        return evaluate_condition(c.left, env, net) or evaluate_condition(c.right, env, net)
    if isinstance(c, (Exists, Forall)):
        items = eval_set_expr(c.domain, env).sorted_items()
        results = (evaluate_condition(c.body, {**env, c.var: x}, net) for x in items)
        return any(results) if isinstance(c, Exists) else all(results)
    if isinstance(c, CapIn):
        return eval_set_expr(c.set, env).contains(c.cap)
    if isinstance(c, LocIn):
        return eval_set_expr(c.set, env).contains(_resolve(c.loc, env))
    if isinstance(c, IsEmpty):
        return eval_set_expr(c.set, env).is_empty()
    raise TypeError(f"not a condition: {c!r}")


# -- advice and the combined verdict ------------------------------------------


class Decision(enum.Enum):
    ALLOW = "ALLOW"
    DENY = "DENY"

    def __str__(self) -> str:
        return self.value


@dataclass(frozen=True)
class AspectReport:
    name: str
    matched: bool
    suggestion: Optional[Suggestion] = None
    case_index: Optional[int] = None  # None when the default fired (or no match)
    bindings: dict = field(default_factory=dict, compare=False)


@dataclass(frozen=True)
class Verdict:
    decision: Decision
    reports: tuple[AspectReport, ...] = ()

    @property
    def allowed(self) -> bool:
        return self.decision is Decision.ALLOW

    def matched(self) -> list[AspectReport]:
        return [r for r in self.reports if r.matched]

    def report(self, name: str) -> AspectReport:
        for r in self.reports:
            if r.name == name:
                return r
        raise KeyError(name)


def report_for(a: Aspect, jp: JoinPoint, net: Net) -> AspectReport:
    env = match_cut(a.cut, jp)
    if env is None:
        return AspectReport(a.name, False)
    for i, case in enumerate(a.body.cases):
        if evaluate_condition(case.cond, env, net):
            return AspectReport(a.name, True, case.suggestion, i, env)
    return AspectReport(a.name, True, a.body.default, None, env)


def advise(a: Aspect, jp: JoinPoint, net: Net) -> Optional[Suggestion]:
    """The aspect's suggestion for ``jp``, or ``None`` when its cut does not match."""
    return report_for(a, jp, net).suggestion


def phi(aspects: Iterable[Aspect], jp: JoinPoint, net: Net) -> Verdict:
    """Consult every aspect; any break denies the action."""
    reports = tuple(report_for(a, jp, net) for a in aspects)
    deny = any(r.suggestion is Suggestion.BREAK for r in reports)
    return Verdict(Decision.DENY if deny else Decision.ALLOW, reports)


__all__ = [
    "validate_aspect", "cut_variables", "evaluate_condition", "advise", "phi", "report_for",
    "Decision", "AspectReport", "Verdict",
]
