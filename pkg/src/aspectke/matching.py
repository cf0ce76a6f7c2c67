"""Tuple matching for in/read and cut matching against join points."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from .aspects import Cut, CutEval, CutNewloc
from .model import DONT_CARE, NIL, Bind, Const, Eval, In, LocatedTuple, Newloc, Out, Read, Var

Bindings = dict  # name -> Const | Var | Process


@dataclass(frozen=True)
class JoinPoint:
    """The action a located process is about to perform, with what follows it."""

    node: str
    action: object
    continuation: object = NIL


def join_point_of(node: str, branch) -> JoinPoint:
    act, cont = branch
    return JoinPoint(node, act, cont)


def match_template(templ, tup) -> Optional[Bindings]:
    """Match an in/read template against a stored tuple.

    ``tup`` may be a :class:`LocatedTuple` or a plain sequence of field names.
    Returns the binder bindings, or ``None`` when the tuple does not match.
    """
    fields = tup.fields if isinstance(tup, LocatedTuple) else tuple(tup)
    if len(templ) != len(fields):
        return None
    out: Bindings = {}
    for pat, value in zip(templ, fields):
        if isinstance(pat, Bind):
            out[pat.name] = Const(value)
        elif isinstance(pat, Const):
            if pat.name != value:
                return None
        else:
            # variables are substituted away before execution; wildcards never reach programs
            return None
    return out


def _match_loc(pat, actual, env: Bindings) -> bool:
    if pat is DONT_CARE:
        return True
    if isinstance(pat, Const):
        return isinstance(actual, Const) and actual.name == pat.name
    if isinstance(pat, Var):
        if not isinstance(actual, Const):
            return False
        return _bind(env, pat.name, actual)
    if isinstance(pat, Bind):
        if not isinstance(actual, Bind):
            return False
        return _bind(env, pat.name, Var(actual.name))
    return False


def _bind(env: Bindings, name: str, value) -> bool:
    if name in env:
        return env[name] == value
    env[name] = value
    return True


def _match_fields(pats, actuals, env: Bindings) -> bool:
    if len(pats) != len(actuals):
        return False
    return all(_match_loc(p, a, env) for p, a in zip(pats, actuals))


def match_cut(cut: Cut, jp: JoinPoint) -> Optional[Bindings]:
    """Match a cut against a join point; ``None`` means the aspect does not apply."""
    act, pat = jp.action, cut.action
    if act.capability != pat.capability:
        return None
    env: Bindings = {}
    if not _match_loc(cut.source, Const(jp.node), env):
        return None
    if isinstance(pat, Out):
        if not (_match_fields(pat.args, act.args, env) and _match_loc(pat.target, act.target, env)):
            return None
    elif isinstance(pat, (In, Read)):
        if not (_match_fields(pat.templ, act.templ, env) and _match_loc(pat.target, act.target, env)):
            return None
    elif isinstance(pat, CutEval):
        assert isinstance(act, Eval)
        if not _match_loc(pat.target, act.target, env):
            return None
        if not _bind(env, pat.proc_var, act.proc):
            return None
    elif isinstance(pat, CutNewloc):
        assert isinstance(act, Newloc)
        if pat.binder is not None and not _bind(env, pat.binder, Var(act.binder)):
            return None
    else:  # pragma: no cover - guarded by the capability check
        return None
    if cut.cont_var is not None and not _bind(env, cut.cont_var, jp.continuation):
        return None
    return env


__all__ = ["JoinPoint", "join_point_of", "match_template", "match_cut"]
