"""Syntactic behavior analyses over process terms and set-expression evaluation.

All six analyses distribute over ``|`` and ignore replication.  Act and Loc_c
only look at the prefixes of the analysed process itself; FV and LC also see
through ``eval`` because the free names and constants of a spawned process are
part of what the spawning action mentions.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, NamedTuple, Optional, Union

from .aspects import Analysis, Inter, LVarStar, NamedSet, SetLit, Union_
from .errors import UnboundVariable, UnsupportedUniverse
from .model import (
    Bind, Capability, Const, Eval, In, Newloc, Out, Par, Read, Rep, Sum, Var, binders_of,
)

SetItem = Union[Const, Var, Capability]


def _item_key(item) -> tuple:
    if isinstance(item, Capability):
        return (2, int(item), "")
    return (0 if isinstance(item, Const) else 1, 0, item.name)


@dataclass(frozen=True)
class SetValue:
    """A finite set of items, optionally widened by the symbolic universe of variables."""

    items: frozenset = frozenset()
    all_vars: bool = False

    @classmethod
    def of(cls, items: Iterable = ()) -> "SetValue":
        return cls(frozenset(items))

    def union(self, other: "SetValue") -> "SetValue":
        return SetValue(self.items | other.items, self.all_vars or other.all_vars)

    def intersect(self, other: "SetValue") -> "SetValue":
        items = set(self.items & other.items)
        if self.all_vars:
            items |= {x for x in other.items if isinstance(x, Var)}
        if other.all_vars:
            items |= {x for x in self.items if isinstance(x, Var)}
        return SetValue(frozenset(items), self.all_vars and other.all_vars)

    def contains(self, item) -> bool:
        return item in self.items or (self.all_vars and isinstance(item, Var))

    def is_empty(self) -> bool:
        return not self.items and not self.all_vars

    def sorted_items(self) -> list:
        """Deterministic enumeration; refuses to enumerate the symbolic universe."""
        if self.all_vars:
            raise UnsupportedUniverse("cannot enumerate LVar*; intersect it with a finite set first")
        return sorted(self.items, key=_item_key)

    def __str__(self) -> str:
        body = ", ".join(str(x) for x in sorted(self.items, key=_item_key))
        if self.all_vars:
            body = f"{body}, LVar*" if body else "LVar*"
        return "{" + body + "}"


# -- per-action extraction ----------------------------------------------------


class ActionParts(NamedTuple):
    cap: Capability
    fv: frozenset
    bv: frozenset
    lc: frozenset
    loc: Optional[object]


def _names(locs, kind) -> frozenset:
    return frozenset(x.name for x in locs if isinstance(x, kind))


def extract_action_parts(a) -> ActionParts:
    """Capability, free variables, bound variables, constants and target of one action."""
    if isinstance(a, Newloc):
        return ActionParts(a.capability, frozenset(), frozenset((a.binder,)), frozenset(), None)
    if isinstance(a, Eval):
        fv = _fv(a.proc, None) | _names((a.target,), Var)
        lc = _lc(a.proc, None) | _names((a.target,), Const)
        return ActionParts(a.capability, fv, frozenset(), lc, a.target)
    fields = a.args if isinstance(a, Out) else a.templ
    locs = (*fields, a.target)
    return ActionParts(a.capability, _names(locs, Var), binders_of(a), _names(locs, Const), a.target)


# -- the analyses -------------------------------------------------------------


def _components(p):
    """Yield the Sum components of ``p`` with Par and Rep peeled away."""
    if isinstance(p, Par):
        yield from _components(p.left)
        yield from _components(p.right)
    elif isinstance(p, Rep):
        yield from _components(p.body)
    else:
        yield p


def _act(p) -> frozenset:
    out = set()
    for s in _components(p):
        for act, cont in s.branches:
            out.add(act.capability)
            out |= _act(cont)
    return frozenset(out)


def _loc(c: Capability, p) -> frozenset:
    out = set()
    for s in _components(p):
        for act, cont in s.branches:
            if act.capability == c and not isinstance(act, Newloc):
                out.add(act.target)
            out |= _loc(c, cont)
    return frozenset(out)


def _lc(p, cap: Optional[Capability]) -> frozenset:
    out = set()
    for s in _components(p):
        for act, cont in s.branches:
            if cap is None or act.capability == cap:
                out |= extract_action_parts(act).lc
            out |= _lc(cont, cap)
    return frozenset(out)


def _fv(p, cap: Optional[Capability]) -> frozenset:
    out = set()
    for s in _components(p):
        for act, cont in s.branches:
            parts = extract_action_parts(act)
            if cap is None or parts.cap == cap:
                out |= parts.fv
            out |= _fv(cont, cap) - parts.bv
    return frozenset(out)


def act_set(p) -> SetValue:
    return SetValue.of(_act(p))


def loc_set(c: Capability, p) -> SetValue:
    return SetValue.of(_loc(c, p))


def lc_set(p) -> SetValue:
    return SetValue.of(Const(n) for n in _lc(p, None))


def lc_set_cap(c: Capability, p) -> SetValue:
    return SetValue.of(Const(n) for n in _lc(p, c))


def fv_set(p) -> SetValue:
    return SetValue.of(Var(n) for n in _fv(p, None))


def fv_set_cap(c: Capability, p) -> SetValue:
    return SetValue.of(Var(n) for n in _fv(p, c))


def run_analysis(fn: str, proc, cap: Optional[Capability] = None) -> SetValue:
    """Dispatch by analysis name (``Act``, ``Loc``, ``LC``, ``LCc``, ``FV``, ``FVc``)."""
    if fn == "Act":
        return act_set(proc)
    if fn == "LC":
        return lc_set(proc)
    if fn == "FV":
        return fv_set(proc)
    if cap is None:
        raise ValueError(f"{fn} needs a capability")
    if fn == "Loc":
        return loc_set(cap, proc)
    if fn == "LCc":
        return lc_set_cap(cap, proc)
    if fn == "FVc":
        return fv_set_cap(cap, proc)
    raise ValueError(f"unknown analysis {fn}")


# -- set expressions ----------------------------------------------------------


def _lookup(env, name: str):
    try:
        return env[name]
    except KeyError:
        raise UnboundVariable(name) from None


def eval_set_expr(e, env) -> SetValue:
    if isinstance(e, SetLit):
        items = []
        for x in e.items:
            if isinstance(x, Var):
                x = _lookup(env, x.name)
            items.append(x)
        return SetValue.of(items)
    if isinstance(e, NamedSet):
        return SetValue.of(e.items)
    if isinstance(e, LVarStar):
        return SetValue(frozenset(), True)
    if isinstance(e, Inter):
        return eval_set_expr(e.left, env).intersect(eval_set_expr(e.right, env))
    if isinstance(e, Union_):
        return eval_set_expr(e.left, env).union(eval_set_expr(e.right, env))
    if isinstance(e, Analysis):
        proc = _lookup(env, e.var)
        if isinstance(proc, (Const, Var, Bind)):
            raise TypeError(f"{e.var} is a location variable, not a process variable")
        return run_analysis(e.fn, proc, e.cap)
    raise TypeError(f"not a set expression: {e!r}")


__all__ = [
    "SetValue", "ActionParts", "extract_action_parts", "act_set", "loc_set", "lc_set",
    "lc_set_cap", "fv_set", "fv_set_cap", "run_analysis", "eval_set_expr",
]
