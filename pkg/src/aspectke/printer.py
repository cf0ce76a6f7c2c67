"""Render ASTs in the concrete ``.akl``/``.apl`` syntax accepted by the parser."""

from __future__ import annotations

from .aspects import (
    AdviceBody, Analysis, And, Aspect, CapIn, Cut, CutEval, CutNewloc, Eq, Exists,
    Forall, Inter, IsEmpty, LocIn, LVarStar, NamedSet, Not, Or, SetLit, Test, Union_,
)
from .model import (
    Eval, In, LocatedTuple, Net, Newloc, Out, Par, Read,
    Rep, Sum, SystemState,
)


def format_loc(loc) -> str:
    return str(loc)


def _fields(locs) -> str:
    return ",".join(format_loc(x) for x in locs)


def format_action(act) -> str:
    if isinstance(act, Out):
        return f"out({_fields(act.args)})@{act.target}"
    if isinstance(act, In):
        return f"in({_fields(act.templ)})@{act.target}"
    if isinstance(act, Read):
        return f"read({_fields(act.templ)})@{act.target}"
    if isinstance(act, Eval):
        return f"eval({format_proc(act.proc)})@{act.target}"
    if isinstance(act, Newloc):
        return f"newloc(!{act.binder})"
    raise TypeError(f"not an action: {act!r}")


def _tight(proc) -> str:
    # operand of '.' or '*': anything that would otherwise re-associate gets parens
    if isinstance(proc, Sum) and len(proc.branches) <= 1:
        return format_proc(proc)
    if isinstance(proc, Rep):
        return format_proc(proc)
    return f"({format_proc(proc)})"


def format_proc(proc) -> str:
    if isinstance(proc, Sum):
        if proc.is_nil:
            return "0"
        parts = []
        for act, cont in proc.branches:
            head = format_action(act)
            parts.append(head if isinstance(cont, Sum) and cont.is_nil else f"{head}.{_tight(cont)}")
        return " + ".join(parts)
    if isinstance(proc, Par):
        right = format_proc(proc.right)
        if isinstance(proc.right, Par):
            right = f"({right})"
        return f"{format_proc(proc.left)} | {right}"
    if isinstance(proc, Rep):
        return "*" + _tight(proc.body)
    raise TypeError(f"not a process: {proc!r}")


def format_item(item) -> str:
    if isinstance(item, LocatedTuple):
        return f"{item.node} :: <{','.join(item.fields)}>"
    return f"{item.node} :: {format_proc(item.proc)}"


def format_net(net: Net, canonical: bool = False) -> str:
    items = net.canonical() if canonical else net.items
    return "\n|| ".join(format_item(it) for it in items)


# -- aspects ----------------------------------------------------------------


def format_cut(cut: Cut) -> str:
    act = cut.action
    if isinstance(act, CutEval):
        body = f"eval({act.proc_var})@{act.target}"
    elif isinstance(act, CutNewloc):
        body = f"newloc({'!' + act.binder if act.binder else '_'})"
    else:
        body = format_action(act)
    tail = f".{cut.cont_var}" if cut.cont_var else ""
    return f"{cut.source}::{body}{tail}"


def format_set(s) -> str:
    if isinstance(s, SetLit):
        return "{" + ",".join(str(x) for x in s.items) + "}"
    if isinstance(s, NamedSet):
        return s.name
    if isinstance(s, LVarStar):
        return "LVar*"
    if isinstance(s, Analysis):
        name = s.fn if s.cap is None else f"{s.fn}_{s.cap.keyword}"
        return f"{name}({s.var})"
    op = " & " if isinstance(s, Inter) else " U "

    def side(x):
        return f"({format_set(x)})" if isinstance(x, (Inter, Union_)) else format_set(x)

    return side(s.left) + op + side(s.right)


_ATOMIC = (Eq, Test, CapIn, LocIn, IsEmpty, Not)


def _wrap(c) -> str:
    return format_cond(c) if isinstance(c, _ATOMIC) else f"({format_cond(c)})"


def format_cond(c) -> str:
    if isinstance(c, Eq):
        return f"{c.left} = {c.right}"
    if isinstance(c, Test):
        return f"test({_fields(c.fields)})@{c.target}"
    if isinstance(c, Not):
        inner = format_cond(c.cond)
        return "~" + (inner if isinstance(c.cond, (Test, Not)) else f"({inner})")
    if isinstance(c, And):
        return f"{_wrap(c.left)} /\\ {_wrap(c.right)}"
    if isinstance(c, Or):
        return f"{_wrap(c.left)} \\/ {_wrap(c.right)}"
    if isinstance(c, (Exists, Forall)):
        kw = "exists" if isinstance(c, Exists) else "forall"
        return f"{kw} {c.var} in {format_set(c.domain)} : {format_cond(c.body)}"
    if isinstance(c, CapIn):
        return f"{c.cap.keyword} in {format_set(c.set)}"
    if isinstance(c, LocIn):
        return f"{c.loc} in {format_set(c.set)}"
    if isinstance(c, IsEmpty):
        return f"{format_set(c.set)} = empty"
    raise TypeError(f"not a condition: {c!r}")


def format_body(body: AdviceBody) -> str:
    parts = [f"case ({format_cond(k.cond)}) {k.suggestion};" for k in body.cases]
    parts.append(str(body.default))
    return "\n    ".join(parts)


def format_aspect(a: Aspect) -> str:
    return f"{a.name}[{format_cut(a.cut)}] =\n    {format_body(a.body)}"


def _named_sets(node, found: dict) -> None:
    if isinstance(node, NamedSet):
        found.setdefault(node.name, node)
        return
    if isinstance(node, (tuple, list)):
        for x in node:
            _named_sets(x, found)
        return
    if hasattr(node, "__dataclass_fields__"):
        for name in node.__dataclass_fields__:
            _named_sets(getattr(node, name), found)


def format_aspects(aspects) -> str:
    sets: dict = {}
    _named_sets(list(aspects), sets)
    lines = [f"set {s.name} = {{{','.join(str(x) for x in s.items)}}}" for s in sets.values()]
    lines.extend(format_aspect(a) for a in aspects)
    return "\n".join(lines)


def pretty_print(state: SystemState) -> str:
    """Render a whole system as ``let <aspects> in <net>``."""
    head = format_aspects(state.aspects)
    net = format_net(state.net)
    if head:
        return f"let\n{head}\nin\n{net}\n"
    return f"let in\n{net}\n"


__all__ = [
    "format_action", "format_aspect", "format_aspects", "format_cond", "format_cut",
    "format_item", "format_loc", "format_net", "format_proc", "format_set", "pretty_print",
]
