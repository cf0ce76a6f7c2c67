"""Hypothesis generators for processes, nets, aspects and join points.

Constants are capitalised and variables are lowercase, which is the shape the
concrete syntax resolves to when names are declared in scope.
"""

from __future__ import annotations

from hypothesis import strategies as st

from aspectke.aspects import (
    AdviceBody, Analysis, And, Aspect, Case, CapIn, Cut, Eq, IsEmpty, LocIn, Not, Or, SetLit,
    Suggestion, Test,
)
from aspectke.matching import JoinPoint
from aspectke.model import (
    DONT_CARE, NIL, Bind, Capability, Const, Eval, In, LocatedProcess, LocatedTuple, Net, Newloc,
    Out, Par, Read, Rep, Sum, Var,
)

CONSTS = ("Alice", "Bob", "EHDB", "Cell")
NODES = ("Alice", "Bob", "EHDB")
VAR_POOL = ("u", "v", "w", "x", "y", "z")


# -- processes ----------------------------------------------------------------


def _loc(draw, scope: frozenset) -> object:
    if scope and draw(st.booleans()):
        return Var(draw(st.sampled_from(sorted(scope))))
    return Const(draw(st.sampled_from(CONSTS)))


@st.composite
def actions(draw, scope: frozenset = frozenset(), depth: int = 2):
    """One action plus the names it binds for its continuation."""
    kinds = ["out", "in", "read", "newloc"] + (["eval"] if depth > 0 else [])
    kind = draw(st.sampled_from(kinds))
    if kind == "newloc":
        u = draw(st.sampled_from(VAR_POOL))
        return Newloc(u), frozenset({u})
    if kind == "eval":
        body = draw(processes(scope, depth - 1))
        return Eval(body, _loc(draw, scope)), frozenset()
    n = draw(st.integers(1, 3))
    if kind == "out":
        return Out(tuple(_loc(draw, scope) for _ in range(n)), _loc(draw, scope)), frozenset()
    # binders must be distinct and must not also occur free in the same action
    binders = draw(st.lists(st.sampled_from(VAR_POOL), max_size=n, unique=True))
    free_scope = scope - set(binders)
    fields = [Bind(b) for b in binders]
    fields += [_loc(draw, free_scope) for _ in range(n - len(binders))]
    fields = draw(st.permutations(fields))
    cls = In if kind == "in" else Read
    return cls(tuple(fields), _loc(draw, free_scope)), frozenset(binders)


@st.composite
def sums(draw, scope: frozenset = frozenset(), depth: int = 2):
    n = draw(st.integers(0 if depth == 0 else 1, 2))
    branches = []
    for _ in range(n):
        act, bound = draw(actions(scope, depth))
        cont = draw(processes(scope | bound, depth - 1)) if depth > 0 else NIL
        branches.append((act, cont))
    return Sum(tuple(branches))


@st.composite
def processes(draw, scope: frozenset = frozenset(), depth: int = 2):
    if depth <= 0:
        return draw(sums(scope, 0))
    shape = draw(st.sampled_from(["sum", "sum", "sum", "par", "rep"]))
    if shape == "par":
        return Par(draw(processes(scope, depth - 1)), draw(processes(scope, depth - 1)))
    if shape == "rep":
        return Rep(draw(sums(scope, depth - 1)))
    return draw(sums(scope, depth))


def open_processes(depth: int = 2):
    """Processes that may use the free variables ``x`` and ``y``."""
    return processes(frozenset({"x", "y"}), depth)


# -- nets ---------------------------------------------------------------------


alphabet = st.sampled_from(("a", "b", "c"))
field_names = st.sampled_from(CONSTS)


@st.composite
def located_tuples(draw, nodes=NODES):
    return LocatedTuple(draw(st.sampled_from(nodes)),
                        tuple(draw(st.lists(field_names, min_size=1, max_size=3))))


@st.composite
def nets(draw, max_procs: int = 3, max_tuples: int = 4, depth: int = 2):
    items = draw(st.lists(located_tuples(), max_size=max_tuples))
    for _ in range(draw(st.integers(0, max_procs))):
        items.append(LocatedProcess(draw(st.sampled_from(NODES)), draw(processes(frozenset(), depth))))
    return Net(tuple(draw(st.permutations(items))))


# -- aspects and join points --------------------------------------------------


STORE = Net((
    LocatedTuple("Store", ("Alice", "EHDB")),
    LocatedTuple("Store", ("Bob", "Cell")),
    LocatedTuple("Store", ("Alice",)),
))


def _cut_loc(draw, var_name: str):
    choice = draw(st.sampled_from(["var", "const", "wild"]))
    if choice == "var":
        return Var(var_name)
    if choice == "const":
        return Const(draw(st.sampled_from(CONSTS)))
    return DONT_CARE


@st.composite
def _conditions(draw, plain: tuple, procs: tuple, depth: int = 2):
    def operand():
        if plain and draw(st.booleans()):
            return Var(draw(st.sampled_from(plain)))
        return Const(draw(st.sampled_from(CONSTS)))

    leaves = ["eq", "test"] + (["capin", "locin", "empty"] if procs else [])
    kinds = leaves + (["not", "and", "or"] if depth > 0 else [])
    kind = draw(st.sampled_from(kinds))
    if kind == "eq":
        return Eq(operand(), operand())
    if kind == "test":
        n = draw(st.integers(1, 2))
        fields = tuple(DONT_CARE if draw(st.booleans()) else operand() for _ in range(n))
        return Test(fields, Const("Store"))
    if kind == "capin":
        return CapIn(draw(st.sampled_from(list(Capability))), Analysis("Act", procs[0]))
    if kind == "locin":
        return LocIn(operand(), Analysis("Loc", procs[0], draw(st.sampled_from(list(Capability)))))
    if kind == "empty":
        return IsEmpty(SetLit((Const(draw(st.sampled_from(CONSTS))),)))
    if kind == "not":
        return Not(draw(_conditions(plain, procs, depth - 1)))
    cls = And if kind == "and" else Or
    return cls(draw(_conditions(plain, procs, depth - 1)), draw(_conditions(plain, procs, depth - 1)))


suggestions = st.sampled_from(list(Suggestion))


@st.composite
def aspects(draw, name: str | None = None):
    """A well-formed aspect trapping out or read actions."""
    if name is None:
        name = draw(st.sampled_from(["Ka", "Kb", "Kc", "Kd", "Ke"]))
    kind = draw(st.sampled_from(["out", "read"]))
    source = _cut_loc(draw, "user")
    n = draw(st.integers(1, 2))
    fields = tuple(_cut_loc(draw, f"f{i}") for i in range(n))
    target = _cut_loc(draw, "dest")
    if kind == "out":
        cut = Cut(source, Out(fields, target))
        procs: tuple = ()
    else:
        cut = Cut(source, Read(fields, target), "X")
        procs = ("X",)
    plain = tuple(sorted({x.name for x in (source, *fields, target) if isinstance(x, Var)}))
    cases = tuple(
        Case(draw(_conditions(plain, procs)), draw(suggestions))
        for _ in range(draw(st.integers(0, 2)))
    )
    return Aspect(name, cut, AdviceBody(cases, draw(suggestions)))


@st.composite
def aspect_lists(draw, max_size: int = 4):
    n = draw(st.integers(0, max_size))
    return [draw(aspects(name=f"K{i}")) for i in range(n)]


@st.composite
def join_points(draw):
    node = draw(st.sampled_from(NODES))
    n = draw(st.integers(1, 2))
    if draw(st.booleans()):
        act = Out(tuple(Const(draw(field_names)) for _ in range(n)), Const(draw(st.sampled_from(CONSTS))))
        return JoinPoint(node, act)
    templ = tuple(Bind(f"b{i}") if draw(st.booleans()) else Const(draw(field_names)) for i in range(n))
    act = Read(templ, Const(draw(st.sampled_from(CONSTS))))
    return JoinPoint(node, act, draw(sums(frozenset(), 1)))
