"""Abstract syntax for nets, processes and actions, plus net-level checks.

Locations come in four flavours: constants, variables (uses of a bound name),
binders (``!u``, a defining occurrence) and the don't-care ``_`` which is only
legal in cuts and ``test`` conditions.  Node names and tuple fields are plain
strings, since both are always constants.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from typing import Iterator, Mapping, Union


@dataclass(frozen=True)
class SourceSpan:
    file: str
    line: int
    column: int

    def __str__(self) -> str:
        return f"{self.file}:{self.line}:{self.column}"


# -- locations --------------------------------------------------------------


@dataclass(frozen=True)
class Const:
    name: str

    def __str__(self) -> str:
        return self.name


@dataclass(frozen=True)
class Var:
    name: str

    def __str__(self) -> str:
        return self.name


@dataclass(frozen=True)
class Bind:
    name: str

    def __str__(self) -> str:
        return "!" + self.name


class _DontCare:
    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self) -> str:
        return "DONT_CARE"

    def __str__(self) -> str:
        return "_"

    def __reduce__(self):
        return (_DontCare, ())


DONT_CARE = _DontCare()

Location = Union[Const, Var, Bind, _DontCare]


class Capability(enum.IntEnum):
    OUT = 0
    IN = 1
    READ = 2
    EVAL = 3
    NEWLOC = 4

    @property
    def keyword(self) -> str:
        return self.name.lower()

    @classmethod
    def from_keyword(cls, word: str) -> "Capability":
        if word not in CAPABILITY_KEYWORDS:
            raise ValueError(f"not a capability: {word}")
        return cls[word.upper()]

    def __str__(self) -> str:
        return self.keyword


CAPABILITY_KEYWORDS = frozenset(c.keyword for c in Capability)


# -- actions ----------------------------------------------------------------


@dataclass(frozen=True)
class Out:
    args: tuple[Location, ...]
    target: Location
    span: SourceSpan | None = field(default=None, compare=False, repr=False)

    capability = Capability.OUT


@dataclass(frozen=True)
class In:
    templ: tuple[Location, ...]
    target: Location
    span: SourceSpan | None = field(default=None, compare=False, repr=False)

    capability = Capability.IN


@dataclass(frozen=True)
class Read:
    templ: tuple[Location, ...]
    target: Location
    span: SourceSpan | None = field(default=None, compare=False, repr=False)

    capability = Capability.READ


@dataclass(frozen=True)
class Eval:
    proc: "Process"
    target: Location
    span: SourceSpan | None = field(default=None, compare=False, repr=False)

    capability = Capability.EVAL


@dataclass(frozen=True)
class Newloc:
    binder: str
    span: SourceSpan | None = field(default=None, compare=False, repr=False)

    capability = Capability.NEWLOC


Action = Union[Out, In, Read, Eval, Newloc]


# -- processes --------------------------------------------------------------


@dataclass(frozen=True)
class Sum:
    """Guarded choice; the empty sum is the inert process ``0``."""

    branches: tuple[tuple[Action, "Process"], ...] = ()

    @property
    def is_nil(self) -> bool:
        return not self.branches


@dataclass(frozen=True)
class Par:
    left: "Process"
    right: "Process"


@dataclass(frozen=True)
class Rep:
    body: "Process"


Process = Union[Sum, Par, Rep]

NIL = Sum()


def prefix(*steps: Action, then: Process = NIL) -> Process:
    """Build ``a1.a2...an.then`` as nested unary sums."""
    proc = then
    for act in reversed(steps):
        proc = Sum(((act, proc),))
    return proc


def choice(*procs: Process) -> Sum:
    """Merge action-prefixed processes into one guarded sum."""
    branches: list[tuple[Action, Process]] = []
    for p in procs:
        if not isinstance(p, Sum):
            raise TypeError(f"sum operand must be a guarded sum, got {type(p).__name__}")
        branches.extend(p.branches)
    return Sum(tuple(branches))


def parallel(*procs: Process) -> Process:
    if not procs:
        return NIL
    out = procs[0]
    for p in procs[1:]:
        out = Par(out, p)
    return out


# -- nets -------------------------------------------------------------------


@dataclass(frozen=True)
class LocatedProcess:
    node: str
    proc: Process
    span: SourceSpan | None = field(default=None, compare=False, repr=False)


@dataclass(frozen=True)
class LocatedTuple:
    node: str
    fields: tuple[str, ...]
    span: SourceSpan | None = field(default=None, compare=False, repr=False)

    def __post_init__(self):
        if not self.fields:
            raise ValueError("tuples have at least one field")
        for f in self.fields:
            if not isinstance(f, str):
                raise TypeError(f"tuple fields are constant names, got {f!r}")


LocatedItem = Union[LocatedProcess, LocatedTuple]


@dataclass(frozen=True)
class Net:
    """A multiset of located items.

    The tuple order is the scheduling order used by the runtime; equality as a
    multiset is available through :meth:`same_multiset`.
    """

    items: tuple[LocatedItem, ...] = ()

    def __iter__(self) -> Iterator[LocatedItem]:
        return iter(self.items)

    def __len__(self) -> int:
        return len(self.items)

    def tuples(self) -> list[LocatedTuple]:
        return [it for it in self.items if isinstance(it, LocatedTuple)]

    def processes(self) -> list[LocatedProcess]:
        return [it for it in self.items if isinstance(it, LocatedProcess)]

    def tuples_at(self, node: str) -> list[LocatedTuple]:
        return [it for it in self.items if isinstance(it, LocatedTuple) and it.node == node]

    def canonical(self) -> tuple[LocatedItem, ...]:
        from .printer import format_item

        return tuple(sorted(self.items, key=lambda it: (it.node, isinstance(it, LocatedProcess), format_item(it))))

    def same_multiset(self, other: "Net") -> bool:
        return self.canonical() == other.canonical()


Substitution = Mapping[str, Union[Const, Var, Process]]


@dataclass(frozen=True)
class SystemState:
    aspects: tuple = ()
    net: Net = Net()
    fresh_counter: int = 0


# -- substitution and congruence --------------------------------------------


def _subst_loc(loc: Location, subst: Substitution, bound: frozenset[str]) -> Location:
    if isinstance(loc, Var) and loc.name in subst and loc.name not in bound:
        value = subst[loc.name]
        if not isinstance(value, (Const, Var)):
            raise TypeError(f"cannot substitute a process for location variable {loc.name}")
        return value
    return loc


def binders_of(action: Action) -> frozenset[str]:
    if isinstance(action, (In, Read)):
        return frozenset(f.name for f in action.templ if isinstance(f, Bind))
    if isinstance(action, Newloc):
        return frozenset((action.binder,))
    return frozenset()


def _subst_action(action: Action, subst: Substitution, bound: frozenset[str]) -> Action:
    if isinstance(action, Out):
        return Out(tuple(_subst_loc(a, subst, bound) for a in action.args),
                   _subst_loc(action.target, subst, bound), action.span)
    if isinstance(action, (In, Read)):
        cls = type(action)
        return cls(tuple(_subst_loc(a, subst, bound) for a in action.templ),
                   _subst_loc(action.target, subst, bound), action.span)
    if isinstance(action, Eval):
        return Eval(_subst_proc(action.proc, subst, bound),
                    _subst_loc(action.target, subst, bound), action.span)
    return action


def _subst_proc(proc: Process, subst: Substitution, bound: frozenset[str]) -> Process:
    if isinstance(proc, Sum):
        return Sum(tuple(
            (_subst_action(act, subst, bound), _subst_proc(cont, subst, bound | binders_of(act)))
            for act, cont in proc.branches
        ))
    if isinstance(proc, Par):
        return Par(_subst_proc(proc.left, subst, bound), _subst_proc(proc.right, subst, bound))
    return Rep(_subst_proc(proc.body, subst, bound))


def apply_substitution(proc: Process, subst: Substitution) -> Process:
    """Replace free occurrences of the substitution's variables in ``proc``.

    A binder of the same name shadows the substitution in its continuation.
    """
    if not subst:
        return proc
    return _subst_proc(proc, subst, frozenset())


def _flatten(proc: Process) -> Iterator[Process]:
    if isinstance(proc, Par):
        yield from _flatten(proc.left)
        yield from _flatten(proc.right)
    else:
        yield proc


def lift_to_net(net: Net) -> Net:
    """Split ``l::(P|Q)`` into ``l::P || l::Q`` until no process root is a Par."""
    items: list[LocatedItem] = []
    for it in net.items:
        if isinstance(it, LocatedProcess) and isinstance(it.proc, Par):
            items.extend(LocatedProcess(it.node, p, it.span) for p in _flatten(it.proc))
        else:
            items.append(it)
    return Net(tuple(items))


# -- validation -------------------------------------------------------------


@dataclass(frozen=True)
class Violation:
    rule: str
    message: str
    node: str | None = None
    action: object | None = None
    span: SourceSpan | None = None

    def __str__(self) -> str:
        where = f"{self.span}: " if self.span else ""
        at = f" at {self.node}" if self.node else ""
        return f"{where}[{self.rule}]{at}: {self.message}"


def _action_violations(action: Action, node: str, bound: frozenset[str]) -> Iterator[Violation]:
    from .printer import format_action

    def v(rule: str, msg: str) -> Violation:
        return Violation(rule, msg, node, format_action(action), action.span)

    if isinstance(action, Newloc):
        return
    fields = action.args if isinstance(action, Out) else action.templ if isinstance(action, (In, Read)) else ()
    for loc in (*fields, action.target):
        if loc is DONT_CARE:
            yield v("dont-care-in-program", "don't-care '_' may only appear in cuts and tests")
    if isinstance(action.target, Bind):
        yield v("binder-as-target", f"target cannot be a defining occurrence !{action.target.name}")
    if isinstance(action, Out):
        for a in action.args:
            if isinstance(a, Bind):
                yield v("binder-in-out", f"out cannot carry the defining occurrence !{a.name}")
    if isinstance(action, (In, Read)):
        seen: set[str] = set()
        for a in action.templ:
            if isinstance(a, Bind):
                if a.name in seen:
                    yield v("duplicate-binder", f"duplicate binder {a.name}")
                seen.add(a.name)
        uses = {a.name for a in (*action.templ, action.target) if isinstance(a, Var)}
        for name in sorted(uses & seen):
            yield v("binder-free-clash", f"{name} is both bound and used in one action")
    for loc in (*fields, action.target):
        if isinstance(loc, Var) and loc.name not in bound:
            if isinstance(action, (In, Read)) and loc.name in binders_of(action):
                continue  # already reported as a clash
            yield v("free-variable", f"variable {loc.name} is not in scope of a defining occurrence")


def _proc_violations(proc: Process, node: str, bound: frozenset[str]) -> Iterator[Violation]:
    if isinstance(proc, Sum):
        for act, cont in proc.branches:
            yield from _action_violations(act, node, bound)
            if isinstance(act, Eval):
                yield from _proc_violations(act.proc, node, bound)
            yield from _proc_violations(cont, node, bound | binders_of(act))
    elif isinstance(proc, Par):
        yield from _proc_violations(proc.left, node, bound)
        yield from _proc_violations(proc.right, node, bound)
    else:
        yield from _proc_violations(proc.body, node, bound)


def validate_process(proc: Process, node: str = "?", bound: frozenset[str] = frozenset()) -> list[Violation]:
    return list(_proc_violations(proc, node, bound))


def validate_net(net: Net) -> list[Violation]:
    """Closedness and per-action well-formedness; violations are returned, not raised."""
    out: list[Violation] = []
    for it in net.items:
        if isinstance(it, LocatedProcess):
            out.extend(_proc_violations(it.proc, it.node, frozenset()))
    return out
