"""Concrete syntax for systems (``.akl``) and aspect files (``.apl``).

Grammar summary (``--`` starts a line comment)::

    system   := "let" decl* "in" net | net
    decl     := "set" IDENT "=" "{" item ("," item)* "}" | aspect
    net      := located ("||" located)*
    located  := IDENT "::" ("<" field ("," field)* ">" | proc)
    proc     := sum ("|" sum)*
    sum      := prefixed ("+" prefixed)*
    prefixed := action ("." prefixed)? | "0" | "*" prefixed | "(" proc ")"
    aspect   := IDENT "[" cut "]" "=" body
    body     := "case" "(" cond ")" sbody ";" body | sbody

Name resolution inside processes is lexical: an identifier is a variable when
a defining occurrence ``!u`` (or ``newloc(!u)``) to its left is in scope, and a
constant otherwise.  Inside cuts, lowercase-initial identifiers are location
variables and capitalised ones are constants.  Inside conditions, names bound
by the cut or by an enclosing quantifier are variables; everything else is a
constant.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

from .aspects import (
    AdviceBody, Analysis, And, Aspect, CapIn, Case, Cut, CutEval, CutNewloc, Eq, Exists,
    Forall, Inter, IsEmpty, LocIn, LVarStar, NamedSet, Not, Or, SetLit, Suggestion, Test,
    Union_,
)
from .errors import ParseError, ValidationError
from .model import (
    CAPABILITY_KEYWORDS, DONT_CARE, NIL, Bind, Capability, Const, Eval, In, LocatedProcess,
    LocatedTuple, Net, Newloc, Out, Par, Read, Rep, SourceSpan, Sum, SystemState, Var,
    validate_net, validate_process,
)
from .printer import pretty_print

KEYWORDS = frozenset({
    "out", "in", "read", "eval", "newloc", "let", "case", "break", "proceed",
    "test", "exists", "forall", "set",
})

_TOKEN_RE = re.compile(r"""
    (?P<ws>[ \t\r\n]+)
  | (?P<comment>--[^\n]*)
  | (?P<ident>[A-Za-z][A-Za-z0-9_$']*)
  | (?P<zero>0)
  | (?P<sym>::|\|\||/\\|\\/|[|~&(){}<>,.@!+*=;:\[\]_])
""", re.VERBOSE)

_ANALYSIS_RE = re.compile(r"^(Act|FV|LC|Loc|FVc|LCc)(?:_(out|in|read|eval|newloc))?$")


@dataclass(frozen=True)
class Token:
    kind: str  # "ident", "kw", "sym", "zero", "eof"
    text: str
    line: int
    col: int


def tokenize(text: str, file: str = "<string>") -> list[Token]:
    tokens: list[Token] = []
    pos, line, line_start = 0, 1, 0
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if not m:
            raise ParseError(f"unexpected character {text[pos]!r}",
                             SourceSpan(file, line, pos - line_start + 1))
        kind = m.lastgroup
        tok = m.group()
        if kind == "ident" and tok in KEYWORDS:
            kind = "kw"
        if kind not in ("ws", "comment"):
            tokens.append(Token(kind, tok, line, pos - line_start + 1))
        nl = tok.count("\n")
        if nl:
            line += nl
            line_start = pos + tok.rindex("\n") + 1
        pos = m.end()
    tokens.append(Token("eof", "", line, pos - line_start + 1))
    return tokens


def _is_cut_var(name: str) -> bool:
    return name[0].islower()


class _Parser:
    def __init__(self, text: str, file: str):
        self.file = file
        self.toks = tokenize(text, file)
        self.i = 0
        self.named_sets: dict[str, NamedSet] = {}

    # -- token plumbing --

    @property
    def tok(self) -> Token:
        return self.toks[self.i]

    def peek(self, k: int = 1) -> Token:
        return self.toks[min(self.i + k, len(self.toks) - 1)]

    def span(self, tok: Token | None = None) -> SourceSpan:
        tok = tok or self.tok
        return SourceSpan(self.file, tok.line, tok.col)

    def at(self, *texts: str) -> bool:
        return self.tok.kind in ("sym", "kw", "zero") and self.tok.text in texts

    def error(self, msg: str, expected=()) -> ParseError:
        got = self.tok.text or "end of input"
        return ParseError(f"{msg}, found {got!r}", self.span(), frozenset(expected))

    def expect(self, text: str) -> Token:
        if not self.at(text):
            raise self.error(f"expected {text!r}", {text})
        tok = self.tok
        self.i += 1
        return tok

    def accept(self, text: str) -> bool:
        if self.at(text):
            self.i += 1
            return True
        return False

    def ident(self, what: str = "identifier") -> str:
        if self.tok.kind != "ident":
            raise self.error(f"expected {what}", {what})
        text = self.tok.text
        self.i += 1
        return text

    def name(self) -> str:
        """An identifier, or a keyword used as a constant (``<Manager,RDB,in>``)."""
        if self.tok.kind in ("ident", "kw"):
            text = self.tok.text
            self.i += 1
            return text
        raise self.error("expected a name", {"identifier"})

    # -- fields --

    def raw_fields(self, allow_wild: bool) -> list[tuple[str, str]]:
        self.expect("(")
        out = [self.raw_field(allow_wild)]
        while self.accept(","):
            out.append(self.raw_field(allow_wild))
        self.expect(")")
        return out

    def raw_field(self, allow_wild: bool) -> tuple[str, str]:
        if self.accept("!"):
            return ("bind", self.ident("binder name"))
        if self.at("_"):
            if not allow_wild:
                raise self.error("'_' is only allowed in cuts and tests")
            self.i += 1
            return ("wild", "_")
        return ("name", self.name())

    # -- processes --

    def proc(self, scope: frozenset[str]):
        left = self.sum(scope)
        while self.at("|"):
            self.i += 1
            left = Par(left, self.sum(scope))
        return left

    def sum(self, scope: frozenset[str]):
        start = self.tok
        first = self.prefixed(scope)
        if not self.at("+"):
            return first
        parts = [first]
        while self.accept("+"):
            parts.append(self.prefixed(scope))
        branches = []
        for p in parts:
            if not isinstance(p, Sum):
                raise ParseError("operands of '+' must be action-prefixed", self.span(start))
            branches.extend(p.branches)
        return Sum(tuple(branches))

    def prefixed(self, scope: frozenset[str]):
        if self.accept("0"):
            return NIL
        if self.accept("*"):
            return Rep(self.prefixed(scope))
        if self.accept("("):
            p = self.proc(scope)
            self.expect(")")
            return p
        if self.at("out", "in", "read", "eval", "newloc"):
            act = self.action(scope)
            inner = scope
            if isinstance(act, (In, Read)):
                inner = scope | {f.name for f in act.templ if isinstance(f, Bind)}
            elif isinstance(act, Newloc):
                inner = scope | {act.binder}
            cont = self.prefixed(inner) if self.accept(".") else NIL
            return Sum(((act, cont),))
        raise self.error("expected a process", {"0", "*", "(", "out", "in", "read", "eval", "newloc"})

    def resolve(self, kind: str, text: str, scope: frozenset[str]):
        if kind == "bind":
            return Bind(text)
        if kind == "wild":
            return DONT_CARE
        return Var(text) if text in scope else Const(text)

    def loc_after_at(self, scope: frozenset[str]):
        self.expect("@")
        return self.resolve("name", self.name(), scope)

    def action(self, scope: frozenset[str]):
        tok = self.tok
        sp = self.span()
        self.i += 1
        kw = tok.text
        if kw == "newloc":
            self.expect("(")
            self.expect("!")
            name = self.ident("binder name")
            self.expect(")")
            return Newloc(name, sp)
        if kw == "eval":
            self.expect("(")
            body = self.proc(scope)
            self.expect(")")
            return Eval(body, self.loc_after_at(scope), sp)
        raw = self.raw_fields(allow_wild=False)
        own = frozenset(t for k, t in raw if k == "bind")
        # the action's own binder names resolve as variables so that clashes surface in validation
        fields = tuple(self.resolve(k, t, scope | own) for k, t in raw)
        target = self.loc_after_at(scope | own)
        cls = {"out": Out, "in": In, "read": Read}[kw]
        return cls(fields, target, sp)

    # -- nets --

    def net(self) -> Net:
        items = [self.located()]
        while self.accept("||"):
            items.append(self.located())
        return Net(tuple(items))

    def located(self):
        sp = self.span()
        node = self.name()
        self.expect("::")
        if self.accept("<"):
            fields = [self.name()]
            while self.accept(","):
                fields.append(self.name())
            self.expect(">")
            return LocatedTuple(node, tuple(fields), sp)
        return LocatedProcess(node, self.proc(frozenset()), sp)

    # -- aspects --

    def decls(self, stop: set[str]) -> list[Aspect]:
        aspects: list[Aspect] = []
        while not (self.tok.kind == "eof" or self.at(*stop)):
            if self.accept("set"):
                self.set_decl()
            else:
                aspects.append(self.aspect())
        return aspects

    def set_decl(self) -> None:
        sp = self.span()
        name = self.ident("set name")
        self.expect("=")
        self.expect("{")
        items = [Const(self.name())]
        while self.accept(","):
            items.append(Const(self.name()))
        self.expect("}")
        if name in self.named_sets:
            raise ParseError(f"set {name} declared twice", sp)
        self.named_sets[name] = NamedSet(name, tuple(items))

    def cut_loc(self):
        if self.accept("!"):
            return Bind(self.ident("binder name"))
        if self.accept("_"):
            return DONT_CARE
        text = self.name()
        if self.toks[self.i - 1].kind == "ident" and _is_cut_var(text):
            return Var(text)
        return Const(text)

    def cut_fields(self) -> tuple:
        self.expect("(")
        out = [self.cut_loc()]
        while self.accept(","):
            out.append(self.cut_loc())
        self.expect(")")
        return tuple(out)

    def cut(self) -> Cut:
        source = self.cut_loc()
        self.expect("::")
        if not self.at("out", "in", "read", "eval", "newloc"):
            raise self.error("expected a cut action", {"out", "in", "read", "eval", "newloc"})
        kw = self.tok.text
        self.i += 1
        if kw == "newloc":
            self.expect("(")
            binder = None
            if self.accept("!"):
                binder = self.ident("binder name")
            else:
                self.expect("_")
            self.expect(")")
            act = CutNewloc(binder)
        elif kw == "eval":
            self.expect("(")
            pv = self.ident("process variable")
            self.expect(")")
            self.expect("@")
            act = CutEval(pv, self.cut_loc())
        else:
            fields = self.cut_fields()
            self.expect("@")
            target = self.cut_loc()
            act = {"out": Out, "in": In, "read": Read}[kw](fields, target)
        cont = None
        if self.accept("."):
            cont = self.ident("continuation variable")
        return Cut(source, act, cont)

    def aspect(self) -> Aspect:
        sp = self.span()
        name = self.ident("aspect name")
        self.expect("[")
        cut = self.cut()
        self.expect("]")
        self.expect("=")
        bound = _cut_location_names(cut)
        cases = []
        while self.accept("case"):
            self.expect("(")
            cond = self.cond(bound)
            self.expect(")")
            sugg = self.sbody()
            self.expect(";")
            cases.append(Case(cond, sugg))
        return Aspect(name, cut, AdviceBody(tuple(cases), self.sbody()), sp)

    def sbody(self) -> Suggestion:
        if self.accept("break"):
            return Suggestion.BREAK
        if self.accept("proceed"):
            return Suggestion.PROCEED
        raise self.error("expected break or proceed", {"break", "proceed"})

    # -- conditions --

    def cond(self, bound: frozenset[str]):
        left = self.conj(bound)
        while self.accept("\\/"):
            left = Or(left, self.conj(bound))
        return left

    def conj(self, bound: frozenset[str]):
        left = self.unary(bound)
        while self.accept("/\\"):
            left = And(left, self.unary(bound))
        return left

    def unary(self, bound: frozenset[str]):
        if self.accept("~"):
            return Not(self.unary(bound))
        if self.at("exists", "forall"):
            cls = Exists if self.tok.text == "exists" else Forall
            self.i += 1
            var = self.ident("quantified variable")
            self.expect("in")
            dom = self.set_expr(bound)
            self.expect(":")
            return cls(var, dom, self.cond(bound | {var}))
        if self.accept("test"):
            raw = self.raw_fields(allow_wild=True)
            fields = tuple(self.resolve(k, t, bound) for k, t in raw)
            self.expect("@")
            return Test(fields, self.resolve("name", self.name(), bound))
        if self.tok.kind == "kw" and self.tok.text in CAPABILITY_KEYWORDS and self.peek().text == "in" \
                and self.peek().kind == "kw":
            cap = Capability.from_keyword(self.tok.text)
            self.i += 2
            return CapIn(cap, self.set_expr(bound))
        if self.at("("):
            save = self.i
            try:
                self.i += 1
                c = self.cond(bound)
                self.expect(")")
                return c
            except ParseError:
                self.i = save
            return self.set_condition(bound)
        if self.starts_set():
            return self.set_condition(bound)
        left = self.resolve("name", self.name(), bound)
        if self.accept("="):
            return Eq(left, self.resolve("name", self.name(), bound))
        if self.accept("in"):
            return LocIn(left, self.set_expr(bound))
        raise self.error("expected '=' or 'in' after location", {"=", "in"})

    def set_condition(self, bound):
        s = self.set_expr(bound)
        self.expect("=")
        if not (self.tok.kind == "ident" and self.tok.text == "empty"):
            raise self.error("expected 'empty'", {"empty"})
        self.i += 1
        return IsEmpty(s)

    def starts_set(self) -> bool:
        tok = self.tok
        if self.at("{", "("):
            return True
        if tok.kind != "ident":
            return False
        if tok.text == "LVar" and self.peek().text == "*":
            return True
        if _ANALYSIS_RE.match(tok.text) and self.peek().text == "(":
            return True
        return tok.text in self.named_sets

    def set_expr(self, bound):
        left = self.set_inter(bound)
        while self.tok.kind == "ident" and self.tok.text == "U":
            self.i += 1
            left = Union_(left, self.set_inter(bound))
        return left

    def set_inter(self, bound):
        left = self.set_atom(bound)
        while self.accept("&"):
            left = Inter(left, self.set_atom(bound))
        return left

    def set_atom(self, bound):
        sp = self.span()
        if self.accept("("):
            s = self.set_expr(bound)
            self.expect(")")
            return s
        if self.accept("{"):
            items = []
            if not self.at("}"):
                items.append(self.set_item(bound))
                while self.accept(","):
                    items.append(self.set_item(bound))
            self.expect("}")
            return SetLit(tuple(items))
        text = self.ident("set expression")
        if text == "LVar":
            self.expect("*")
            return LVarStar()
        m = _ANALYSIS_RE.match(text)
        if m and self.at("("):
            fn, cap = m.group(1), m.group(2)
            # the subscripted spellings LC_c and FV_c map onto LCc / FVc
            if fn in ("LC", "FV") and cap:
                fn += "c"
            if fn in ("Loc", "FVc", "LCc") and not cap:
                raise ParseError(f"{fn} needs a capability suffix, e.g. {fn}_in", sp)
            if fn in ("Act",) and cap:
                raise ParseError("Act takes no capability", sp)
            self.expect("(")
            var = self.ident("process variable")
            self.expect(")")
            return Analysis(fn, var, Capability.from_keyword(cap) if cap else None)
        if text in self.named_sets:
            return self.named_sets[text]
        raise ParseError(f"unknown set {text!r}", sp, frozenset({"declared set name"}))

    def set_item(self, bound):
        if self.tok.kind == "kw" and self.tok.text in CAPABILITY_KEYWORDS:
            cap = Capability.from_keyword(self.tok.text)
            self.i += 1
            return cap
        return self.resolve("name", self.name(), bound)

    def finish(self):
        if self.tok.kind != "eof":
            raise self.error("unexpected trailing input", {"end of input"})


def _cut_location_names(cut: Cut) -> frozenset[str]:
    names = set()
    act = cut.action
    locs = [cut.source]
    if isinstance(act, (Out, In, Read)):
        locs.extend(act.args if isinstance(act, Out) else act.templ)
        locs.append(act.target)
    elif isinstance(act, CutEval):
        locs.append(act.target)
        names.add(act.proc_var)  # so misuse as a location is reported, not read as a constant
    elif isinstance(act, CutNewloc) and act.binder:
        names.add(act.binder)
    if cut.cont_var:
        names.add(cut.cont_var)
    for loc in locs:
        if isinstance(loc, (Var, Bind)):
            names.add(loc.name)
    return frozenset(names)


def _validate(aspects, net=None):
    from .weaver import validate_aspect

    violations = []
    if net is not None:
        violations.extend(validate_net(net))
    for a in aspects:
        violations.extend(validate_aspect(a))
    if violations:
        raise ValidationError(violations)


def parse_system(text: str, file: str = "<string>", validate: bool = True) -> SystemState:
    """Parse ``let <aspects> in <net>`` (or a bare net) into a :class:`SystemState`."""
    p = _Parser(text, file)
    aspects: list[Aspect] = []
    if p.accept("let"):
        aspects = p.decls({"in"})
        p.expect("in")
    net = p.net()
    p.finish()
    if validate:
        _validate(aspects, net)
    return SystemState(tuple(aspects), net, 0)


def parse_aspect_file(text: str, file: str = "<string>", validate: bool = True) -> list[Aspect]:
    p = _Parser(text, file)
    aspects = p.decls(set())
    p.finish()
    if validate:
        _validate(aspects)
    return aspects


def parse_net(text: str, file: str = "<string>") -> Net:
    p = _Parser(text, file)
    net = p.net()
    p.finish()
    return net


def parse_process(text: str, free_vars=(), file: str = "<string>", validate: bool = True):
    """Parse a bare process term; names in ``free_vars`` are read as variables."""
    p = _Parser(text, file)
    proc = p.proc(frozenset(free_vars))
    p.finish()
    if validate:
        bad = [v for v in validate_process(proc, bound=frozenset(free_vars))]
        if bad:
            raise ValidationError(bad)
    return proc


def parse_action(text: str, free_vars=(), file: str = "<string>"):
    p = _Parser(text, file)
    if not p.at("out", "in", "read", "eval", "newloc"):
        raise p.error("expected an action")
    act = p.action(frozenset(free_vars))
    p.finish()
    return act


def parse_cut(text: str, file: str = "<string>") -> Cut:
    p = _Parser(text, file)
    cut = p.cut()
    p.finish()
    return cut


__all__ = [
    "Token", "tokenize", "parse_system", "parse_aspect_file", "parse_net", "parse_process",
    "parse_action", "parse_cut", "pretty_print",
]
