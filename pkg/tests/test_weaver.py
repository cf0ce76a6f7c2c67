from __future__ import annotations

import pytest

from aspectke.aspects import (
    AdviceBody, Aspect, Case, Cut, Eq, Exists, Forall, IsEmpty, LVarStar, SetLit, Suggestion, Test,
)
from aspectke.errors import ParseError, UnboundVariable, UnsupportedUniverse
from aspectke.matching import JoinPoint
from aspectke.model import DONT_CARE, Bind, Capability, Const, Net, Out, Read, Var
from aspectke.parser import parse_aspect_file, parse_net, parse_system
from aspectke.weaver import Decision, advise, evaluate_condition, phi, validate_aspect
from conftest import FIXTURES


def _load(rel: str):
    return parse_aspect_file((FIXTURES / rel).read_text(encoding="utf-8"))


def _net(rel: str) -> Net:
    return parse_system((FIXTURES / rel).read_text(encoding="utf-8")).net


def _parse_unchecked(text: str):
    return parse_aspect_file(text, validate=False)[0]


DAC_NET = _net("dac/nurse_program.akl")
RBAC_NET = _net("rbac/nurse_program.akl")
A1_OUT = _load("running_example/a1_out.apl")[0]


def C(*names):
    return tuple(Const(n) for n in names)


class TestValidation:
    def test_dac_aspect_is_well_formed(self):
        assert validate_aspect(_load("dac/dac.apl")[0]) == []

    @pytest.mark.parametrize("rel", sorted(p.relative_to(FIXTURES).as_posix() for p in FIXTURES.glob("*/*.apl")))
    def test_all_fixture_aspects_validate(self, rel):
        for a in _load(rel):
            assert validate_aspect(a) == [], a.name

    @pytest.mark.parametrize("text, rule", [
        ("D[u::in(!x,!x)@l] = break", "duplicate-cut-variable"),
        ("D[u::read(_,!r,_)@EHDB] = case (test(u,r,read)@DAC) proceed; break",
         "banged-variable-outside-set"),
        ("D[u::read(_,!r)@EHDB] = case (r = Alice) proceed; break", "banged-variable-outside-set"),
        ("D[u::eval(Y)@l] = case (Y = l) break; proceed", "process-variable-as-location"),
        ("D[u::out(x)@l] = case (exists x in {a}: x = u) break; proceed",
         "quantifier-shadows-cut-variable"),
        ("D[u::out(!x)@l] = break", "binder-in-out-cut"),
        ("D[u::read(x)@!l] = break", "binder-as-target"),
        ("D[u::eval(Y)@l] = case (out in Act(Z)) break; proceed", "unbound-variable"),
    ])
    def test_rules(self, text, rule):
        assert rule in [v.rule for v in validate_aspect(_parse_unchecked(text))]

    @pytest.mark.parametrize("cond, rule", [
        (Test((Var("z"),), Const("RDB")), "unbound-variable"),
        (Eq(Var("u"), DONT_CARE), "dont-care-outside-test"),
        (Test((Var("u"),), DONT_CARE), "dont-care-as-target"),
    ])
    def test_rules_on_built_conditions(self, cond, rule):
        # the concrete syntax cannot express these: free names read as constants
        # and '_' is refused outside test fields
        cut = Cut(Var("u"), Out((Var("x"),), Const("l")))
        a = Aspect("D", cut, AdviceBody((Case(cond, Suggestion.BREAK),), Suggestion.PROCEED))
        assert [v.rule for v in validate_aspect(a)] == [rule]

    @pytest.mark.parametrize("text", [
        "D[u::out(x)@l] = case (u = _) break; proceed",
        "D[u::out(x)@l] = case (test(u)@_) break; proceed",
    ])
    def test_dont_care_misuse_is_a_syntax_error(self, text):
        with pytest.raises(ParseError):
            parse_aspect_file(text)

    def test_banged_variable_allowed_in_set_position(self):
        (a,) = _load("secondary_use/blind_reads.apl")[2:3]
        assert a.name == "A_p6_3"
        assert validate_aspect(a) == []


class TestConditions:
    def test_dac_tests(self):
        read = Test((Const("NsOlsen"), Const("MedicalRecord"), Const("read")), Const("DAC"))
        out = Test((Const("NsOlsen"), Const("MedicalRecord"), Const("out")), Const("DAC"))
        assert evaluate_condition(read, {}, DAC_NET) is True
        assert evaluate_condition(out, {}, DAC_NET) is False

    def test_rbac_exists(self):
        (a,) = [x for x in _load("rbac/rbac.apl") if x.name == "A_p1_C1"]
        cond = a.body.cases[0].cond
        assert isinstance(cond, Exists)
        env = {"user": Const("DrSmith"), "recordtype": Const("MedicalRecord")}
        assert evaluate_condition(cond, env, RBAC_NET) is True
        assert evaluate_condition(cond, {**env, "user": Const("Nobody")}, RBAC_NET) is False

    def test_dont_care_field_matches_anything(self):
        t = Test((Const("NsOlsen"), DONT_CARE, Const("read")), Const("DAC"))
        assert evaluate_condition(t, {}, DAC_NET)
        assert not evaluate_condition(Test((DONT_CARE,), Const("DAC")), {}, DAC_NET)  # arity

    def test_variable_target_is_never_a_node(self):
        t = Test((DONT_CARE, DONT_CARE, DONT_CARE), Var("db"))
        assert evaluate_condition(t, {"db": Var("x")}, DAC_NET) is False
        assert evaluate_condition(t, {"db": Const("DAC")}, DAC_NET) is True

    def test_capability_quantifier_value(self):
        t = Test((Const("NsOlsen"), Const("MedicalRecord"), Var("c")), Const("DAC"))
        dom = SetLit((Capability.READ, Capability.OUT))
        assert evaluate_condition(Exists("c", dom, t), {}, DAC_NET) is True
        assert evaluate_condition(Forall("c", dom, t), {}, DAC_NET) is False

    def test_empty_domain(self):
        t = Test((Var("x"),), Const("Nowhere"))
        assert evaluate_condition(Forall("x", SetLit(()), t), {}, DAC_NET) is True
        assert evaluate_condition(Exists("x", SetLit(()), t), {}, DAC_NET) is False

    def test_universe_as_domain_is_refused(self):
        t = Test((Var("x"),), Const("DAC"))
        with pytest.raises(UnsupportedUniverse):
            evaluate_condition(Exists("x", LVarStar(), t), {}, DAC_NET)
        assert evaluate_condition(IsEmpty(LVarStar()), {}, DAC_NET) is False

    def test_unbound_variable_is_a_defect(self):
        with pytest.raises(UnboundVariable):
            evaluate_condition(Test((Var("ghost"),), Const("DAC")), {}, DAC_NET)

    def test_evaluation_is_read_only(self):
        before = DAC_NET
        evaluate_condition(Test((DONT_CARE,) * 3, Const("DAC")), {}, DAC_NET)
        assert DAC_NET is before and DAC_NET == _net("dac/nurse_program.akl")


class TestAdvice:
    def test_a1_out_breaks_the_copy(self):
        jp = JoinPoint("DrSmith", Out(C("Alice", "alicetext"), Const("DrSmith")))
        assert advise(A1_OUT, jp, Net()) is Suggestion.BREAK

    def test_a1_out_proceeds_on_other_data(self):
        jp = JoinPoint("DrSmith", Out(C("Alice", "other"), Const("DrSmith")))
        assert advise(A1_OUT, jp, Net()) is Suggestion.PROCEED

    def test_a1_out_ignores_five_field_out(self):
        jp = JoinPoint("DrSmith", Out(C("Alice", "MedicalRecord", "DrSmith", "Recent", "newtext"), Const("EHDB")))
        assert advise(A1_OUT, jp, Net()) is None

    def test_other_capability_not_applicable(self):
        jp = JoinPoint("DrSmith", Read(C("Alice", "alicetext"), Const("DrSmith")))
        assert advise(A1_OUT, jp, Net()) is None

    def test_first_true_case_wins(self):
        (a,) = parse_aspect_file("F[u::out(x)@l] = case (x = a) proceed; case (x = a) break; break")
        jp = JoinPoint("N", Out(C("a"), Const("l")))
        assert advise(a, jp, Net()) is Suggestion.PROCEED


class TestPhi:
    def test_empty_list_allows(self):
        v = phi([], JoinPoint("N", Out(C("a"), Const("l"))), Net())
        assert v.decision is Decision.ALLOW and v.reports == ()

    def test_break_beats_proceed(self):
        aspects = _load("rbac/rbac.apl") + _load("retrofit/confidentiality.apl")
        net = _net("retrofit/doctor_reads_other_note.akl")
        templ = (*C("Alice", "PrivateNote", "DrHansen", "Past"), Bind("note"))
        v = phi(aspects, JoinPoint("DrSmith", Read(templ, Const("EHDB"))), net)
        assert v.decision is Decision.DENY
        assert v.report("A_p1_C1").suggestion is Suggestion.PROCEED
        assert v.report("A_p3_1").suggestion is Suggestion.BREAK
        assert len(v.reports) == len(aspects)
        assert not v.report("A_p1_C3").matched

    def test_banged_variables_stay_symbolic(self):
        aspects = _load("secondary_use/blind_reads.apl")
        net = _net("secondary_use/program2.akl")
        item = [p for p in net.processes() if p.node == "RsMiller"][0]
        act, cont = item.proc.branches[0]
        v = phi(aspects, JoinPoint("RsMiller", act, cont), net)
        assert v.report("A_p6_3").bindings["patient"] == Var("patient")

    def test_report_lookup_unknown(self):
        v = phi([A1_OUT], JoinPoint("N", Out(C("a"), Const("l"))), Net())
        with pytest.raises(KeyError):
            v.report("nope")

    def test_fixture_store_parsing(self):
        assert parse_net("S :: <a>").tuples_at("S")[0].fields == ("a",)
