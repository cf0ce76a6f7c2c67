"""Interpreter and policy runtime for KLAIM nets guarded by security aspects."""

from .analysis import (
    SetValue, act_set, eval_set_expr, extract_action_parts, fv_set, fv_set_cap, lc_set,
    lc_set_cap, loc_set,
)
from .errors import AspectKEError, ParseError, UnboundVariable, UnsupportedUniverse, ValidationError
from .matching import JoinPoint, join_point_of, match_cut, match_template
from .model import (
    DONT_CARE, NIL, Bind, Capability, Const, Eval, In, LocatedProcess, LocatedTuple, Net,
    Newloc, Out, Par, Read, Rep, Sum, SystemState, Var, apply_substitution, lift_to_net,
    validate_net,
)
from .parser import parse_aspect_file, parse_net, parse_process, parse_system, pretty_print
from .runtime import RunResult, StepCandidate, TraceEvent, enabled_candidates, execute, fresh_location, run
from .weaver import Decision, Verdict, advise, evaluate_condition, phi, validate_aspect

__version__ = "0.1.0"

__all__ = [name for name in dir() if not name.startswith("_")]
