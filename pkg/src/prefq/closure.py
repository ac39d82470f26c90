"""Symbolic fixpoints: transitive closure of formula-defined preference
relations, the weak-order derivation rules P11/P12 and conflict removal P2,
the rule-algebra expressions E1 and E2, and weak-order extension of interval
orders.

All joins introduce one auxiliary tuple variable and eliminate it exactly with
dense-order quantifier elimination; fixpoint detection is semantic implication
(DNF shapes differ across stages), never syntactic equality.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass
from enum import Enum

from .algebra import (
    OrderProperty,
    PreferenceRelation,
    check_property,
    instantiate,
    swap_xy,
)
from .errors import NotAnIntervalOrder, StageCapExceeded
from .formulas import (
    And,
    Not,
    PreferenceFormula,
    X,
    Y,
    eliminate_clause,
    equivalent,
    formula_from_dnf,
    implies,
    node_dnf,
    subsume,
)

DEFAULT_STAGE_CAP = 64

_AUX = "_z"


class RuleId(Enum):
    P11 = "p11"
    P12 = "p12"
    P2 = "p2"


class Expression(Enum):
    E1 = "e1"  # ((P11 ∪ P12) ; P2)+, non-inflationary
    E2 = "e2"  # (P11 ; P12)+, inflationary (coincides for irreflexive inputs)


@dataclass(frozen=True)
class Stage:
    index: int
    relation: PreferenceRelation
    is_wo: bool
    new_facts_added: bool


@dataclass(frozen=True)
class StageTrace:
    expression: Expression
    stages: tuple

    @property
    def final(self) -> PreferenceRelation:
        return self.stages[-1].relation


def _project_exists(node, drop_vars) -> list:
    """DNF of ∃(drop_vars). node."""
    clauses = []
    for c in node_dnf(node):
        clauses.extend(eliminate_clause(c, drop_vars))
    return subsume(clauses)


def _mk(p: PreferenceRelation, name: str, clauses) -> PreferenceRelation:
    return PreferenceRelation(name, p.schema, formula_from_dnf(p.schema, clauses))


def transitive_closure(
    p: PreferenceRelation, cap: int = DEFAULT_STAGE_CAP
) -> PreferenceRelation:
    """TC(p): accumulate ∃z. p(x,z) ∧ acc(z,y) until the new stage is implied.

    Contains p and is transitive by construction; raises StageCapExceeded when
    iteration fails to converge within the cap.
    """
    acc = formula_from_dnf(p.schema, p.formula.dnf())
    p_xz = instantiate(p, X, _AUX)
    for _ in range(cap):
        step_node = And(p_xz, instantiate_formula(acc, _AUX, Y))
        step_clauses = _project_exists(step_node, (_AUX,))
        step = formula_from_dnf(p.schema, step_clauses)
        if implies(step, acc):
            return PreferenceRelation(f"TC({p.name})", p.schema, acc)
        acc = formula_from_dnf(p.schema, subsume([*acc.dnf(), *step_clauses]))
    raise StageCapExceeded(cap, f"TC({p.name})")


def instantiate_formula(f: PreferenceFormula, a: str, b: str):
    """Formula body with x renamed to a and y to b (simultaneous)."""
    from .formulas import rename_vars

    return rename_vars(f.body, {X: a, Y: b})


# --- rule applications --------------------------------------------------------


def _raw_clauses(rule: RuleId, p: PreferenceRelation) -> list:
    """One non-inflationary rule application, as DNF clauses over x, y."""
    if rule is RuleId.P11:
        # T(x,y) ← ∃z: T(x,z) ∧ ¬T(y,z) ∧ ¬T(z,y)
        body = And(
            instantiate(p, X, _AUX),
            Not(instantiate(p, Y, _AUX)),
            Not(instantiate(p, _AUX, Y)),
        )
        return _project_exists(body, (_AUX,))
    if rule is RuleId.P12:
        # T(x,y) ← ∃z: T(z,y) ∧ ¬T(x,z) ∧ ¬T(z,x)
        body = And(
            instantiate(p, _AUX, Y),
            Not(instantiate(p, X, _AUX)),
            Not(instantiate(p, _AUX, X)),
        )
        return _project_exists(body, (_AUX,))
    if rule is RuleId.P2:
        # conflict removal: T(x,y) ∧ ¬T(y,x)
        return list(node_dnf(And(p.formula.body, Not(swap_xy(p.formula.body)))))
    raise ValueError(f"unknown rule {rule!r}")


def rule_raw(rule: RuleId, p: PreferenceRelation) -> PreferenceRelation:
    """Non-inflationary single-rule application (derived facts only)."""
    return _mk(p, f"{rule.value}({p.name})", _raw_clauses(rule, p))


def apply_rule(rule: RuleId, p: PreferenceRelation) -> PreferenceRelation:
    """P11/P12 applied inflationarily (result unioned with p; for irreflexive
    p the union adds nothing), P2 non-inflationarily — its point is removal."""
    clauses = _raw_clauses(rule, p)
    if rule in (RuleId.P11, RuleId.P12):
        clauses = subsume([*p.formula.dnf(), *clauses])
    return _mk(p, f"{rule.value}({p.name})", clauses)


def _e1_stage(p: PreferenceRelation) -> PreferenceRelation:
    derived = subsume([*_raw_clauses(RuleId.P11, p), *_raw_clauses(RuleId.P12, p)])
    u = _mk(p, f"step({p.name})", derived)
    return _mk(p, p.name, _raw_clauses(RuleId.P2, u))


def _e2_stage(p: PreferenceRelation) -> PreferenceRelation:
    s1 = apply_rule(RuleId.P11, p)
    return apply_rule(RuleId.P12, s1)


def eval_expression(
    expr: Expression, p: PreferenceRelation, cap: int = DEFAULT_STAGE_CAP
) -> StageTrace:
    """Iterate a rule-algebra expression, recording one Stage per round.

    Every stage is separately checked for the weak-order property: a fixpoint
    does not imply WO in general, so the flag is always explicit. Stops at the
    first WO stage or at a fixpoint; raises StageCapExceeded otherwise.
    """
    if expr is Expression.E2 and not check_property(p, OrderProperty.IO):
        warnings.warn(
            f"E2 termination is only guaranteed for interval orders; "
            f"{p.name} is not one",
            stacklevel=2,
        )
    stage_fn = _e1_stage if expr is Expression.E1 else _e2_stage
    prev = p
    stages = []
    for i in range(1, cap + 1):
        nxt = stage_fn(prev).renamed(f"T{i}({p.name})")
        changed = not equivalent(nxt.formula, prev.formula)
        is_wo = check_property(nxt, OrderProperty.WO)
        stages.append(Stage(i, nxt, is_wo, changed))
        if is_wo or not changed:
            return StageTrace(expr, tuple(stages))
        prev = nxt
    raise StageCapExceeded(cap, f"{expr.value}({p.name})")


def wo_extension_io(
    p: PreferenceRelation, cap: int = DEFAULT_STAGE_CAP
) -> PreferenceRelation:
    """Weak-order extension of an interval order via E2; contains p."""
    if not check_property(p, OrderProperty.IO):
        raise NotAnIntervalOrder(f"{p.name} is not an interval order")
    trace = eval_expression(Expression.E2, p, cap)
    return trace.final.renamed(f"woext({p.name})")
