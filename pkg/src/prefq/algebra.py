"""Preference relations and their algebra: composition, inverse, indifference,
and the decidable order-property checks.

Property checks reduce to unsatisfiability of ERO formulas over two to four
tuple variables (x, y plus auxiliaries z, w); those sentences are decided
exactly by DNF + conjunction satisfiability.
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from enum import Enum

from .errors import SchemaMismatch
from .formulas import (
    And,
    Attr,
    Not,
    Or,
    PreferenceFormula,
    Schema,
    X,
    Y,
    formula_from_dnf,
    implies,
    make_atom,
    node_dnf,
    node_sat,
    rename_vars,
)


class CompositionOp(Enum):
    UNION = "union"
    PRIORITIZED = "prioritized"
    PARETO = "pareto"


class OrderProperty(Enum):
    IRREFLEXIVE = "irreflexive"
    TRANSITIVE = "transitive"
    NEGATIVELY_TRANSITIVE = "negatively_transitive"
    CONNECTED = "connected"
    SPO = "spo"
    IO = "io"
    WO = "wo"
    TOTAL_ORDER = "total_order"


@dataclass(frozen=True)
class PreferenceRelation:
    """A named preference relation: the x-side is preferred to the y-side
    exactly when the formula holds."""

    name: str
    schema: Schema
    formula: PreferenceFormula

    def __post_init__(self):
        if self.formula.schema != self.schema:
            raise SchemaMismatch(
                f"formula schema differs from relation schema for {self.name!r}"
            )

    def renamed(self, name: str) -> "PreferenceRelation":
        return replace(self, name=name)


def relation(name: str, formula: PreferenceFormula) -> PreferenceRelation:
    return PreferenceRelation(name, formula.schema, formula)


def _require_same_schema(p: PreferenceRelation, q: PreferenceRelation):
    if p.schema != q.schema:
        raise SchemaMismatch(f"{p.name} and {q.name} have different schemas")


def swap_xy(body):
    """x↔y swap of a formula body (the inverse relation's formula).
    rename_vars substitutes simultaneously, so the swap is one call."""
    return rename_vars(body, {X: Y, Y: X})


def inverse(p: PreferenceRelation) -> PreferenceRelation:
    """The relation holding on (x, y) exactly when p holds on (y, x)."""
    f = PreferenceFormula(p.schema, swap_xy(p.formula.body))
    return PreferenceRelation(f"{p.name}^-1", p.schema, f)


def compose(
    p: PreferenceRelation, q: PreferenceRelation, op: CompositionOp
) -> PreferenceRelation:
    """Union / prioritized / Pareto composition, DNF-normalized.

    PRIORITIZED is p ▷ q: p wins conflicts. In revision use, pass the revising
    relation as p (revising-wins convention).
    """
    _require_same_schema(p, q)
    pb, qb = p.formula.body, q.formula.body
    if op is CompositionOp.UNION:
        body = Or(pb, qb)
        tag = "|"
    elif op is CompositionOp.PRIORITIZED:
        body = Or(pb, And(Not(swap_xy(pb)), qb))
        tag = ">"
    elif op is CompositionOp.PARETO:
        body = Or(And(pb, Not(swap_xy(qb))), And(qb, Not(swap_xy(pb))))
        tag = "(x)"
    else:
        raise ValueError(f"unknown composition {op!r}")
    f = formula_from_dnf(p.schema, node_dnf(body))
    return PreferenceRelation(f"({p.name} {tag} {q.name})", p.schema, f)


def indifference(p: PreferenceRelation) -> PreferenceFormula:
    """¬p(x,y) ∧ ¬p(y,x), DNF-normalized."""
    body = And(Not(p.formula.body), Not(swap_xy(p.formula.body)))
    return formula_from_dnf(p.schema, node_dnf(body))


def tuple_equality(schema: Schema, a: str, b: str):
    """Body asserting the a-tuple equals the b-tuple attribute-wise."""
    atoms = [
        make_atom(Attr(a, attr), "=", Attr(b, attr), sort)
        for attr, sort in schema.attributes
    ]
    return And(*atoms)


def instantiate(p: PreferenceRelation, a: str, b: str):
    """p's formula body with x renamed to variable a and y to variable b
    (simultaneously, so instantiate(p, y, x) is the inverse body)."""
    return rename_vars(p.formula.body, {X: a, Y: b})


_holds = instantiate


def _check(p: PreferenceRelation, prop: OrderProperty) -> bool:
    sch = p.schema
    if prop is OrderProperty.IRREFLEXIVE:
        return not node_sat(_holds(p, X, X))
    if prop is OrderProperty.TRANSITIVE:
        return not node_sat(
            And(_holds(p, X, "z"), _holds(p, "z", Y), Not(_holds(p, X, Y)))
        )
    if prop is OrderProperty.NEGATIVELY_TRANSITIVE:
        return not node_sat(
            And(Not(_holds(p, X, "z")), Not(_holds(p, "z", Y)), _holds(p, X, Y))
        )
    if prop is OrderProperty.CONNECTED:
        return not node_sat(
            And(
                Not(_holds(p, X, Y)),
                Not(_holds(p, Y, X)),
                Not(tuple_equality(sch, X, Y)),
            )
        )
    if prop is OrderProperty.SPO:
        return check_property(p, OrderProperty.IRREFLEXIVE) and check_property(
            p, OrderProperty.TRANSITIVE
        )
    if prop is OrderProperty.IO:
        if not check_property(p, OrderProperty.SPO):
            return False
        return not node_sat(
            And(
                _holds(p, X, Y),
                _holds(p, "z", "w"),
                Not(_holds(p, X, "w")),
                Not(_holds(p, "z", Y)),
            )
        )
    if prop is OrderProperty.WO:
        return check_property(p, OrderProperty.SPO) and check_property(
            p, OrderProperty.NEGATIVELY_TRANSITIVE
        )
    if prop is OrderProperty.TOTAL_ORDER:
        return check_property(p, OrderProperty.CONNECTED) and check_property(
            p, OrderProperty.SPO
        )
    raise ValueError(f"unknown property {prop!r}")


def check_property(p: PreferenceRelation, prop: OrderProperty) -> bool:
    """Decide an order-theoretic property over the infinite domain; cached."""
    cache = p.formula._props
    if prop not in cache:
        cache[prop] = _check(p, prop)
    return cache[prop]


def contains(p: PreferenceRelation, q: PreferenceRelation) -> bool:
    """True iff q ⊆ p as relations, i.e. q's formula implies p's."""
    _require_same_schema(p, q)
    return implies(q.formula, p.formula)
