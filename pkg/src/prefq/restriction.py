"""Finite restrictions of preference relations and everything that lives on
explicit edge sets: the brute-force order/compatibility oracles, the four
revision variants of a composed-and-closed preference, stored (non-intrinsic)
preferences, and utility-based finite weak orders.

This module is deliberately naive — exhaustive enumeration and Floyd–Warshall
— because it is the ground truth the symbolic engine is checked against.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .algebra import CompositionOp, OrderProperty, PreferenceRelation, compose
from .closure import DEFAULT_STAGE_CAP, transitive_closure
from .errors import FormulaTypeError, NotZeroCompatible, SchemaMismatch
from .formulas import Schema, Sort, eval_ground
from .instances import Instance

Edge = tuple  # (Row, Row)


@dataclass(frozen=True)
class FinitePreference:
    """An explicit preference edge set over the tuples of one instance."""

    instance: Instance
    edges: frozenset

    def __post_init__(self):
        universe = self.instance.as_set()
        for a, b in self.edges:
            if a not in universe or b not in universe:
                raise ValueError(f"edge endpoint not in instance: {(a, b)}")

    def holds(self, a, b) -> bool:
        return (a, b) in self.edges

    def __len__(self):
        return len(self.edges)


def finite_pref(instance: Instance, edges) -> FinitePreference:
    return FinitePreference(instance, frozenset(tuple(e) for e in edges))


def restrict(p: PreferenceRelation, r: Instance) -> FinitePreference:
    """p ∩ r×r as explicit edges."""
    if p.schema != r.schema:
        raise SchemaMismatch(f"{p.name} and instance {r.name} differ in schema")
    edges = frozenset(
        (s, t) for s in r.tuples for t in r.tuples if eval_ground(p.formula, s, t)
    )
    return FinitePreference(r, edges)


def finite_tc(f: FinitePreference) -> FinitePreference:
    """Floyd–Warshall transitive closure of the edge set."""
    nodes = list(f.instance.tuples)
    closed = set(f.edges)
    for k in nodes:
        for i in nodes:
            if (i, k) in closed:
                for j in nodes:
                    if (k, j) in closed:
                        closed.add((i, j))
    return FinitePreference(f.instance, frozenset(closed))


def finite_compose(
    f0: FinitePreference, f: FinitePreference, op: CompositionOp
) -> FinitePreference:
    """Edge-wise union / prioritized (f0 wins) / Pareto composition."""
    if f0.instance.as_set() != f.instance.as_set():
        raise SchemaMismatch("finite composition needs one underlying instance")
    e0, e = f0.edges, f.edges
    if op is CompositionOp.UNION:
        out = e0 | e
    elif op is CompositionOp.PRIORITIZED:
        out = e0 | {(a, b) for (a, b) in e if (b, a) not in e0}
    elif op is CompositionOp.PARETO:
        out = {(a, b) for (a, b) in e0 if (b, a) not in e} | {
            (a, b) for (a, b) in e if (b, a) not in e0
        }
    else:
        raise ValueError(f"unknown composition {op!r}")
    return FinitePreference(f0.instance, frozenset(out))


def finite_check(f: FinitePreference, prop: OrderProperty) -> bool:
    """Exhaustive order-property check over the instance."""
    ts = f.instance.tuples
    e = f.edges
    if prop is OrderProperty.IRREFLEXIVE:
        return all((t, t) not in e for t in ts)
    if prop is OrderProperty.TRANSITIVE:
        return all((a, c) in e for (a, b) in e for (b2, c) in e if b == b2)
    if prop is OrderProperty.NEGATIVELY_TRANSITIVE:
        for a in ts:
            for b in ts:
                if (a, b) in e:
                    continue
                for c in ts:
                    if (b, c) not in e and (a, c) in e:
                        return False
        return True
    if prop is OrderProperty.CONNECTED:
        return all(a == b or (a, b) in e or (b, a) in e for a in ts for b in ts)
    if prop is OrderProperty.SPO:
        return finite_check(f, OrderProperty.IRREFLEXIVE) and finite_check(
            f, OrderProperty.TRANSITIVE
        )
    if prop is OrderProperty.IO:
        if not finite_check(f, OrderProperty.SPO):
            return False
        return all(
            (x, w) in e or (z, y) in e for (x, y) in e for (z, w) in e
        )
    if prop is OrderProperty.WO:
        return finite_check(f, OrderProperty.SPO) and finite_check(
            f, OrderProperty.NEGATIVELY_TRANSITIVE
        )
    if prop is OrderProperty.TOTAL_ORDER:
        return finite_check(f, OrderProperty.CONNECTED) and finite_check(
            f, OrderProperty.SPO
        )
    raise ValueError(f"unknown property {prop!r}")


def _guarded_difference(e, e0) -> frozenset:
    """Edges of e whose reversal e0 never sanctions (e ∖ e0⁻¹)."""
    return frozenset((a, b) for (a, b) in e if (b, a) not in e0)


def _tc_edges(instance: Instance, edges) -> frozenset:
    return finite_tc(FinitePreference(instance, frozenset(edges))).edges


def finite_conflicts(
    f: FinitePreference, f0: FinitePreference, level: int, reading: str = "harmonized"
) -> frozenset:
    """All level-i conflict pairs (t1, t2), by exhaustive chain enumeration
    (transitive closure covers chains up to the instance size)."""
    inst = f.instance
    e, e0 = f.edges, f0.edges
    if level == 0:
        return frozenset((a, b) for (a, b) in e0 if (b, a) in e)
    back = _tc_edges(inst, _guarded_difference(e, e0))
    if level == 1:
        return frozenset((a, b) for (a, b) in e0 if (b, a) in back)
    fwd = _tc_edges(inst, _guarded_difference(e0, e))
    if level == 2:
        if reading == "harmonized":
            return frozenset(
                (a, b) for (b2, a) in back for (a2, b) in fwd
                if a == a2 and b == b2
            )
        last = _guarded_difference(e, e)
        lit = frozenset(
            (a, b) for (a, w) in fwd for (w2, b) in last if w == w2
        )
        return frozenset((a, b) for (a, b) in lit if (b, a) in back)
    raise ValueError(f"conflict level must be 0, 1 or 2, not {level!r}")


def finite_compatible(
    f: FinitePreference, f0: FinitePreference, level: int, reading: str = "harmonized"
) -> bool:
    return not finite_conflicts(f, f0, level, reading)


def finite_winnow(f: FinitePreference) -> Instance:
    """Most-preferred tuples of the instance under the explicit edges."""
    dominated = {b for (_, b) in f.edges}
    rows = tuple(t for t in f.instance.tuples if t not in dominated)
    return Instance(f.instance.name, f.instance.schema, rows)


# --- revision variants --------------------------------------------------------


@dataclass(frozen=True)
class RevisionVariants:
    v1: PreferenceRelation  # TC(p0 θ p), symbolic
    v2: FinitePreference  # TC(p0 θ p) | r
    v3: FinitePreference  # TC((p0 θ p) | r)
    v4: FinitePreference  # TC(p0|r θ p|r)


def revision_variants(
    p: PreferenceRelation,
    p0: PreferenceRelation,
    op: CompositionOp,
    r: Instance,
    cap: int = DEFAULT_STAGE_CAP,
) -> RevisionVariants:
    """The four ways of interleaving restriction with compose-and-close.

    Distribution of restriction over composition makes v4 == v3, and
    v3 ⊆ v2 always; both are asserted here.
    """
    composed = compose(p0, p, op)
    v1 = transitive_closure(composed, cap)
    v2 = restrict(v1, r)
    v3 = finite_tc(restrict(composed, r))
    v4 = finite_tc(finite_compose(restrict(p0, r), restrict(p, r), op))
    assert v4.edges == v3.edges, "restriction must distribute over composition"
    assert v3.edges <= v2.edges, "TC-of-restriction must stay inside restricted TC"
    return RevisionVariants(v1, v2, v3, v4)


# --- utility-based finite preferences ------------------------------------------


@dataclass(frozen=True)
class UtilityExpr:
    """Exact linear utility: Q-attribute coefficients, [attr = const]
    indicator terms on D attributes, and a constant offset."""

    coeffs: tuple = ()  # ((attr, Fraction), ...)
    indicators: tuple = ()  # ((attr, value, Fraction), ...)
    const: Fraction = Fraction(0)

    def validate(self, schema: Schema):
        for attr, _ in self.coeffs:
            if schema.sort_of(attr) is not Sort.Q:
                raise FormulaTypeError(f"coefficient on non-Q attribute {attr!r}")
        for attr, _value, _ in self.indicators:
            if schema.sort_of(attr) is not Sort.D:
                raise FormulaTypeError(f"indicator on non-D attribute {attr!r}")
        return self

    def evaluate(self, row, schema: Schema) -> Fraction:
        total = Fraction(self.const)
        for attr, coeff in self.coeffs:
            total += coeff * row[schema.index_of(attr)]
        for attr, value, weight in self.indicators:
            if row[schema.index_of(attr)] == value:
                total += weight
        return total


def scale_utility(u: UtilityExpr, factor: Fraction) -> UtilityExpr:
    factor = Fraction(factor)
    return UtilityExpr(
        tuple((a, c * factor) for a, c in u.coeffs),
        tuple((a, v, w * factor) for a, v, w in u.indicators),
        u.const * factor,
    )


def add_utilities(u: UtilityExpr, v: UtilityExpr, const: Fraction = 0) -> UtilityExpr:
    coeffs: dict = {}
    for a, c in (*u.coeffs, *v.coeffs):
        coeffs[a] = coeffs.get(a, Fraction(0)) + c
    inds: dict = {}
    for a, val, w in (*u.indicators, *v.indicators):
        inds[(a, val)] = inds.get((a, val), Fraction(0)) + w
    ind_terms = sorted((a, val, w) for (a, val), w in inds.items())
    return UtilityExpr(
        tuple(sorted(coeffs.items())),
        tuple(ind_terms),
        u.const + v.const + Fraction(const),
    )


def utility_pref(r: Instance, u: UtilityExpr) -> FinitePreference:
    """(t, s) is an edge exactly when u(t) > u(s); always a finite WO."""
    u.validate(r.schema)
    scores = {t: u.evaluate(t, r.schema) for t in r.tuples}
    edges = frozenset(
        (t, s) for t in r.tuples for s in r.tuples if scores[t] > scores[s]
    )
    return FinitePreference(r, edges)


def combine_utilities(
    r: Instance,
    u: UtilityExpr,
    u0: UtilityExpr,
    a: Fraction,
    b: Fraction,
    c: Fraction = 0,
) -> UtilityExpr:
    """a·u + b·u0 + c for positive a, b; requires the two induced orders to be
    0-compatible, and then induces exactly their union on r (asserted)."""
    a, b = Fraction(a), Fraction(b)
    if a <= 0 or b <= 0:
        raise ValueError("mixing weights a and b must be positive")
    fu, fu0 = utility_pref(r, u), utility_pref(r, u0)
    if not finite_compatible(fu, fu0, 0):
        raise NotZeroCompatible(
            "the two utilities induce 0-conflicting orders on this instance"
        )
    combined = add_utilities(scale_utility(u, a), scale_utility(u0, b), c)
    induced = utility_pref(r, combined)
    assert induced.edges == (fu.edges | fu0.edges), (
        "combined utility must induce the union order"
    )
    return combined


def hidden_refinement(r: Instance, u: UtilityExpr, u0: UtilityExpr) -> FinitePreference:
    """Refine u's indifference classes by the hidden-attribute utility u0:
    edges where u ties and u0 strictly prefers. Always 0-compatible with the
    u-induced order (asserted), so their union is an SPO."""
    u.validate(r.schema)
    u0.validate(r.schema)
    su = {t: u.evaluate(t, r.schema) for t in r.tuples}
    s0 = {t: u0.evaluate(t, r.schema) for t in r.tuples}
    edges = frozenset(
        (t, s)
        for t in r.tuples
        for s in r.tuples
        if su[t] == su[s] and s0[t] > s0[s]
    )
    refinement = FinitePreference(r, edges)
    assert finite_compatible(refinement, utility_pref(r, u), 0)
    assert finite_compatible(utility_pref(r, u), refinement, 0)
    return refinement


# --- stored (non-intrinsic) preferences ----------------------------------------


def doubled_schema(base: Schema) -> Schema:
    """The stored-preference schema: base attributes twice, .l then .r."""
    left = tuple((f"{n}.l", s) for n, s in base.attributes)
    right = tuple((f"{n}.r", s) for n, s in base.attributes)
    return Schema(left + right)


def stored_pref(edge_relation: Instance, base: Instance) -> FinitePreference:
    """Explicit preference read from a stored edge relation, restricted to the
    base instance (the composable, first-order-computable form)."""
    if edge_relation.schema != doubled_schema(base.schema):
        raise SchemaMismatch(
            "stored preference schema must be the base schema doubled (.l/.r)"
        )
    k = len(base.schema.attributes)
    present = base.as_set()
    edges = set()
    for row in edge_relation.tuples:
        left, right = row[:k], row[k:]
        if left in present and right in present:
            edges.add((left, right))
    return FinitePreference(base, frozenset(edges))
