"""Random-case generators and finite encodings shared across the suites.

Finite relations over a small constant universe double as formulas (one
equality clause per edge), which lets every symbolic result be checked
against exhaustive finite computation.
"""

from __future__ import annotations

import itertools
from fractions import Fraction

from prefq.algebra import OrderProperty, PreferenceRelation, relation
from prefq.formulas import (
    And,
    Attr,
    Const,
    Or,
    PreferenceFormula,
    Schema,
    Sort,
    X,
    Y,
    eval_node,
    make_atom,
    schema,
)
from prefq.instances import Instance
from prefq.restriction import FinitePreference, finite_check, finite_tc
from prefq.universe import d_values, q_values

D1 = schema(("v", "D"))
Q1 = schema(("v", "Q"))
DQ = schema(("d", "D"), ("q", "Q"))

ELEMS = ("a", "b", "c", "d", "e", "f", "g", "h")


def rows_of(elems) -> tuple:
    return tuple((e,) for e in elems)


def instance_of(elems, name="r") -> Instance:
    return Instance(name, D1, rows_of(elems))


def encode_edges(pairs, name="p") -> PreferenceRelation:
    """Finite relation as a formula: one (x.v=a AND y.v=b) clause per edge."""
    clauses = [
        And(
            make_atom(Attr(X, "v"), "=", Const(Sort.D, a), Sort.D),
            make_atom(Attr(Y, "v"), "=", Const(Sort.D, b), Sort.D),
        )
        for a, b in sorted(pairs)
    ]
    body = Or(*clauses) if clauses else False
    return relation(name, PreferenceFormula(D1, body))


def finite_of(pairs, elems=ELEMS, name="r") -> FinitePreference:
    inst = instance_of(elems, name)
    return FinitePreference(inst, frozenset(((a,), (b,)) for a, b in pairs))


def edges_of(f: FinitePreference) -> set:
    return {(a[0], b[0]) for a, b in f.edges}


# --- random relation shapes -----------------------------------------------------


def random_edges(rng, elems, density=0.25) -> set:
    return {
        (a, b)
        for a in elems
        for b in elems
        if a != b and rng.random() < density
    }


def random_spo(rng, elems, density=0.3) -> set:
    """Random strict partial order: forward edges along a shuffled axis,
    transitively closed."""
    order = list(elems)
    rng.shuffle(order)
    edges = {
        (order[i], order[j])
        for i in range(len(order))
        for j in range(i + 1, len(order))
        if rng.random() < density
    }
    closed = finite_tc(finite_of(edges, elems))
    return edges_of(closed)


def random_io(rng, elems, span=8) -> set:
    """Random interval order: x ≻ y iff x's interval lies wholly above y's."""
    iv = {}
    for e in elems:
        lo = rng.randint(0, span)
        iv[e] = (lo, lo + rng.randint(0, span // 2))
    return {
        (a, b) for a in elems for b in elems if a != b and iv[a][0] > iv[b][1]
    }


def random_wo(rng, elems, layers=4) -> set:
    """Random weak order: totally ordered indifference layers."""
    layer = {e: rng.randint(1, layers) for e in elems}
    return {(a, b) for a in elems for b in elems if layer[a] > layer[b]}


def random_pair(rng, make_first, make_second, accept, elems=ELEMS, tries=400):
    """Rejection-sample a pair of edge sets satisfying a predicate."""
    for _ in range(tries):
        e1, e2 = make_first(rng, elems), make_second(rng, elems)
        if accept(e1, e2):
            return e1, e2
    raise AssertionError("generator failed to find an admissible pair")


# --- assignment-enumeration oracles ----------------------------------------------


def node_constants(node) -> dict:
    from prefq.formulas import Atom, Not

    pools = {Sort.D: set(), Sort.Q: set()}

    def walk(n):
        if isinstance(n, Atom):
            for t in (n.lhs, n.rhs):
                if isinstance(t, Const):
                    pools[t.sort].add(t.value)
        elif isinstance(n, (And, Or)):
            for p in n.parts:
                walk(p)
        elif isinstance(n, Not):
            walk(n.part)

    walk(node)
    return pools


def universe_rows(sch: Schema, node, tuple_vars: int) -> list:
    """All tuples over per-attribute grids sufficient for tuple_vars tuples."""
    pools = node_constants(node)
    per_sort = {s: sum(1 for _, srt in sch.attributes if srt is s) for s in Sort}
    rows = [()]
    for name, sort in sch.attributes:
        fresh = max(1, tuple_vars * per_sort[sort])
        vals = (
            d_values(pools[Sort.D], fresh)
            if sort is Sort.D
            else q_values(pools[Sort.Q], fresh)
        )
        rows = [r + (v,) for r in rows for v in vals]
    return rows


def oracle_sat(node, sch: Schema, variables) -> bool:
    """Brute-force satisfiability by enumerating symbolic-universe tuples."""
    variables = list(variables)
    rows = universe_rows(sch, node, len(variables))
    for combo in itertools.product(rows, repeat=len(variables)):
        if eval_node(node, dict(zip(variables, combo)), sch):
            return True
    return False


def refined_rows(sch: Schema, base_rows, inner_vars: int) -> list:
    """Tuples for existential variables, on a grid fine relative to base_rows:
    inner_vars fresh points between, below, and beyond every base value. Makes
    pointwise comparison of ∃-projections against grid enumeration exact."""
    rows = [()]
    for i, (name, sort) in enumerate(sch.attributes):
        base_vals = {r[i] for r in base_rows}
        vals = (
            d_values(base_vals, inner_vars)
            if sort is Sort.D
            else q_values(base_vals, inner_vars)
        )
        rows = [r + (v,) for r in rows for v in vals]
    return rows


def oracle_finite_property(p: PreferenceRelation, prop: OrderProperty) -> bool:
    """Property of the symbolic relation, decided by grounding it over its own
    symbolic universe (4 tuple variables cover every property pattern)."""
    from prefq.restriction import restrict
    from prefq.universe import universe_instance

    univ = universe_instance(p.schema, [p.formula], tuple_vars=4)
    return finite_check(restrict(p, univ), prop)


# --- random formulas --------------------------------------------------------------


def random_atom(rng, sch: Schema, variables):
    for _ in range(50):
        name, sort = sch.attributes[rng.randrange(len(sch.attributes))]
        terms = [Attr(v, name) for v in variables]
        if sort is Sort.D:
            terms += [Const(Sort.D, c) for c in ("a", "b")]
            ops = ("=", "!=")
        else:
            terms += [Const(Sort.Q, Fraction(k)) for k in (0, 1, 2)]
            ops = ("=", "!=", "<", "<=", ">", ">=")
        lhs, rhs = rng.choice(terms), rng.choice(terms)
        atom = make_atom(lhs, rng.choice(ops), rhs, sort)
        if not isinstance(atom, bool):
            return atom
    raise AssertionError("could not draw a nontrivial atom")


def random_conjunction(rng, sch: Schema, variables, max_atoms=8) -> frozenset:
    n = rng.randint(1, max_atoms)
    return frozenset(random_atom(rng, sch, variables) for _ in range(n))


def random_wo_formula(rng, sch: Schema) -> PreferenceFormula:
    """A genuine infinite-domain weak order: totally ordered layers that
    partition the whole domain (intervals on Q, constant classes plus a
    catch-all class on D), optionally reversed."""
    name, sort = sch.attributes[0]
    if sort is Sort.Q:
        cuts = sorted(rng.sample(range(0, 6), rng.randint(0, 2)))
        k = len(cuts) + 1

        def member(var, i):
            atoms = []
            if i > 0:
                atoms.append(
                    make_atom(Attr(var, name), ">", Const(Sort.Q, Fraction(cuts[i - 1])), Sort.Q)
                )
            if i < len(cuts):
                atoms.append(
                    make_atom(Attr(var, name), "<=", Const(Sort.Q, Fraction(cuts[i])), Sort.Q)
                )
            if not atoms:
                return True
            return And(*atoms) if len(atoms) > 1 else atoms[0]

    else:
        consts = ["a", "b", "c"][: rng.randint(1, 3)]
        k = rng.randint(2, 3)
        assign = {c: rng.randrange(k) for c in consts}
        catch_all = rng.randrange(k)

        def member(var, i):
            parts = [
                make_atom(Attr(var, name), "=", Const(Sort.D, c), Sort.D)
                for c in consts
                if assign[c] == i
            ]
            if i == catch_all:
                anti = [
                    make_atom(Attr(var, name), "!=", Const(Sort.D, c), Sort.D)
                    for c in consts
                ]
                parts.append(And(*anti) if len(anti) > 1 else anti[0])
            if not parts:
                return False
            return Or(*parts) if len(parts) > 1 else parts[0]

    reverse = rng.random() < 0.5
    clauses = [
        And(member(X, i), member(Y, j))
        for i in range(k)
        for j in range(k)
        if (i < j if reverse else i > j)
    ]
    body = Or(*clauses) if len(clauses) > 1 else (clauses[0] if clauses else False)
    return PreferenceFormula(sch, body)


def random_formula(rng, sch: Schema, max_clauses=3, max_atoms=3) -> PreferenceFormula:
    clauses = []
    for _ in range(rng.randint(1, max_clauses)):
        atoms = [
            random_atom(rng, sch, (X, Y)) for _ in range(rng.randint(1, max_atoms))
        ]
        clauses.append(And(*atoms) if len(atoms) > 1 else atoms[0])
    body = Or(*clauses) if len(clauses) > 1 else clauses[0]
    if rng.random() < 0.3:
        name, sort = sch.attributes[0]
        body = Or(body, make_atom(Attr(X, name), "=", Attr(Y, name), sort))
    return PreferenceFormula(sch, body)
