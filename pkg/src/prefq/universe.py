"""Finite symbolic universes.

An ERO formula only compares attribute values with each other and with its
mentioned constants, so satisfying assignments can be remapped order- and
equality-isomorphically onto a small grid: the mentioned constants plus, per
sort, enough fresh D constants / enough rational points in every gap (below
the least and above the greatest constant included). A universe built with
``fresh >= number of node variables of that sort`` is therefore exact for
grounding-based checks and witness search.
"""

from __future__ import annotations

from fractions import Fraction

from .formulas import Const, PreferenceFormula, Schema, Sort, eval_ground
from .instances import Instance


def formula_constants(formulas) -> dict[Sort, set]:
    pools = {Sort.D: set(), Sort.Q: set()}
    for f in formulas:
        for clause in f.dnf():
            for atom in clause:
                for t in (atom.lhs, atom.rhs):
                    if isinstance(t, Const):
                        pools[t.sort].add(t.value)
    return pools


def d_values(consts, fresh: int) -> list[str]:
    out = sorted(consts)
    i = 0
    added = 0
    while added < fresh:
        cand = f"new{i}"
        i += 1
        if cand not in consts:
            out.append(cand)
            added += 1
    return out


def q_values(consts, fresh: int) -> list[Fraction]:
    cs = sorted(Fraction(c) for c in consts)
    if not cs:
        return [Fraction(k) for k in range(fresh)]
    out = list(cs)
    for k in range(1, fresh + 1):
        out.append(cs[0] - k)
        out.append(cs[-1] + k)
    for lo, hi in zip(cs, cs[1:]):
        span = hi - lo
        for k in range(1, fresh + 1):
            out.append(lo + span * k / (fresh + 1))
    return sorted(set(out))


def attribute_values(
    schema: Schema, formulas, tuple_vars: int = 2
) -> dict[str, list]:
    """Per-attribute value grids sufficient for tuple_vars many tuples."""
    pools = formula_constants(formulas)
    per_sort = {s: sum(1 for _, srt in schema.attributes if srt is s) for s in Sort}
    values = {}
    for name, sort in schema.attributes:
        fresh = max(1, tuple_vars * per_sort[sort])
        if sort is Sort.D:
            values[name] = d_values(pools[Sort.D], fresh)
        else:
            values[name] = q_values(pools[Sort.Q], fresh)
    return values


def universe_instance(
    schema: Schema, formulas, tuple_vars: int = 2, name: str = "universe"
) -> Instance:
    """All combinations of the per-attribute grids, lexicographically ordered."""
    grids = attribute_values(schema, formulas, tuple_vars)
    rows = [()]
    for attr, _ in schema.attributes:
        rows = [r + (v,) for r in rows for v in grids[attr]]
    return Instance(name, schema, tuple(rows))


def lex_least_witness(f: PreferenceFormula):
    """Lexicographically least ground pair satisfying f over its own symbolic
    universe, or None when f is unsatisfiable."""
    if not f.dnf():
        return None
    univ = universe_instance(f.schema, [f], tuple_vars=2)
    for tx in univ.tuples:
        for ty in univ.tuples:
            if eval_ground(f, tx, ty):
                return (tx, ty)
    return None
