"""Preference conflicts and i-compatibility.

A 0-conflict is a directly opposed pair; a 1-conflict routes the opposition
through a chain of the revised relation whose reversals the revising relation
never sanctions; a 2-conflict has such chains both ways. Each level reduces to
satisfiability of one witness formula built from the relations and transitive
closures of their guarded differences.

The paper typesets the final edge of the 2-conflict's second chain as the
revised relation where the pattern calls for the revising one; the harmonized
reading is the default and the literal one stays available via ``reading``.
"""

from __future__ import annotations

from dataclasses import dataclass

from .algebra import (
    PreferenceRelation,
    instantiate,
    inverse,
)
from .closure import DEFAULT_STAGE_CAP, instantiate_formula, transitive_closure
from .errors import SchemaMismatch
from .formulas import (
    And,
    Not,
    PreferenceFormula,
    X,
    Y,
    eliminate_clause,
    formula_from_dnf,
    node_dnf,
    subsume,
)
from .universe import lex_least_witness

READINGS = ("harmonized", "literal")


@dataclass(frozen=True)
class ConflictReport:
    level: int
    witness_formula: PreferenceFormula
    satisfiable: bool
    sample_witness: tuple | None  # (preferred-by-p0 tuple, the other) or None


def _difference(a: PreferenceRelation, b: PreferenceRelation) -> PreferenceRelation:
    """a ∧ ¬b⁻¹ — edges of a whose reversal b never sanctions."""
    body = And(a.formula.body, Not(inverse(b).formula.body))
    f = formula_from_dnf(a.schema, node_dnf(body))
    return PreferenceRelation(f"({a.name}-{b.name}^-1)", a.schema, f)


def conflict_formula(
    p: PreferenceRelation,
    p0: PreferenceRelation,
    level: int,
    reading: str = "harmonized",
    cap: int = DEFAULT_STAGE_CAP,
) -> ConflictReport:
    """Witness formula for i-conflicts of the revised p against revising p0.

    The witness holds on (x, y) exactly when (x, y) is an i-conflict; a ground
    sample (lexicographically least over the symbolic universe) accompanies a
    satisfiable report.
    """
    if p.schema != p0.schema:
        raise SchemaMismatch("conflict analysis needs one shared schema")
    if level not in (0, 1, 2):
        raise ValueError(f"conflict level must be 0, 1 or 2, not {level!r}")
    if reading not in READINGS:
        raise ValueError(f"reading must be one of {READINGS}")

    if level == 0:
        body = And(p0.formula.body, instantiate(p, Y, X))
    elif level == 1:
        chain = transitive_closure(_difference(p, p0), cap)
        body = And(p0.formula.body, instantiate_formula(chain.formula, Y, X))
    else:
        back = transitive_closure(_difference(p, p0), cap)
        fwd = transitive_closure(_difference(p0, p), cap)
        if reading == "harmonized":
            body = And(
                instantiate_formula(back.formula, Y, X),
                instantiate_formula(fwd.formula, X, Y),
            )
        else:
            # literal: ...w_m with the final edge in p (guarded by ¬p(y, w_m))
            last = _difference(p, p)
            hop = And(
                instantiate_formula(fwd.formula, X, "_w"),
                instantiate_formula(last.formula, "_w", Y),
            )
            clauses = []
            for c in node_dnf(hop):
                clauses.extend(eliminate_clause(c, ("_w",)))
            fwd_lit = formula_from_dnf(p.schema, subsume(clauses))
            body = And(
                instantiate_formula(back.formula, Y, X), fwd_lit.body
            )

    witness = formula_from_dnf(p.schema, node_dnf(body))
    sat = bool(witness.dnf())
    sample = lex_least_witness(witness) if sat else None
    return ConflictReport(level, witness, sat, sample)


def is_compatible(
    p: PreferenceRelation,
    p0: PreferenceRelation,
    level: int,
    reading: str = "harmonized",
    cap: int = DEFAULT_STAGE_CAP,
) -> bool:
    """True iff there are no level-i conflicts between p and p0."""
    return not conflict_formula(p, p0, level, reading, cap).satisfiable
