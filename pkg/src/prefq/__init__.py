"""prefq: preference-query engine with constraint-formula preference relations.

Core layers: ERO formulas (parsing, satisfiability, quantifier elimination),
preference algebra (composition, order properties), symbolic fixpoints
(transitive closure, weak-order extension rules), conflict/compatibility
analysis, finite instances with winnow and its incremental laws, finite
restrictions as the brute-force oracle, and a session layer with a REPL,
batch runner, and HTTP service.
"""

from .formulas import (
    Conjunction,
    PreferenceFormula,
    Schema,
    Sort,
    eliminate_exists,
    equivalent,
    eval_ground,
    implies,
    is_satisfiable,
    schema,
    to_dnf,
    to_dsl,
)
from .parser import parse_formula
from .algebra import (
    CompositionOp,
    OrderProperty,
    PreferenceRelation,
    check_property,
    compose,
    contains,
    indifference,
    inverse,
    relation,
)

__all__ = [
    "Conjunction",
    "PreferenceFormula",
    "Schema",
    "Sort",
    "eliminate_exists",
    "equivalent",
    "eval_ground",
    "implies",
    "is_satisfiable",
    "schema",
    "to_dnf",
    "to_dsl",
    "parse_formula",
    "CompositionOp",
    "OrderProperty",
    "PreferenceRelation",
    "check_property",
    "compose",
    "contains",
    "indifference",
    "inverse",
    "relation",
]
