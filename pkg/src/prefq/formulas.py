"""ERO constraint formulas over tuple variables.

The atom language is equality constraints on uninterpreted constants (sort D)
and dense-order constraints on exact rationals (sort Q); formulas are boolean
combinations of atoms over tuple variables (the two distinguished ones are
``x`` and ``y``; fixpoint and property machinery introduces auxiliaries).
Everything downstream — satisfiability, implication, quantifier elimination,
transitive closure — reduces to work on DNF clause sets built here.

Negation never leaves the atom language: it is eliminated by comparator
complementation (¬(a<b) → b≤a, ¬(a=b) → a≠b, ...), which keeps every clause a
plain conjunction of ERO atoms.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction

from .errors import FormulaTypeError, SchemaMismatch


class Sort(Enum):
    D = "D"  # countable domain of uninterpreted constants
    Q = "Q"  # rationals, dense order

    def __repr__(self):
        return f"Sort.{self.name}"


@dataclass(frozen=True)
class Schema:
    """Ordered attribute list; names unique, at least one attribute."""

    attributes: tuple[tuple[str, Sort], ...]

    def __post_init__(self):
        if not self.attributes:
            raise FormulaTypeError("schema must have at least one attribute")
        names = [a for a, _ in self.attributes]
        if len(set(names)) != len(names):
            raise FormulaTypeError(f"duplicate attribute names in schema: {names}")

    @property
    def names(self):
        return tuple(a for a, _ in self.attributes)

    def sort_of(self, name: str) -> Sort:
        for attr, sort in self.attributes:
            if attr == name:
                return sort
        raise FormulaTypeError(f"unknown attribute {name!r}")

    def index_of(self, name: str) -> int:
        for i, (attr, _) in enumerate(self.attributes):
            if attr == name:
                return i
        raise FormulaTypeError(f"unknown attribute {name!r}")


def schema(*attrs: tuple[str, str | Sort]) -> Schema:
    """Convenience constructor: schema(("make", "D"), ("year", "Q"))."""
    return Schema(tuple((n, s if isinstance(s, Sort) else Sort(s)) for n, s in attrs))


# --- terms ------------------------------------------------------------------

X, Y = "x", "y"


@dataclass(frozen=True)
class Attr:
    """Reference to an attribute of a tuple variable."""

    var: str
    attr: str

    def __str__(self):
        return f"{self.var}.{self.attr}"


@dataclass(frozen=True)
class Const:
    sort: Sort
    value: str | Fraction

    def __str__(self):
        if self.sort is Sort.D:
            return f"'{self.value}'"
        return str(self.value)


Term = Attr | Const

_VAR_RANK = {X: 0, Y: 1}


def _term_key(t: Term):
    if isinstance(t, Attr):
        return (0, _VAR_RANK.get(t.var, 2), t.var, t.attr)
    return (1, 0, "", str(t.value))


# --- atoms ------------------------------------------------------------------

# canonical comparator set; > and >= are normalized away by operand swap
_OPS = ("=", "!=", "<", "<=")
_SYMMETRIC = ("=", "!=")


@dataclass(frozen=True)
class Atom:
    lhs: Term
    op: str
    rhs: Term
    sort: Sort

    def __str__(self):
        return f"{self.lhs} {self.op} {self.rhs}"


def make_atom(lhs: Term, op: str, rhs: Term, sort: Sort) -> Atom | bool:
    """Canonicalize an atom; ground-decidable atoms collapse to a boolean.

    Normalizations: > and >= become < and <= with swapped operands; operands
    of symmetric comparators are ordered by a stable term key; atoms with
    identical operands or two constant operands are evaluated outright.
    """
    if op == ">":
        lhs, rhs, op = rhs, lhs, "<"
    elif op == ">=":
        lhs, rhs, op = rhs, lhs, "<="
    if op not in _OPS:
        raise FormulaTypeError(f"unknown comparator {op!r}")
    if sort is Sort.D and op in ("<", "<="):
        raise FormulaTypeError("order comparators are not allowed on sort D")
    if lhs == rhs:
        return op in ("=", "<=")
    if isinstance(lhs, Const) and isinstance(rhs, Const):
        a, b = lhs.value, rhs.value
        if op == "=":
            return a == b
        if op == "!=":
            return a != b
        if op == "<":
            return a < b
        return a <= b
    if op in _SYMMETRIC and _term_key(rhs) < _term_key(lhs):
        lhs, rhs = rhs, lhs
    return Atom(lhs, op, rhs, sort)


def complement(a: Atom) -> Atom:
    """The ERO atom equivalent to ¬a (always expressible — closed language)."""
    if a.op == "=":
        return Atom(a.lhs, "!=", a.rhs, a.sort)
    if a.op == "!=":
        return Atom(a.lhs, "=", a.rhs, a.sort)
    if a.op == "<":  # ¬(l < r) ≡ r <= l
        return Atom(a.rhs, "<=", a.lhs, a.sort)
    return Atom(a.rhs, "<", a.lhs, a.sort)  # ¬(l <= r) ≡ r < l


def _atom_key(a: Atom):
    return (_term_key(a.lhs), a.op, _term_key(a.rhs))


def sorted_atoms(atoms) -> tuple[Atom, ...]:
    return tuple(sorted(atoms, key=_atom_key))


# --- formula body nodes -----------------------------------------------------


@dataclass(frozen=True)
class And:
    parts: tuple

    def __init__(self, *parts):
        object.__setattr__(self, "parts", tuple(parts))


@dataclass(frozen=True)
class Or:
    parts: tuple

    def __init__(self, *parts):
        object.__setattr__(self, "parts", tuple(parts))


@dataclass(frozen=True)
class Not:
    part: object


Node = object  # bool | Atom | And | Or | Not


def node_vars(node) -> frozenset[str]:
    if isinstance(node, Atom):
        return frozenset(t.var for t in (node.lhs, node.rhs) if isinstance(t, Attr))
    if isinstance(node, (And, Or)):
        out = frozenset()
        for p in node.parts:
            out |= node_vars(p)
        return out
    if isinstance(node, Not):
        return node_vars(node.part)
    return frozenset()


def rename_vars(node, mapping: dict[str, str]):
    """Rename tuple variables throughout a body (used for inverse, closure
    joins, and property formulas). Identical-operand atoms collapse to bools."""

    def rt(t: Term) -> Term:
        if isinstance(t, Attr) and t.var in mapping:
            return Attr(mapping[t.var], t.attr)
        return t

    if isinstance(node, Atom):
        return make_atom(rt(node.lhs), node.op, rt(node.rhs), node.sort)
    if isinstance(node, And):
        return And(*(rename_vars(p, mapping) for p in node.parts))
    if isinstance(node, Or):
        return Or(*(rename_vars(p, mapping) for p in node.parts))
    if isinstance(node, Not):
        return Not(rename_vars(node.part, mapping))
    return node


# --- conjunctions and DNF ---------------------------------------------------

Clause = frozenset  # frozenset[Atom]

TRUE_DNF: tuple[Clause, ...] = (frozenset(),)
FALSE_DNF: tuple[Clause, ...] = ()


@dataclass(frozen=True)
class Conjunction:
    """One DNF disjunct: a duplicate-free set of atoms."""

    atoms: frozenset

    @property
    def free_vars(self) -> frozenset[str]:
        out = set()
        for a in self.atoms:
            for t in (a.lhs, a.rhs):
                if isinstance(t, Attr):
                    out.add(t.var)
        return frozenset(out)

    def __iter__(self):
        return iter(sorted_atoms(self.atoms))

    def __len__(self):
        return len(self.atoms)


def _pins(atoms) -> dict[Attr, Const]:
    """Direct constant bindings (attr = const equality atoms) in a clause."""
    pins = {}
    for a in atoms:
        if a.op == "=" and isinstance(a.lhs, Attr) and isinstance(a.rhs, Const):
            pins[a.lhs] = a.rhs
    return pins


def _resolve(t: Term, pins) -> Term:
    if isinstance(t, Attr):
        return pins.get(t, t)
    return t


def _status(atoms: set, pins, a: Atom):
    """Cheap entailment check of atom a against a clause: True / False / None.

    Only syntactic presence and constant-pinning evaluation; sound but
    incomplete (full satisfiability is checked once per finished clause).
    """
    if a in atoms:
        return True
    if complement(a) in atoms:
        return False
    lhs, rhs = _resolve(a.lhs, pins), _resolve(a.rhs, pins)
    if lhs is not a.lhs or rhs is not a.rhs:
        v = make_atom(lhs, a.op, rhs, a.sort)
        if isinstance(v, bool):
            return v
        if v in atoms:
            return True
        if complement(v) in atoms:
            return False
    return None


def merge_clauses(base: Clause, extra) -> Clause | None:
    """Conjoin two clauses; None on detected contradiction.

    Entailed atoms are absorbed; this is what keeps DNF products of
    finite-encoded relations (many ``attr = const`` pins against negated
    disjunctions) from exploding.
    """
    atoms = set(base)
    pins = _pins(atoms)
    for a in extra:
        st = _status(atoms, pins, a)
        if st is False:
            return None
        if st is True:
            continue
        atoms.add(a)
        if a.op == "=" and isinstance(a.lhs, Attr) and isinstance(a.rhs, Const):
            pins[a.lhs] = a.rhs
    return frozenset(atoms)


def _simplify_clause(atoms: Clause) -> Clause | None:
    """Per-term-pair closure: collapse {a<=b, b<=a} to a=b, {a<=b, a!=b} to
    a<b, drop weaker duplicates; None when one pair is locally contradictory."""
    groups: dict[frozenset, list[Atom]] = {}
    for a in atoms:
        groups.setdefault(frozenset((a.lhs, a.rhs)), []).append(a)
    out = set()
    for _pair, group in groups.items():
        if len(group) == 1:
            out.add(group[0])
            continue
        a0 = group[0]
        lhs, rhs, sort = a0.lhs, a0.rhs, a0.sort
        if sort is Sort.D:
            ops = {a.op for a in group}
            if "=" in ops and "!=" in ops:
                return None
            out.update(group)
            continue
        eq = ne = False
        lt_f = le_f = lt_b = le_b = False  # forward: lhs→rhs in a0's orientation
        for a in group:
            if a.op == "=":
                eq = True
            elif a.op == "!=":
                ne = True
            elif a.lhs == lhs:
                lt_f = lt_f or a.op == "<"
                le_f = le_f or a.op == "<="
            else:
                lt_b = lt_b or a.op == "<"
                le_b = le_b or a.op == "<="
        if le_f and le_b:  # a<=b ∧ b<=a collapses to a=b
            eq, le_f, le_b = True, False, False
        if lt_f and (lt_b or le_b or eq):
            return None
        if lt_b and (le_f or eq):
            return None
        if eq and ne:
            return None
        if eq:
            out.add(make_atom(lhs, "=", rhs, sort))
            continue
        if lt_f or (le_f and ne):
            out.add(Atom(lhs, "<", rhs, sort))
            continue
        if lt_b or (le_b and ne):
            out.add(Atom(rhs, "<", lhs, sort))
            continue
        if le_f:
            out.add(Atom(lhs, "<=", rhs, sort))
        elif le_b:
            out.add(Atom(rhs, "<=", lhs, sort))
        elif ne:
            out.add(make_atom(lhs, "!=", rhs, sort))
    return frozenset(out)


def subsume(clauses) -> list[Clause]:
    """Drop clauses that are supersets of another clause (weaker disjuncts)."""
    uniq = sorted(set(clauses), key=len)
    kept: list[Clause] = []
    for c in uniq:
        if not any(k <= c for k in kept):
            kept.append(c)
    return kept


def _dnf(node, neg: bool) -> list[Clause]:
    if isinstance(node, bool):
        return list(TRUE_DNF) if node != neg else list(FALSE_DNF)
    if isinstance(node, Atom):
        return [frozenset((complement(node),))] if neg else [frozenset((node,))]
    if isinstance(node, Not):
        return _dnf(node.part, not neg)
    disjunctive = isinstance(node, And) if neg else isinstance(node, Or)
    if disjunctive:
        out: list[Clause] = []
        for p in node.parts:
            out.extend(_dnf(p, neg))
        return subsume(out)
    # conjunctive position: product of parts, smallest factor first
    factors = sorted((_dnf(p, neg) for p in node.parts), key=len)
    acc: list[Clause] = [frozenset()]
    for factor in factors:
        if not factor:
            return []
        nxt = []
        for base in acc:
            for clause in factor:
                m = merge_clauses(base, clause)
                if m is not None:
                    nxt.append(m)
        acc = subsume(nxt)
        if not acc:
            return []
    return acc


def node_dnf(node) -> tuple[Clause, ...]:
    """Full DNF of a body: negation pushed to atoms, clauses simplified,
    unsatisfiable and subsumed clauses removed. Deterministically ordered."""
    clauses = []
    for c in _dnf(node, False):
        s = _simplify_clause(c)
        if s is not None and conj_sat(s):
            clauses.append(s)
    kept = subsume(clauses)
    return tuple(sorted(kept, key=lambda c: tuple(map(_atom_key, sorted_atoms(c)))))


def dnf_to_node(clauses) -> Node:
    if not clauses:
        return False
    parts = []
    for c in clauses:
        atoms = sorted_atoms(c)
        if not atoms:
            return True
        parts.append(atoms[0] if len(atoms) == 1 else And(*atoms))
    return parts[0] if len(parts) == 1 else Or(*parts)


# --- satisfiability ---------------------------------------------------------

_sat_cache: dict[Clause, bool] = {}


def conj_sat(atoms) -> bool:
    """Satisfiability of a conjunction of ERO atoms over infinite domains.

    D: union-find equality closure, then constant clashes and ≠ within one
    class. Q: reachability over the ≤/< digraph (constants wired in sorted
    order with strict edges); unsatisfiable iff a cycle crosses a strict edge
    or a ≠ connects two mutually reachable nodes.
    """
    if isinstance(atoms, Conjunction):
        atoms = atoms.atoms
    atoms = frozenset(atoms)
    hit = _sat_cache.get(atoms)
    if hit is not None:
        return hit
    result = _conj_sat(atoms)
    if len(_sat_cache) > 200_000:
        _sat_cache.clear()
    _sat_cache[atoms] = result
    return result


def _conj_sat(atoms: frozenset) -> bool:
    d_eqs, d_nes, q_atoms = [], [], []
    for a in atoms:
        if a.sort is Sort.D:
            (d_eqs if a.op == "=" else d_nes).append(a)
        else:
            q_atoms.append(a)

    if d_eqs or d_nes:
        parent: dict = {}

        def find(u):
            while parent.setdefault(u, u) != u:
                parent[u] = parent[parent[u]]
                u = parent[u]
            return u

        for a in d_eqs:
            ru, rv = find(a.lhs), find(a.rhs)
            if ru != rv:
                parent[ru] = rv
        consts: dict = {}
        for t in list(parent):
            if isinstance(t, Const):
                r = find(t)
                if r in consts and consts[r] != t.value:
                    return False
                consts.setdefault(r, t.value)
        for a in d_nes:
            la, ra = find(a.lhs), find(a.rhs)
            if la == ra:
                return False
            cv_l = consts.get(la, a.lhs.value if isinstance(a.lhs, Const) else None)
            cv_r = consts.get(ra, a.rhs.value if isinstance(a.rhs, Const) else None)
            if cv_l is not None and cv_l == cv_r:
                return False

    if not q_atoms:
        return True

    succ: dict = {}
    strict_edges = []
    neqs = []

    def edge(u, v, strict):
        succ.setdefault(u, set()).add(v)
        succ.setdefault(v, set())
        if strict:
            strict_edges.append((u, v))

    const_vals = set()
    for a in q_atoms:
        for t in (a.lhs, a.rhs):
            if isinstance(t, Const):
                const_vals.add(t.value)
            else:
                succ.setdefault(t, set())
    for a in q_atoms:
        u = a.lhs if isinstance(a.lhs, Attr) else a.lhs.value
        v = a.rhs if isinstance(a.rhs, Attr) else a.rhs.value
        if a.op == "=":
            edge(u, v, False)
            edge(v, u, False)
        elif a.op == "<":
            edge(u, v, True)
        elif a.op == "<=":
            edge(u, v, False)
        else:
            neqs.append((u, v))
    ordered = sorted(const_vals)
    for c1, c2 in zip(ordered, ordered[1:]):
        edge(c1, c2, True)

    reach: dict = {}

    def reachable(u, v) -> bool:
        seen = reach.get(u)
        if seen is None:
            seen = {u}
            stack = [u]
            while stack:
                for w in succ.get(stack.pop(), ()):
                    if w not in seen:
                        seen.add(w)
                        stack.append(w)
            reach[u] = seen
        return v in seen

    for u, v in strict_edges:
        if reachable(v, u):
            return False
    for u, v in neqs:
        if u == v or (reachable(u, v) and reachable(v, u)):
            return False
    return True


# --- quantifier elimination -------------------------------------------------


def eliminate_clause(atoms: Clause, drop_vars) -> list[Clause]:
    """∃(drop_vars). atoms, as a disjunction of clauses over the rest.

    D nodes: substitute through an equality when one exists, otherwise the
    residue is pure ≠ and vanishes (infinite domain). Q nodes: dense-order
    Fourier–Motzkin — every lower bound meets every upper bound, strict if
    either side is strict — with each ≠ on the node split into the < and >
    branches first (exactness on pinned points).
    """
    drop_vars = set(drop_vars)
    nodes = sorted(
        {
            t
            for a in atoms
            for t in (a.lhs, a.rhs)
            if isinstance(t, Attr) and t.var in drop_vars
        },
        key=_term_key,
    )
    branches: list[Clause] = [frozenset(atoms)]
    for node in nodes:
        nxt: list[Clause] = []
        for clause in branches:
            nxt.extend(_eliminate_node(clause, node))
        branches = subsume(nxt)
    out = []
    for c in branches:
        s = _simplify_clause(c)
        if s is not None and conj_sat(s):
            out.append(s)
    return subsume(out)


def _eliminate_node(atoms: Clause, node: Attr) -> list[Clause]:
    touching, rest = [], []
    for a in atoms:
        (touching if node in (a.lhs, a.rhs) else rest).append(a)
    if not touching:
        return [atoms]

    for a in touching:
        if a.op == "=":
            other = a.rhs if a.lhs == node else a.lhs
            repl = []
            for b in touching:
                lhs = other if b.lhs == node else b.lhs
                rhs = other if b.rhs == node else b.rhs
                v = make_atom(lhs, b.op, rhs, b.sort)
                if v is False:
                    return []
                if v is not True:
                    repl.append(v)
            return [frozenset(rest) | frozenset(repl)]

    sort = touching[0].sort
    if sort is Sort.D:
        # only disequalities remain; an infinite domain always has room
        return [frozenset(rest)]

    lowers, uppers, neq_terms = [], [], []
    for a in touching:
        if a.op == "!=":
            neq_terms.append(a.rhs if a.lhs == node else a.lhs)
        elif a.lhs == node:
            uppers.append((a.rhs, a.op == "<"))
        else:
            lowers.append((a.lhs, a.op == "<"))

    results = []
    for split in itertools.product((0, 1), repeat=len(neq_terms)):
        lo = list(lowers)
        hi = list(uppers)
        for side, t in zip(split, neq_terms):
            if side:
                lo.append((t, True))  # t < node
            else:
                hi.append((t, True))  # node < t
        new_atoms = set(rest)
        dead = False
        for (lt, ls), (ut, us) in itertools.product(lo, hi):
            v = make_atom(lt, "<" if (ls or us) else "<=", ut, sort)
            if v is False:
                dead = True
                break
            if v is not True:
                new_atoms.add(v)
        if not dead:
            results.append(frozenset(new_atoms))
    return results


# --- preference formulas ----------------------------------------------------


class PreferenceFormula:
    """A well-typed ERO formula over the tuple variables x and y.

    Immutable; DNF and property results are cached lazily. Semantic equality
    is `equivalent`, not ``==``.
    """

    __slots__ = ("schema", "body", "_dnf", "_neg_dnf", "_props")

    def __init__(self, schema: Schema, body):
        extra = node_vars(body) - {X, Y}
        if extra:
            raise FormulaTypeError(f"free variables beyond x/y: {sorted(extra)}")
        self.schema = schema
        self.body = body
        self._dnf = None
        self._neg_dnf = None
        self._props = {}

    def dnf(self) -> tuple[Clause, ...]:
        if self._dnf is None:
            self._dnf = node_dnf(self.body)
        return self._dnf

    def neg_dnf(self) -> tuple[Clause, ...]:
        if self._neg_dnf is None:
            self._neg_dnf = node_dnf(Not(self.body))
        return self._neg_dnf

    def __repr__(self):
        return f"PreferenceFormula({to_dsl(self)})"


def formula_from_dnf(sch: Schema, clauses) -> PreferenceFormula:
    f = PreferenceFormula(sch, dnf_to_node(clauses))
    f._dnf = tuple(clauses)
    return f


def to_dnf(f: PreferenceFormula) -> tuple[Conjunction, ...]:
    return tuple(Conjunction(c) for c in f.dnf())


def is_satisfiable(f: PreferenceFormula) -> bool:
    return bool(f.dnf())


def node_sat(node) -> bool:
    """Satisfiability of an arbitrary body (any number of tuple variables)."""
    return bool(node_dnf(node))


def implies(f: PreferenceFormula, g: PreferenceFormula) -> bool:
    """True iff f ∧ ¬g is unsatisfiable. Requires a shared schema."""
    if f.schema != g.schema:
        raise SchemaMismatch("implies() needs formulas over one schema")
    for cf in f.dnf():
        for cg in g.neg_dnf():
            m = merge_clauses(cf, cg)
            if m is not None:
                s = _simplify_clause(m)
                if s is not None and conj_sat(s):
                    return False
    return True


def equivalent(f: PreferenceFormula, g: PreferenceFormula) -> bool:
    return implies(f, g) and implies(g, f)


def eliminate_exists(c: Conjunction, drop_vars) -> tuple[Conjunction, ...]:
    """Public QE entry point over a Conjunction; drop_vars must be auxiliary."""
    bad = set(drop_vars) & {X, Y}
    if bad:
        raise FormulaTypeError(f"cannot eliminate the distinguished variables {sorted(bad)}")
    return tuple(Conjunction(a) for a in eliminate_clause(c.atoms, drop_vars))


# --- ground evaluation ------------------------------------------------------


def eval_atom(a: Atom, bindings: dict, sch: Schema) -> bool:
    def val(t: Term):
        if isinstance(t, Const):
            return t.value
        return bindings[t.var][sch.index_of(t.attr)]

    u, v = val(a.lhs), val(a.rhs)
    if a.op == "=":
        return u == v
    if a.op == "!=":
        return u != v
    if a.op == "<":
        return u < v
    return u <= v


def eval_node(node, bindings: dict, sch: Schema) -> bool:
    if isinstance(node, bool):
        return node
    if isinstance(node, Atom):
        return eval_atom(node, bindings, sch)
    if isinstance(node, And):
        return all(eval_node(p, bindings, sch) for p in node.parts)
    if isinstance(node, Or):
        return any(eval_node(p, bindings, sch) for p in node.parts)
    if isinstance(node, Not):
        return not eval_node(node.part, bindings, sch)
    raise TypeError(f"not a formula node: {node!r}")


def eval_ground(f: PreferenceFormula, tx, ty) -> bool:
    """C(tx, ty): x bound to the preferred side, y to the dominated side."""
    arity = len(f.schema.attributes)
    if len(tx) != arity or len(ty) != arity:
        raise FormulaTypeError(
            f"tuple arity {len(tx)}/{len(ty)} does not match schema arity {arity}"
        )
    return eval_node(f.body, {X: tx, Y: ty}, f.schema)


# --- DSL writer ---------------------------------------------------------------


def _atom_dsl(a: Atom) -> str:
    return f"{a.lhs} {a.op} {a.rhs}"


def to_dsl(f: PreferenceFormula) -> str:
    """Deterministic DSL text for a formula, rebuilt from its DNF."""
    clauses = f.dnf()
    if not clauses:
        return "FALSE"
    parts = []
    for c in clauses:
        atoms = sorted_atoms(c)
        if not atoms:
            return "TRUE"
        parts.append(" AND ".join(_atom_dsl(a) for a in atoms))
    if len(parts) == 1:
        return parts[0]
    return " OR ".join(f"({p})" for p in parts)
