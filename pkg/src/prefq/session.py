"""Session state and command execution: the operational surface behind the
REPL, batch scripts, and the HTTP service.

Commands are line-oriented, ';'-separated. Winnow results are cached per
(preference, relation, version) and reused through the containment and
insertion laws; REVISE composes, transitively closes when needed, and reports
order properties and compatibility diagnostics before the new preference is
used.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from pathlib import Path

from . import closure, compat, winnow as winnow_mod
from .algebra import (
    CompositionOp,
    OrderProperty,
    PreferenceRelation,
    check_property,
    compose,
    relation,
)
from .errors import CommandError, NotSPO, VersionError
from .formulas import Schema, Sort, eval_ground, to_dsl
from .instances import Instance, apply_update, coerce_row, format_value, load_csv
from .parser import parse_formula
from .winnow import CachedResult, winnow

SESSION_FORMAT = "prefq-session 1"

_SORT_NAMES = {"str": Sort.D, "rat": Sort.Q, "d": Sort.D, "q": Sort.Q}
_SORT_WIRE = {Sort.D: "str", Sort.Q: "rat"}

_PROP_NAMES = {
    "irreflexive": OrderProperty.IRREFLEXIVE,
    "transitive": OrderProperty.TRANSITIVE,
    "negtrans": OrderProperty.NEGATIVELY_TRANSITIVE,
    "negatively_transitive": OrderProperty.NEGATIVELY_TRANSITIVE,
    "connected": OrderProperty.CONNECTED,
    "spo": OrderProperty.SPO,
    "io": OrderProperty.IO,
    "wo": OrderProperty.WO,
    "total": OrderProperty.TOTAL_ORDER,
    "total_order": OrderProperty.TOTAL_ORDER,
}

_OP_NAMES = {
    "union": CompositionOp.UNION,
    "prioritized": CompositionOp.PRIORITIZED,
    "pareto": CompositionOp.PARETO,
}


@dataclass
class SessionState:
    relations: dict = field(default_factory=dict)  # name -> Instance
    versions: dict = field(default_factory=dict)  # name -> int
    preferences: dict = field(default_factory=dict)  # name -> PreferenceRelation
    pref_dsl: dict = field(default_factory=dict)  # name -> definition text
    caches: dict = field(default_factory=dict)  # (pref, rel) -> CachedResult
    history: list = field(default_factory=list)

    def relation_named(self, name: str) -> Instance:
        if name not in self.relations:
            raise CommandError(f"unknown relation {name!r}")
        return self.relations[name]

    def preference_named(self, name: str) -> PreferenceRelation:
        if name not in self.preferences:
            raise CommandError(f"unknown preference {name!r}")
        return self.preferences[name]


def schema_to_wire(schema: Schema) -> list:
    return [{"name": n, "sort": _SORT_WIRE[s]} for n, s in schema.attributes]


def schema_from_wire(attrs) -> Schema:
    pairs = []
    for a in attrs:
        sort = _SORT_NAMES.get(str(a["sort"]).lower())
        if sort is None:
            raise CommandError(f"unknown sort {a['sort']!r} (use str or rat)")
        pairs.append((a["name"], sort))
    return Schema(tuple(pairs))


def rows_to_wire(inst: Instance) -> list:
    return [[format_value(v) for v in row] for row in inst.tuples]


def _pref_report(p: PreferenceRelation) -> dict:
    return {
        "spo": check_property(p, OrderProperty.SPO),
        "io": check_property(p, OrderProperty.IO),
        "wo": check_property(p, OrderProperty.WO),
    }


def _witness_wire(sample):
    if sample is None:
        return None
    tx, ty = sample
    return {
        "preferred": [format_value(v) for v in tx],
        "other": [format_value(v) for v in ty],
    }


# --- operations (shared by commands and HTTP endpoints) -------------------------


def op_load(state: SessionState, name: str, schema: Schema, csv_text: str) -> dict:
    inst = load_csv(csv_text, schema, name)
    state.relations[name] = inst
    state.versions[name] = state.versions.get(name, 0) + 1
    state.caches = {
        key: c for key, c in state.caches.items() if key[1] != name
    }
    return {"name": name, "version": state.versions[name], "rows": rows_to_wire(inst)}


def op_pref(state: SessionState, name: str, dsl: str, schema: Schema) -> dict:
    p = relation(name, parse_formula(dsl, schema))
    state.preferences[name] = p
    state.pref_dsl[name] = dsl
    return {"name": name, "dsl": dsl, "properties": _pref_report(p)}


def op_winnow(state: SessionState, pref_name: str, rel_name: str) -> dict:
    p = state.preference_named(pref_name)
    r = state.relation_named(rel_name)
    version = state.versions[rel_name]
    reused = False
    note = ""
    cached = state.caches.get((pref_name, rel_name))
    if cached is not None and cached.version == version:
        result, reused, note = cached.result, True, "cache hit"
    else:
        result = None
        for (old_pref, old_rel), entry in state.caches.items():
            if old_rel != rel_name or entry.version != version:
                continue
            candidate, ok = winnow_mod.winnow_refine(p, entry, r)
            if ok:
                result, reused = candidate, True
                note = f"refined from cached {old_pref!r} (containment law)"
                break
        if result is None:
            result = winnow(p, r)
    state.caches[(pref_name, rel_name)] = CachedResult(p, rel_name, version, result)
    dominated = []
    surviving = result.as_set()
    for t in r.tuples:
        if t in surviving:
            continue
        by = next(s for s in r.tuples if eval_ground(p.formula, s, t))
        dominated.append(
            {
                "row": [format_value(v) for v in t],
                "by": [format_value(v) for v in by],
            }
        )
    return {
        "pref": pref_name,
        "relation": rel_name,
        "rows": rows_to_wire(result),
        "reused": reused,
        "note": note,
        "dominated": dominated,
    }


def op_revise(
    state: SessionState,
    base_name: str,
    revising_name: str,
    operator: str,
    new_name: str,
    tc: bool | None = None,
    base_wins: bool = False,
) -> dict:
    base = state.preference_named(base_name)
    revising = state.preference_named(revising_name)
    op = _OP_NAMES.get(operator.lower())
    if op is None:
        raise CommandError(f"unknown composition operator {operator!r}")

    if op is CompositionOp.PRIORITIZED and base_wins:
        composed = compose(base, revising, op)
    elif op is CompositionOp.PRIORITIZED:
        composed = compose(revising, base, op)  # revising-wins default
    else:
        composed = compose(revising, base, op)

    if tc is None:
        if op is CompositionOp.PRIORITIZED and not base_wins:
            shortcut = check_property(revising, OrderProperty.WO) and check_property(
                base, OrderProperty.SPO
            )
        else:
            shortcut = False
        tc = not shortcut and not check_property(composed, OrderProperty.TRANSITIVE)
    result = closure.transitive_closure(composed) if tc else composed
    result = result.renamed(new_name)

    compat_report = {}
    for level in (0, 1, 2):
        rep = compat.conflict_formula(base, revising, level)
        compat_report[str(level)] = {
            "compatible": not rep.satisfiable,
            "witness": _witness_wire(rep.sample_witness),
        }

    state.preferences[new_name] = result
    dsl = to_dsl(result.formula)
    state.pref_dsl[new_name] = dsl
    return {
        "name": new_name,
        "dsl": dsl,
        "tc_applied": tc,
        "operator": operator.lower(),
        "properties": _pref_report(result),
        "compatibility": compat_report,
    }


def op_check(state: SessionState, pref_name: str, prop_name: str) -> dict:
    prop = _PROP_NAMES.get(prop_name.lower())
    if prop is None:
        raise CommandError(f"unknown property {prop_name!r}")
    p = state.preference_named(pref_name)
    return {"pref": pref_name, "property": prop.value, "holds": check_property(p, prop)}


def op_compat(
    state: SessionState, pref_name: str, base_name: str, level: int, reading="harmonized"
) -> dict:
    p = state.preference_named(pref_name)
    p0 = state.preference_named(base_name)
    rep = compat.conflict_formula(p, p0, level, reading)
    return {
        "pref": pref_name,
        "revising": base_name,
        "level": level,
        "compatible": not rep.satisfiable,
        "witness": _witness_wire(rep.sample_witness),
    }


def op_update(state: SessionState, rel_name: str, insert_rows, delete_rows) -> dict:
    r = state.relation_named(rel_name)
    insert = [coerce_row([str(c) for c in row], r.schema) for row in insert_rows]
    delete = [coerce_row([str(c) for c in row], r.schema) for row in delete_rows]
    updated = apply_update(r, insert, delete)
    state.relations[rel_name] = updated
    old_version = state.versions[rel_name]
    state.versions[rel_name] = old_version + 1
    refreshed = []
    for (pref_name, cached_rel), entry in list(state.caches.items()):
        if cached_rel != rel_name or entry.version != old_version:
            continue
        p = entry.preference
        if not delete:
            try:
                delta = Instance("delta", r.schema, tuple(insert))
                result = winnow_mod.winnow_insert(p, entry, delta)
                law, reused = "insert", True
            except NotSPO:
                result = winnow(p, updated)
                law, reused = "full", False
        else:
            result = winnow(p, updated)
            law, reused = "full", False
            bound = winnow_mod.winnow_delete_bound(
                entry, Instance("gone", r.schema, tuple(delete))
            )
            assert bound.as_set() <= result.as_set()
        state.caches[(pref_name, rel_name)] = CachedResult(
            p, rel_name, state.versions[rel_name], result
        )
        refreshed.append(
            {
                "pref": pref_name,
                "rows": rows_to_wire(result),
                "reused": reused,
                "law": law,
            }
        )
    return {
        "name": rel_name,
        "version": state.versions[rel_name],
        "rows": rows_to_wire(updated),
        "winnows": refreshed,
    }


def op_rank(state: SessionState, pref_name: str, rel_name: str) -> dict:
    p = state.preference_named(pref_name)
    r = state.relation_named(rel_name)
    assignment = winnow_mod.rank(p, r)
    return {
        "pref": pref_name,
        "relation": rel_name,
        "ranks": [
            {"row": [format_value(v) for v in t], "rank": assignment.rank(t)}
            for t in r.tuples
        ],
    }


def _trace_wire(trace) -> list:
    return [
        {
            "index": s.index,
            "dsl": to_dsl(s.relation.formula),
            "is_wo": s.is_wo,
            "new_facts": s.new_facts_added,
        }
        for s in trace.stages
    ]


def op_trace(state: SessionState, pref_name: str, expression: str) -> dict:
    p = state.preference_named(pref_name)
    expr = closure.Expression(expression.lower())
    trace = closure.eval_expression(expr, p)
    return {"pref": pref_name, "expression": expr.value, "stages": _trace_wire(trace)}


def op_extend_wo(state: SessionState, pref_name: str, new_name: str) -> dict:
    p = state.preference_named(pref_name)
    trace = closure.eval_expression(closure.Expression.E2, p)
    result = trace.final.renamed(new_name)
    state.preferences[new_name] = result
    dsl = to_dsl(result.formula)
    state.pref_dsl[new_name] = dsl
    return {
        "name": new_name,
        "dsl": dsl,
        "properties": _pref_report(result),
        "stages": _trace_wire(trace),
    }


# --- persistence ----------------------------------------------------------------


def dump_session(state: SessionState) -> str:
    """Versioned, human-readable session text: relation CSV payloads,
    preference DSL definitions, cache metadata, and the command history.
    Blocks are END-terminated, so a lone D value spelled exactly END cannot
    be stored in a session file."""
    lines = [SESSION_FORMAT]
    for name in sorted(state.relations):
        inst = state.relations[name]
        decl = ",".join(f"{n}:{_SORT_WIRE[s]}" for n, s in inst.schema.attributes)
        lines.append(f"RELATION {name} {state.versions[name]} {decl}")
        for row in inst.tuples:
            lines.append(",".join(format_value(v) for v in row))
        lines.append("END")
    for name in sorted(state.preferences):
        p = state.preferences[name]
        decl = ",".join(f"{n}:{_SORT_WIRE[s]}" for n, s in p.schema.attributes)
        lines.append(f"PREF {name} {decl} = {state.pref_dsl[name]}")
    for (pref, rel) in sorted(state.caches):
        entry = state.caches[(pref, rel)]
        lines.append(f"CACHE {pref} {rel} {entry.version}")
        for row in entry.result.tuples:
            lines.append(",".join(format_value(v) for v in row))
        lines.append("END")
    lines.append("HISTORY")
    lines.extend(state.history)
    lines.append("END")
    return "\n".join(lines) + "\n"


def parse_session(text: str) -> SessionState:
    lines = text.splitlines()
    if not lines or lines[0].strip() != SESSION_FORMAT:
        raise VersionError(
            f"unknown session format {(lines[0] if lines else '')!r}; "
            f"expected {SESSION_FORMAT!r}"
        )
    state = SessionState()
    i = 1
    while i < len(lines):
        line = lines[i].strip()
        i += 1
        if not line:
            continue
        if line.startswith("RELATION "):
            _, name, version, decl = line.split(" ", 3)
            attrs = []
            for part in decl.split(","):
                attr, sort = part.split(":")
                attrs.append((attr, _SORT_NAMES[sort]))
            sch = Schema(tuple(attrs))
            rows = []
            while lines[i].strip() != "END":
                rows.append(coerce_row(lines[i].split(","), sch, i + 1))
                i += 1
            i += 1
            state.relations[name] = Instance(name, sch, tuple(rows))
            state.versions[name] = int(version)
        elif line.startswith("PREF "):
            rest = line[len("PREF "):]
            head, dsl = rest.split(" = ", 1)
            name, decl = head.strip().split(" ", 1)
            attrs = []
            for part in decl.split(","):
                attr, sort = part.split(":")
                attrs.append((attr, _SORT_NAMES[sort]))
            sch = Schema(tuple(attrs))
            state.pref_dsl[name] = dsl.strip()
            state.preferences[name] = relation(name, parse_formula(dsl.strip(), sch))
        elif line.startswith("CACHE "):
            _, pref, rel, version = line.split(" ")
            sch = state.relations[rel].schema
            rows = []
            while lines[i].strip() != "END":
                rows.append(coerce_row(lines[i].split(","), sch, i + 1))
                i += 1
            i += 1
            state.caches[(pref, rel)] = CachedResult(
                None, rel, int(version), Instance(rel, sch, tuple(rows))
            )
        elif line == "HISTORY":
            while lines[i].strip() != "END":
                state.history.append(lines[i])
                i += 1
            i += 1
        else:
            raise VersionError(f"unrecognized session line: {line!r}")
    for (pref, rel), entry in list(state.caches.items()):
        if entry.version != state.versions.get(rel):
            raise VersionError(f"cache {pref}/{rel} references a stale version")
        if pref not in state.preferences:
            raise VersionError(f"cache {pref}/{rel} references an unknown preference")
        state.caches[(pref, rel)] = CachedResult(
            state.preferences[pref], rel, entry.version, entry.result
        )
    return state


def save_session(state: SessionState, path) -> None:
    Path(path).write_text(dump_session(state), encoding="utf-8")


def load_session(path) -> SessionState:
    return parse_session(Path(path).read_text(encoding="utf-8"))


# --- command language -----------------------------------------------------------


_LOAD_RE = re.compile(
    r"^LOAD\s+(?P<name>\w+)\s+FROM\s+(?P<path>'[^']*'|\S+)\s*\((?P<schema>[^)]*)\)$",
    re.IGNORECASE,
)
_PREF_RE = re.compile(
    r"^PREF\s+(?P<name>\w+)\s+ON\s+(?P<rel>\w+)\s*=\s*(?P<dsl>.+)$|"
    r"^PREF\s+(?P<name2>\w+)\s*=\s*(?P<dsl2>.+)$",
    re.IGNORECASE,
)
_WINNOW_RE = re.compile(r"^WINNOW\s+(\w+)\s+OVER\s+(\w+)$", re.IGNORECASE)
_REVISE_RE = re.compile(
    r"^REVISE\s+(?P<base>\w+)\s+WITH\s+(?P<rev>\w+)\s+USING\s+(?P<op>\w+)"
    r"(?P<flags>(\s+(TC|NOTC|BASEWINS))*)\s+AS\s+(?P<name>\w+)$",
    re.IGNORECASE,
)
_CHECK_RE = re.compile(r"^CHECK\s+(\w+)\s+(\w+)$", re.IGNORECASE)
_COMPAT_RE = re.compile(
    r"^COMPAT\s+(\w+)\s+WITH\s+(\w+)(?:\s+LEVEL\s+([012]))?$", re.IGNORECASE
)
_UPDATE_RE = re.compile(
    r"^UPDATE\s+(?P<rel>\w+)(?P<body>.*)$", re.IGNORECASE | re.DOTALL
)
_RANK_RE = re.compile(r"^RANK\s+(\w+)\s+OVER\s+(\w+)$", re.IGNORECASE)
_EXTEND_RE = re.compile(r"^EXTEND\s+(\w+)\s+AS\s+(\w+)$", re.IGNORECASE)
_TRACE_RE = re.compile(r"^TRACE\s+(\w+)\s+USING\s+(E1|E2)$", re.IGNORECASE)
_SAVE_RE = re.compile(r"^SAVE\s+(?P<path>'[^']*'|\S+)$", re.IGNORECASE)
_ROW_RE = re.compile(r"\(([^)]*)\)")


def _parse_schema_decl(decl: str) -> Schema:
    attrs = []
    for part in decl.split(","):
        part = part.strip()
        if ":" not in part:
            raise CommandError(f"bad attribute declaration {part!r} (want name:sort)")
        attr, sort_name = (s.strip() for s in part.split(":", 1))
        sort = _SORT_NAMES.get(sort_name.lower())
        if sort is None:
            raise CommandError(f"unknown sort {sort_name!r} (use str or rat)")
        attrs.append((attr, sort))
    return Schema(tuple(attrs))


def _unquote(s: str) -> str:
    return s[1:-1] if s.startswith("'") and s.endswith("'") else s


def render_instance_rows(rows) -> str:
    if not rows:
        return "(empty)"
    widths = [max(len(r[i]) for r in rows) for i in range(len(rows[0]))]
    return "\n".join(
        " | ".join(c.ljust(w) for c, w in zip(r, widths)) for r in rows
    )


def render_table(inst_rows, header) -> str:
    rows = [list(header)] + [list(r) for r in inst_rows]
    widths = [max(len(str(r[i])) for r in rows) for i in range(len(header))]
    lines = [
        " | ".join(str(c).ljust(w) for c, w in zip(r, widths)) for r in rows
    ]
    lines.insert(1, "-+-".join("-" * w for w in widths))
    return "\n".join(lines)


def _default_schema(state: SessionState) -> Schema | None:
    schemas = {inst.schema for inst in state.relations.values()}
    if len(schemas) == 1:
        return next(iter(schemas))
    return None


def execute(cmd: str, state: SessionState) -> tuple[SessionState, str]:
    """Run one command; returns the (mutated) state and rendered output.

    Every command lands in the replayable history except SAVE and RESTORE,
    whose replay would touch the filesystem rather than rebuild state.
    """
    cmd = cmd.strip()
    if not cmd or cmd.startswith("#"):
        return state, ""
    out = _dispatch(cmd, state)
    head = cmd.split(None, 1)[0].upper()
    if head not in ("SAVE", "RESTORE"):
        state.history.append(cmd)
    return state, out


def run_script(text: str, state: SessionState) -> tuple[SessionState, list]:
    outputs = []
    for raw in text.replace("\n", ";").split(";"):
        if raw.strip():
            state, out = execute(raw, state)
            if out:
                outputs.append(out)
    return state, outputs


def _dispatch(cmd: str, state: SessionState) -> str:
    m = _LOAD_RE.match(cmd)
    if m:
        sch = _parse_schema_decl(m.group("schema"))
        path = _unquote(m.group("path"))
        csv_text = Path(path).read_text(encoding="utf-8")
        payload = op_load(state, m.group("name"), sch, csv_text)
        return (
            f"loaded {payload['name']} (version {payload['version']}, "
            f"{len(payload['rows'])} rows)"
        )

    m = _PREF_RE.match(cmd)
    if m:
        name = m.group("name") or m.group("name2")
        dsl = (m.group("dsl") or m.group("dsl2")).strip()
        rel_name = m.group("rel")
        if rel_name:
            sch = state.relation_named(rel_name).schema
        else:
            sch = _default_schema(state)
            if sch is None:
                raise CommandError(
                    "ambiguous schema; use PREF <name> ON <relation> = <formula>"
                )
        payload = op_pref(state, name, dsl, sch)
        props = payload["properties"]
        badges = " ".join(k.upper() for k in ("spo", "io", "wo") if props[k]) or "none"
        return f"preference {name}: {badges}"

    m = _WINNOW_RE.match(cmd)
    if m:
        payload = op_winnow(state, m.group(1), m.group(2))
        r = state.relations[m.group(2)]
        table = render_table(payload["rows"], r.schema.names)
        note = f"  [{payload['note']}]" if payload["reused"] else ""
        return table + note

    m = _REVISE_RE.match(cmd)
    if m:
        flags = (m.group("flags") or "").upper().split()
        tc = True if "TC" in flags else False if "NOTC" in flags else None
        payload = op_revise(
            state,
            m.group("base"),
            m.group("rev"),
            m.group("op"),
            m.group("name"),
            tc=tc,
            base_wins="BASEWINS" in flags,
        )
        props = payload["properties"]
        badges = " ".join(k.upper() for k in ("spo", "io", "wo") if props[k]) or "none"
        compat_bits = ", ".join(
            f"{lvl}:{'ok' if rep['compatible'] else 'conflict'}"
            for lvl, rep in payload["compatibility"].items()
        )
        return (
            f"revised -> {payload['name']} ({badges}; "
            f"tc={'yes' if payload['tc_applied'] else 'no'}; compat {compat_bits})\n"
            f"  {payload['dsl']}"
        )

    m = _CHECK_RE.match(cmd)
    if m:
        payload = op_check(state, m.group(1), m.group(2))
        return str(payload["holds"]).lower()

    m = _COMPAT_RE.match(cmd)
    if m:
        levels = [int(m.group(3))] if m.group(3) else [0, 1, 2]
        parts = []
        for level in levels:
            payload = op_compat(state, m.group(1), m.group(2), level)
            bit = "compatible" if payload["compatible"] else "conflict"
            if payload["witness"]:
                bit += f" (witness {payload['witness']})"
            parts.append(f"level {level}: {bit}")
        return "\n".join(parts)

    m = _UPDATE_RE.match(cmd)
    if m:
        body = m.group("body")
        insert_rows, delete_rows = [], []
        ins = re.search(r"INSERT((?:\s*\([^)]*\))+)", body, re.IGNORECASE)
        dele = re.search(r"DELETE((?:\s*\([^)]*\))+)", body, re.IGNORECASE)
        if ins:
            insert_rows = [
                [c.strip() for c in g.split(",")] for g in _ROW_RE.findall(ins.group(1))
            ]
        if dele:
            delete_rows = [
                [c.strip() for c in g.split(",")] for g in _ROW_RE.findall(dele.group(1))
            ]
        payload = op_update(state, m.group("rel"), insert_rows, delete_rows)
        lines = [
            f"{payload['name']} now version {payload['version']} "
            f"({len(payload['rows'])} rows)"
        ]
        for w in payload["winnows"]:
            lines.append(
                f"  winnow[{w['pref']}] refreshed via {w['law']} law "
                f"({len(w['rows'])} rows)"
            )
        return "\n".join(lines)

    m = _RANK_RE.match(cmd)
    if m:
        payload = op_rank(state, m.group(1), m.group(2))
        return "\n".join(
            f"{','.join(e['row'])}: rank {e['rank']}" for e in payload["ranks"]
        )

    m = _EXTEND_RE.match(cmd)
    if m:
        payload = op_extend_wo(state, m.group(1), m.group(2))
        return f"extended -> {payload['name']} (WO)\n  {payload['dsl']}"

    m = _TRACE_RE.match(cmd)
    if m:
        payload = op_trace(state, m.group(1), m.group(2))
        lines = []
        for s in payload["stages"]:
            flags = []
            if s["is_wo"]:
                flags.append("WO")
            if not s["new_facts"]:
                flags.append("fixpoint")
            suffix = f" [{', '.join(flags)}]" if flags else ""
            lines.append(f"T{s['index']}: {s['dsl']}{suffix}")
        return "\n".join(lines)

    m = _SAVE_RE.match(cmd)
    if m:
        save_session(state, _unquote(m.group("path")))
        return f"session saved to {_unquote(m.group('path'))}"

    if cmd.upper().startswith("RESTORE "):
        path = _unquote(cmd[len("RESTORE "):].strip())
        loaded = load_session(path)
        state.relations = loaded.relations
        state.versions = loaded.versions
        state.preferences = loaded.preferences
        state.pref_dsl = loaded.pref_dsl
        state.caches = loaded.caches
        state.history = loaded.history
        return f"session restored from {path}"

    if cmd.upper() == "SHOW RELATIONS":
        return "\n".join(
            f"{n} (version {state.versions[n]}, {len(r)} rows)"
            for n, r in sorted(state.relations.items())
        ) or "(none)"
    if cmd.upper() == "SHOW PREFS":
        return "\n".join(
            f"{n} = {state.pref_dsl[n]}" for n in sorted(state.preferences)
        ) or "(none)"

    raise CommandError(f"cannot parse command: {cmd!r}")
