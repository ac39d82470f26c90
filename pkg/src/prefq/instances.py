"""Finite relation instances: typed tuples, CSV ingestion, set-level updates.

Values are plain Python data: ``str`` for D attributes and exact
``fractions.Fraction`` for Q attributes. Instances are immutable snapshots;
updates build new instances. Tuple order is preserved from input so outputs
are reproducible, but all set semantics ignore it.
"""

from __future__ import annotations

import io
import re
from dataclasses import dataclass
from fractions import Fraction

from .errors import (
    DuplicateTuple,
    HeaderMismatch,
    OverlapError,
    ValueParseError,
)
from .formulas import Schema, Sort

Row = tuple  # tuple[str | Fraction, ...]

_RAT_RE = re.compile(r"[+-]?\d+(\.\d+)?$|[+-]?\d+/\d+$")


def parse_value(text: str, sort: Sort):
    if sort is Sort.D:
        if text == "":
            raise ValueError("empty D value")
        return text
    if not _RAT_RE.match(text.strip()):
        raise ValueError(f"not a rational literal: {text!r}")
    return Fraction(text.strip())


def format_value(value) -> str:
    if isinstance(value, Fraction):
        return str(value)
    return str(value)


def check_row(row: Row, schema: Schema) -> Row:
    if len(row) != len(schema.attributes):
        raise ValueError(f"arity {len(row)} != schema arity {len(schema.attributes)}")
    for v, (name, sort) in zip(row, schema.attributes):
        if sort is Sort.D and not (isinstance(v, str) and v):
            raise ValueError(f"attribute {name}: expected nonempty text, got {v!r}")
        if sort is Sort.Q and not isinstance(v, Fraction):
            raise ValueError(f"attribute {name}: expected Fraction, got {v!r}")
    return tuple(row)


@dataclass(frozen=True)
class Instance:
    """Duplicate-free finite set of schema-conformant tuples, in stable order."""

    name: str
    schema: Schema
    tuples: tuple = ()

    def __post_init__(self):
        rows = tuple(check_row(t, self.schema) for t in self.tuples)
        if len(set(rows)) != len(rows):
            raise ValueError("duplicate tuples in instance")
        object.__setattr__(self, "tuples", rows)

    def __len__(self):
        return len(self.tuples)

    def __iter__(self):
        return iter(self.tuples)

    def __contains__(self, row):
        return row in set(self.tuples)

    def as_set(self) -> frozenset:
        return frozenset(self.tuples)


def coerce_row(texts, schema: Schema, row_no: int = 0) -> Row:
    """Parse a sequence of cell texts into a typed row."""
    if len(texts) != len(schema.attributes):
        raise ValueParseError(row_no, "<row>", ",".join(texts))
    out = []
    for text, (name, sort) in zip(texts, schema.attributes):
        try:
            out.append(parse_value(text, sort))
        except ValueError:
            raise ValueParseError(row_no, name, text) from None
    return tuple(out)


def load_csv(source, schema: Schema, name: str = "r") -> Instance:
    """Build an instance from CSV text: header row first, comma separation,
    no quoting (a comma inside a D value is a structural error)."""
    if isinstance(source, bytes):
        text = source.decode("utf-8")
    elif isinstance(source, str):
        text = source
    else:
        text = source.read()
        if isinstance(text, bytes):
            text = text.decode("utf-8")
    lines = [ln for ln in text.splitlines() if ln.strip() != ""]
    if not lines:
        raise HeaderMismatch("empty CSV: missing header row")
    header = tuple(h.strip() for h in lines[0].split(","))
    if header != schema.names:
        raise HeaderMismatch(
            f"header {header} does not match schema attributes {schema.names}"
        )
    rows = []
    seen = set()
    for row_no, line in enumerate(lines[1:], start=2):
        row = coerce_row(line.split(","), schema, row_no)
        if row in seen:
            raise DuplicateTuple(row_no)
        seen.add(row)
        rows.append(row)
    return Instance(name, schema, tuple(rows))


def to_csv(r: Instance) -> str:
    out = io.StringIO()
    out.write(",".join(r.schema.names) + "\n")
    for row in r.tuples:
        out.write(",".join(format_value(v) for v in row) + "\n")
    return out.getvalue()


def apply_update(r: Instance, insert=(), delete=()) -> Instance:
    """(r ∖ delete) ∪ insert with stable order: survivors first, insertions
    appended in given order. Insert/delete sets must not overlap."""
    ins = [check_row(t, r.schema) for t in insert]
    del_set = {check_row(t, r.schema) for t in delete}
    if del_set & set(ins):
        raise OverlapError("insert and delete sets overlap")
    survivors = [t for t in r.tuples if t not in del_set]
    present = set(survivors)
    appended = []
    for t in ins:
        if t not in present:
            appended.append(t)
            present.add(t)
    return Instance(r.name, r.schema, tuple(survivors + appended))
