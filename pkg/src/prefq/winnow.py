"""Winnow over finite instances and the incremental-evaluation laws.

winnow(p, r) is the exact set definition — tuples of r no other tuple of r
dominates — so it is correct for every preference relation, SPO or not. The
reuse laws (insert, refine) carry the strict-partial-order preconditions of
their theorems and refuse to run without them.
"""

from __future__ import annotations

from dataclasses import dataclass

from .algebra import OrderProperty, PreferenceRelation, check_property, contains
from .errors import NotSPO, SchemaMismatch, StaleCache
from .formulas import eval_ground
from .instances import Instance, apply_update
from .restriction import FinitePreference, finite_check, restrict


def winnow(p: PreferenceRelation, r: Instance) -> Instance:
    """Most-preferred tuples: { t ∈ r | no t' ∈ r with t' ≻ t }, in r's order."""
    if p.schema != r.schema:
        raise SchemaMismatch(f"{p.name} and instance {r.name} differ in schema")
    f = p.formula
    rows = tuple(
        t for t in r.tuples if not any(eval_ground(f, s, t) for s in r.tuples)
    )
    return Instance(r.name, r.schema, rows)


@dataclass(frozen=True)
class CachedResult:
    """A materialized winnow result, pinned to one relation version."""

    preference: PreferenceRelation
    relation_name: str
    version: int
    result: Instance


def _check_version(cached: CachedResult, current_version):
    if current_version is not None and current_version != cached.version:
        raise StaleCache(
            f"cache for {cached.relation_name!r} is at version {cached.version}, "
            f"relation is at {current_version}"
        )


def winnow_insert(
    p: PreferenceRelation,
    cached: CachedResult,
    delta: Instance,
    current_version=None,
) -> Instance:
    """ω(r ∪ Δ) computed as ω(ω(r) ∪ Δ); exact when p is an SPO (checked)."""
    if not check_property(p, OrderProperty.SPO):
        raise NotSPO(f"insert law requires an SPO, {p.name} is not one")
    _check_version(cached, current_version)
    merged = apply_update(cached.result, insert=delta.tuples)
    return winnow(p, merged)


def winnow_delete_bound(
    cached: CachedResult, deleted: Instance, current_version=None
) -> Instance:
    """ω(r) ∖ ∇r — a lower bound on ω(r ∖ ∇r), never claimed exact: deleting
    a dominator can promote previously discarded tuples."""
    _check_version(cached, current_version)
    gone = deleted.as_set()
    rows = tuple(t for t in cached.result.tuples if t not in gone)
    return Instance(cached.result.name, cached.result.schema, rows)


def winnow_refine(
    p_new: PreferenceRelation, cached: CachedResult, r: Instance
) -> tuple[Instance, bool]:
    """Evaluate a refined preference, reusing the cached result when the
    containment law licenses it: if p_old ⊆ p_new and both are SPOs, then
    ω_new(ω_old(r)) = ω_new(r)."""
    p_old = cached.preference
    if (
        contains(p_new, p_old)
        and check_property(p_old, OrderProperty.SPO)
        and check_property(p_new, OrderProperty.SPO)
    ):
        return winnow(p_new, cached.result), True
    return winnow(p_new, r), False


@dataclass(frozen=True)
class RankAssignment:
    """Iterated-winnow layers: rank 1 is ω(p, r), rank k+1 is the winnow of
    what is left after peeling ranks ≤ k. Induces a weak-order extension of
    the finite restriction: t ≻' s iff rank(t) < rank(s)."""

    instance: Instance
    preference: PreferenceRelation
    ranks: dict

    def rank(self, t) -> int:
        return self.ranks[t]

    def induced_wo(self) -> FinitePreference:
        edges = frozenset(
            (t, s)
            for t in self.instance.tuples
            for s in self.instance.tuples
            if self.ranks[t] < self.ranks[s]
        )
        return FinitePreference(self.instance, edges)


def rank(p: PreferenceRelation, r: Instance) -> RankAssignment:
    """Peel winnow layers; requires the finite restriction to be an SPO
    (otherwise a layer can come out empty and no ranking exists)."""
    if not finite_check(restrict(p, r), OrderProperty.SPO):
        raise NotSPO(f"ranking requires the restriction of {p.name} to be an SPO")
    ranks: dict = {}
    residue = r
    level = 1
    while len(residue):
        layer = winnow(p, residue)
        for t in layer.tuples:
            ranks[t] = level
        keep = tuple(t for t in residue.tuples if t not in layer.as_set())
        residue = Instance(r.name, r.schema, keep)
        level += 1
    return RankAssignment(r, p, ranks)
