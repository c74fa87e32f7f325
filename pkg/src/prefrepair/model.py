"""Data model: signatures, facts, FDs, conflict hypergraphs, priorities, instances.

All values are immutable. Facts are identified by string ids; set semantics
throughout the package are over ids, while tuples carry the payload.
"""

from __future__ import annotations

import graphlib
from dataclasses import dataclass, field
from functools import cached_property
from itertools import combinations
from typing import Iterable, Mapping, Union

Constant = Union[str, int, float, bool, None]


@dataclass(frozen=True)
class Relation:
    name: str
    arity: int


@dataclass(frozen=True)
class Signature:
    relations: tuple[Relation, ...]

    @classmethod
    def of(cls, arities: Mapping[str, int] | Iterable[tuple[str, int]]) -> "Signature":
        items = arities.items() if isinstance(arities, Mapping) else arities
        return cls(tuple(Relation(n, a) for n, a in items))

    def arity(self, name: str) -> int:
        for r in self.relations:
            if r.name == name:
                return r.arity
        raise KeyError(f"undeclared relation {name!r}")

    def __contains__(self, name: object) -> bool:
        return any(r.name == name for r in self.relations)

    @property
    def names(self) -> tuple[str, ...]:
        return tuple(r.name for r in self.relations)

    def problems(self) -> list[str]:
        out = []
        seen = set()
        for r in self.relations:
            if r.name in seen:
                out.append(f"relation {r.name!r} declared twice")
            seen.add(r.name)
            if not isinstance(r.arity, int) or r.arity < 1:
                out.append(f"relation {r.name!r} has invalid arity {r.arity!r}")
        return out


@dataclass(frozen=True)
class Fact:
    id: str
    relation: str
    values: tuple

    def __str__(self) -> str:
        return f"{self.relation}({', '.join(map(str, self.values))})"


@dataclass(frozen=True)
class FD:
    """Functional dependency ``relation: lhs -> rhs`` over 1-based attribute indices."""

    relation: str
    lhs: frozenset[int]
    rhs: frozenset[int]

    @classmethod
    def of(cls, relation: str, lhs: Iterable[int], rhs: Iterable[int]) -> "FD":
        return cls(relation, frozenset(lhs), frozenset(rhs))

    @property
    def trivial(self) -> bool:
        return self.rhs <= self.lhs

    def violated_by(self, f: Fact, g: Fact) -> bool:
        if f.relation != self.relation or g.relation != self.relation:
            return False
        agree = all(f.values[i - 1] == g.values[i - 1] for i in self.lhs)
        return agree and any(f.values[i - 1] != g.values[i - 1] for i in self.rhs)

    def __str__(self) -> str:
        return f"{self.relation}:{_attrs(self.lhs)}->{_attrs(self.rhs)}"


def _attrs(s: frozenset[int]) -> str:
    return "{" + ",".join(map(str, sorted(s))) + "}"


@dataclass(frozen=True)
class Schema:
    signature: Signature
    fds: frozenset[FD]

    @classmethod
    def of(cls, signature: Signature, fds: Iterable[FD]) -> "Schema":
        return cls(signature, frozenset(fds))

    def restrict(self, relation: str) -> frozenset[FD]:
        return frozenset(d for d in self.fds if d.relation == relation)

    def problems(self) -> list[str]:
        out = self.signature.problems()
        for d in sorted(self.fds, key=str):
            if d.relation not in self.signature:
                out.append(f"FD {d} references undeclared relation")
                continue
            n = self.signature.arity(d.relation)
            bad = sorted(i for i in d.lhs | d.rhs if not (isinstance(i, int) and 1 <= i <= n))
            if bad:
                out.append(f"FD {d} uses attribute indices {bad} outside 1..{n}")
        return out


@dataclass(frozen=True)
class ConflictHypergraph:
    nodes: frozenset[str]
    edges: frozenset[frozenset[str]]

    @classmethod
    def build(
        cls, nodes: Iterable[str], edges: Iterable[Iterable[str]], minimize: bool = True
    ) -> "ConflictHypergraph":
        es = {frozenset(e) for e in edges}
        if minimize:
            es = minimize_edges(es)
        return cls(frozenset(nodes), frozenset(es))

    def sorted_edges(self) -> list[list[str]]:
        return sorted(sorted(e) for e in self.edges)

    def neighbors(self, f: str) -> frozenset[str]:
        out: set[str] = set()
        for e in self.edges:
            if f in e:
                out |= e
        out.discard(f)
        return frozenset(out)

    def are_neighbors(self, f: str, g: str) -> bool:
        return f != g and any(f in e and g in e for e in self.edges)


def minimize_edges(edges: Iterable[frozenset[str]]) -> set[frozenset[str]]:
    """Drop every edge that strictly contains another edge."""
    es = sorted(set(edges), key=len)
    kept: list[frozenset[str]] = []
    for e in es:
        if not any(k < e for k in kept):
            kept.append(e)
    return set(kept)


@dataclass(frozen=True)
class PriorityRelation:
    """Pairs ``(f, g)`` meaning ``f`` is preferred to ``g``."""

    pairs: frozenset[tuple[str, str]] = frozenset()

    @classmethod
    def of(cls, pairs: Iterable[tuple[str, str]]) -> "PriorityRelation":
        return cls(frozenset((a, b) for a, b in pairs))

    def __contains__(self, pair: object) -> bool:
        return pair in self.pairs

    def __len__(self) -> int:
        return len(self.pairs)

    def sorted_pairs(self) -> list[list[str]]:
        return sorted([a, b] for a, b in self.pairs)

    def successors(self) -> dict[str, set[str]]:
        out: dict[str, set[str]] = {}
        for a, b in self.pairs:
            out.setdefault(a, set()).add(b)
        return out


@dataclass(frozen=True)
class PrioritizedInstance:
    """A triple (facts, conflict hypergraph, priority).

    When ``schema`` is set the hypergraph was derived from its FDs, which lets
    categoricity procedures split the instance per relation.
    """

    signature: Signature
    facts: tuple[Fact, ...]
    hypergraph: ConflictHypergraph
    priority: PriorityRelation = field(default_factory=PriorityRelation)
    schema: Schema | None = None

    @classmethod
    def from_hyperedges(
        cls,
        signature: Signature,
        facts: Iterable[Fact],
        edges: Iterable[Iterable[str]],
        priority: Iterable[tuple[str, str]] = (),
        minimize: bool = True,
    ) -> "PrioritizedInstance":
        fs = tuple(sorted(facts, key=lambda f: f.id))
        h = ConflictHypergraph.build((f.id for f in fs), edges, minimize=minimize)
        return cls(signature, fs, h, PriorityRelation.of(priority))

    @classmethod
    def from_fds(
        cls, schema: Schema, facts: Iterable[Fact], priority: Iterable[tuple[str, str]] = ()
    ) -> "PrioritizedInstance":
        fs = tuple(sorted(facts, key=lambda f: f.id))
        h = conflict_graph_from_fds(schema, fs)
        return cls(schema.signature, fs, h, PriorityRelation.of(priority), schema)

    @cached_property
    def by_id(self) -> dict[str, Fact]:
        return {f.id: f for f in self.facts}

    @property
    def ids(self) -> frozenset[str]:
        return frozenset(f.id for f in self.facts)

    def __len__(self) -> int:
        return len(self.facts)

    def restrict(self, ids: Iterable[str]) -> "PrioritizedInstance":
        """Induced sub-instance: edges inside ``ids`` and priority pairs inside ``ids``."""
        keep = frozenset(ids)
        fs = tuple(f for f in self.facts if f.id in keep)
        h = ConflictHypergraph(keep, frozenset(e for e in self.hypergraph.edges if e <= keep))
        p = PriorityRelation(frozenset(q for q in self.priority.pairs if q[0] in keep and q[1] in keep))
        return PrioritizedInstance(self.signature, fs, h, p, self.schema)

    def by_relation(self) -> dict[str, "PrioritizedInstance"]:
        groups: dict[str, list[str]] = {}
        for f in self.facts:
            groups.setdefault(f.relation, []).append(f.id)
        return {r: self.restrict(ids) for r, ids in sorted(groups.items())}

    @cached_property
    def _index(self):
        from ._index import Indexed

        return Indexed(self)


def conflict_graph_from_fds(schema: Schema, facts: Iterable[Fact]) -> ConflictHypergraph:
    """Edge {f, g} for every pair of facts jointly violating some FD of the schema."""
    fs = list(facts)
    by_rel: dict[str, list[Fact]] = {}
    for f in fs:
        if f.relation not in schema.signature:
            raise ValueError(f"fact {f.id!r} references undeclared relation {f.relation!r}")
        n = schema.signature.arity(f.relation)
        if len(f.values) != n:
            raise ValueError(f"fact {f.id!r} has {len(f.values)} values, relation {f.relation!r} has arity {n}")
        by_rel.setdefault(f.relation, []).append(f)
    edges = set()
    for rel, group in by_rel.items():
        fds = [d for d in schema.restrict(rel) if not d.trivial]
        if not fds:
            continue
        for f, g in combinations(group, 2):
            if any(d.violated_by(f, g) for d in fds):
                edges.add(frozenset((f.id, g.id)))
    return ConflictHypergraph(frozenset(f.id for f in fs), frozenset(edges))


@dataclass(frozen=True)
class Violation:
    kind: str
    detail: str


@dataclass(frozen=True)
class ValidationReport:
    violations: tuple[Violation, ...]

    @property
    def ok(self) -> bool:
        return not self.violations

    def to_json(self) -> dict:
        return {
            "ok": self.ok,
            "violations": [{"kind": v.kind, "detail": v.detail} for v in self.violations],
        }


def validate(d: PrioritizedInstance) -> ValidationReport:
    """Collect every invariant violation of ``d``; never raises."""
    out: list[Violation] = []
    for msg in d.signature.problems():
        out.append(Violation("signature", msg))
    if d.schema is not None:
        for msg in d.schema.problems():
            out.append(Violation("schema", msg))

    seen: set[str] = set()
    for f in d.facts:
        if f.id in seen:
            out.append(Violation("duplicate-fact-id", f"fact id {f.id!r} used twice"))
        seen.add(f.id)
        if f.relation not in d.signature:
            out.append(Violation("unknown-relation", f"fact {f.id!r} uses undeclared relation {f.relation!r}"))
        elif len(f.values) != d.signature.arity(f.relation):
            out.append(
                Violation(
                    "arity-mismatch",
                    f"fact {f.id!r} has {len(f.values)} values, {f.relation!r} has arity "
                    f"{d.signature.arity(f.relation)}",
                )
            )

    h = d.hypergraph
    if h.nodes != seen:
        for x in sorted(h.nodes - seen):
            out.append(Violation("dangling-fact-id", f"hypergraph node {x!r} is not a fact"))
        for x in sorted(seen - h.nodes):
            out.append(Violation("dangling-fact-id", f"fact {x!r} missing from hypergraph nodes"))
    for e in h.sorted_edges():
        missing = [x for x in e if x not in seen]
        if missing:
            out.append(Violation("dangling-fact-id", f"hyperedge {e} mentions unknown ids {missing}"))
        if len(e) < 2:
            out.append(Violation("singleton-hyperedge", f"hyperedge {e} has fewer than two facts"))

    for a, b in d.priority.sorted_pairs():
        if a not in seen or b not in seen:
            out.append(Violation("dangling-fact-id", f"priority pair {[a, b]} mentions unknown ids"))
        elif a == b:
            out.append(Violation("self-priority", f"fact {a!r} is preferred to itself"))
        elif not h.are_neighbors(a, b):
            out.append(Violation("non-neighbor-priority", f"priority pair {[a, b]} shares no hyperedge"))

    cycle = find_cycle(d.priority)
    if cycle:
        out.append(Violation("cycle", "priority cycle " + " > ".join(cycle)))
    return ValidationReport(tuple(out))


def find_cycle(p: PriorityRelation) -> list[str] | None:
    """Some directed cycle of ``p`` (first node repeated at the end), or None."""
    ts = graphlib.TopologicalSorter()
    for a, b in sorted(p.pairs):
        ts.add(b, a)
    try:
        ts.prepare()
    except graphlib.CycleError as exc:
        return list(exc.args[1])
    return None
