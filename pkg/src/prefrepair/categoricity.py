"""Deciding whether an instance has exactly one preferred repair."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

from ._index import bits
from .model import FD, Fact, PrioritizedInstance, PriorityRelation, Schema, conflict_graph_from_fds
from .order import is_transitive
from .repairs import IMPROVEMENT_BOUND, RepairKind, iter_repairs


@dataclass(frozen=True)
class Stratum:
    positive: frozenset[str]
    negative: frozenset[str]


@dataclass(frozen=True)
class StrataTrace:
    strata: tuple[Stratum, ...]
    candidate: frozenset[str]

    def to_json(self) -> dict:
        return {
            "positive": [sorted(s.positive) for s in self.strata],
            "negative": [sorted(s.negative) for s in self.strata],
            "candidate": sorted(self.candidate),
        }


@dataclass(frozen=True)
class CategoricityResult:
    kind: RepairKind
    unique: bool
    repair: frozenset[str] | None
    method: str
    trace: StrataTrace | None = None

    def to_json(self) -> dict:
        out: dict = {"kind": self.kind.value, "unique": self.unique, "method": self.method}
        if self.repair is not None:
            out["repair"] = sorted(self.repair)
        if self.trace is not None:
            out["trace"] = self.trace.to_json()
        return out


def c_categoricity(d: PrioritizedInstance) -> CategoricityResult:
    """Strata algorithm over the transitive closure of the priority.

    Each round takes the closure-maximal remaining facts as the positive
    stratum, adds them to the candidate J, and removes as the negative
    stratum every remaining fact f that has an edge e with e - {f} inside J
    and entirely above f in the closure. The repair is unique iff J ends up
    consistent.
    """
    ix = d._index
    above = ix.closure_pred
    remaining, cand = ix.full, 0
    strata = []
    while remaining:
        pos = 0
        for i in bits(remaining):
            if not above[i] & remaining:
                pos |= 1 << i
        cand |= pos
        neg = 0
        for i in bits(remaining & ~pos):
            bit = 1 << i
            for e in ix.edges_of[i]:
                rest = e & ~bit
                if not rest & ~cand and not rest & ~above[i]:
                    neg |= bit
                    break
        strata.append(Stratum(ix.names(pos), ix.names(neg)))
        remaining &= ~(pos | neg)
    trace = StrataTrace(tuple(strata), ix.names(cand))
    unique = ix.consistent(cand)
    return CategoricityResult(
        RepairKind.COMPLETION, unique, trace.candidate if unique else None, "ccategoricity", trace
    )


# -- blocks under a single FD ------------------------------------------------------


@dataclass(frozen=True)
class Subblock:
    key: tuple
    rhs: tuple
    members: frozenset[str]


@dataclass(frozen=True)
class Block:
    key: tuple
    subblocks: tuple[Subblock, ...]

    @property
    def members(self) -> frozenset[str]:
        return frozenset().union(*(s.members for s in self.subblocks))


def blocks(facts: Iterable[Fact], fd: FD) -> list[Block]:
    """Group facts by their values on the FD's lhs, then by their values on its rhs."""
    lhs, rhs = sorted(fd.lhs), sorted(fd.rhs)
    grouped: dict[tuple, dict[tuple, set[str]]] = {}
    for f in facts:
        if f.relation != fd.relation:
            raise ValueError(f"fact {f.id!r} is not over {fd.relation!r}")
        a = tuple(f.values[i - 1] for i in lhs)
        b = tuple(f.values[i - 1] for i in rhs)
        grouped.setdefault(a, {}).setdefault(b, set()).add(f.id)
    out = []
    for a in sorted(grouped, key=repr):
        subs = grouped[a]
        out.append(Block(a, tuple(Subblock(a, b, frozenset(subs[b])) for b in sorted(subs, key=repr))))
    return out


def _dominators(priority: PriorityRelation) -> dict[str, set[str]]:
    out: dict[str, set[str]] = {}
    for a, b in priority.pairs:
        out.setdefault(b, set()).add(a)
    return out


def _block_preferred(block: Block, dom: dict[str, set[str]], kind: RepairKind) -> list[Subblock]:
    preferred = []
    for s in block.subblocks:
        others = block.members - s.members
        if kind is RepairKind.PARETO:
            # some single outside fact dominating all of s is a Pareto improvement
            common = set(others)
            for g in s.members:
                common &= dom.get(g, set())
            improved = bool(common)
        else:
            improved = any(
                all(dom.get(g, set()) & t.members for g in s.members)
                for t in block.subblocks
                if t is not s
            )
        if not improved:
            preferred.append(s)
    return preferred


def blocks_categoricity(
    facts: Iterable[Fact],
    fd: FD | Iterable[FD],
    priority: PriorityRelation,
    kind: RepairKind | str = RepairKind.PARETO,
) -> CategoricityResult:
    """Categoricity for one relation governed by a single FD X -> Y.

    Every preferred repair of a block is one of its subblocks, and preferred
    repairs of the relation are unions of one preferred subblock per block.
    """
    kind = RepairKind.parse(kind)
    if kind not in (RepairKind.PARETO, RepairKind.GLOBAL):
        raise ValueError("the blocks method decides Pareto or global categoricity")
    if not isinstance(fd, FD):
        fds = list(fd)
        if len(fds) != 1:
            raise ValueError(f"the blocks method needs exactly one FD, got {len(fds)}")
        fd = fds[0]
    dom = _dominators(priority)
    unique = True
    chosen: set[str] = set()
    for b in blocks(facts, fd):
        pref = _block_preferred(b, dom, kind)
        if len(pref) != 1:
            unique = False
            break
        chosen |= pref[0].members
    return CategoricityResult(kind, unique, frozenset(chosen) if unique else None, "blocks")


# -- dispatch ------------------------------------------------------------------------


def _brute(d: PrioritizedInstance, kind: RepairKind, improvement_bound: int) -> CategoricityResult:
    found = []
    for r in iter_repairs(d, kind, improvement_bound):
        found.append(r)
        if len(found) == 2:
            break
    unique = len(found) == 1
    return CategoricityResult(kind, unique, found[0] if unique else None, "brute-force")


def _resolve_schema(d: PrioritizedInstance, schema: Schema | None) -> Schema | None:
    if schema is None:
        return d.schema
    if d.schema != schema and conflict_graph_from_fds(schema, d.facts) != d.hypergraph:
        raise ValueError("the instance's hypergraph is not the one induced by the given schema")
    return schema


def _per_relation(
    d: PrioritizedInstance, schema: Schema, kind: RepairKind, improvement_bound: int
) -> CategoricityResult:
    from .schema_analysis import single_fd_equivalent

    methods = set()
    chosen: set[str] = set()
    for rel, sub in d.by_relation().items():
        fd = single_fd_equivalent(schema.restrict(rel), schema.signature.arity(rel), relation=rel)
        if fd is not None:
            r = blocks_categoricity(sub.facts, fd, sub.priority, kind)
        else:
            r = _brute(sub, kind, improvement_bound)
        methods.add(r.method)
        if not r.unique:
            return CategoricityResult(kind, False, None, "brute-force" if "brute-force" in methods else "blocks")
        chosen |= r.repair
    method = "brute-force" if "brute-force" in methods else "blocks"
    return CategoricityResult(kind, True, frozenset(chosen), method)


def p_categoricity(
    d: PrioritizedInstance, schema: Schema | None = None, improvement_bound: int = IMPROVEMENT_BOUND
) -> CategoricityResult:
    schema = _resolve_schema(d, schema)
    if schema is not None:
        return _per_relation(d, schema, RepairKind.PARETO, improvement_bound)
    return _brute(d, RepairKind.PARETO, improvement_bound)


def g_categoricity(
    d: PrioritizedInstance, schema: Schema | None = None, improvement_bound: int = IMPROVEMENT_BOUND
) -> CategoricityResult:
    """With a transitive priority, global and completion categoricity coincide."""
    if is_transitive(d):
        r = c_categoricity(d)
        return CategoricityResult(RepairKind.GLOBAL, r.unique, r.repair, "transitive-shortcut", r.trace)
    schema = _resolve_schema(d, schema)
    if schema is not None:
        return _per_relation(d, schema, RepairKind.GLOBAL, improvement_bound)
    return _brute(d, RepairKind.GLOBAL, improvement_bound)


def categoricity(
    d: PrioritizedInstance,
    kind: RepairKind | str,
    schema: Schema | None = None,
    improvement_bound: int = IMPROVEMENT_BOUND,
) -> CategoricityResult:
    kind = RepairKind.parse(kind)
    if kind is RepairKind.COMPLETION:
        return c_categoricity(d)
    if kind is RepairKind.GLOBAL:
        return g_categoricity(d, schema, improvement_bound)
    if kind is RepairKind.PARETO:
        return p_categoricity(d, schema, improvement_bound)
    raise ValueError("categoricity is defined for pareto, global and completion repairs")
