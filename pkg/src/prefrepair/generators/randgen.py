"""Seeded random instances for property tests and benchmarks."""

from __future__ import annotations

import random
from dataclasses import dataclass
from itertools import combinations

from ..model import FD, Fact, PrioritizedInstance, Schema, Signature, minimize_edges


@dataclass(frozen=True)
class RandomParams:
    n_facts: int = 8
    max_edge_arity: int = 2
    edge_density: float = 0.3
    priority_density: float = 0.5
    force_transitive: bool = False
    fd_mode: FD | None = None
    arity: int = 3
    domain: int = 3
    hyperedges: int | None = None

    def check(self) -> None:
        if self.n_facts < 0 or self.max_edge_arity < 2:
            raise ValueError("n_facts must be >= 0 and max_edge_arity >= 2")
        for name in ("edge_density", "priority_density"):
            v = getattr(self, name)
            if not 0.0 <= v <= 1.0:
                raise ValueError(f"{name} must lie in [0, 1]")


def _ids(n: int) -> list[str]:
    width = max(2, len(str(n)))
    return [f"f{i:0{width}d}" for i in range(1, n + 1)]


def _random_edges(rng: random.Random, ids: list[str], p: RandomParams) -> set[frozenset[str]]:
    edges = {frozenset(e) for e in combinations(ids, 2) if rng.random() < p.edge_density}
    if p.max_edge_arity > 2 and len(ids) >= 3:
        count = p.hyperedges if p.hyperedges is not None else round(p.edge_density * len(ids))
        for _ in range(count):
            k = rng.randint(3, min(p.max_edge_arity, len(ids)))
            edges.add(frozenset(rng.sample(ids, k)))
    return minimize_edges(edges)


def _priority(rng: random.Random, ids: list[str], edges, p: RandomParams) -> set[tuple[str, str]]:
    order = ids[:]
    rng.shuffle(order)
    rank = {x: i for i, x in enumerate(order)}
    nbr = {x: set() for x in ids}
    for e in edges:
        for a in e:
            nbr[a] |= e - {a}
    pri = set()
    for a in ids:
        for b in sorted(nbr[a]):
            if rank[a] < rank[b] and rng.random() < p.priority_density:
                pri.add((a, b))
    if p.force_transitive:
        # every neighbor reachable through the sampled order becomes directly dominated
        reach: dict[str, set[str]] = {}
        for a in reversed(order):
            r: set[str] = set()
            for x, y in pri:
                if x == a:
                    r |= {y} | reach[y]
            reach[a] = r
        pri |= {(a, c) for a in ids for c in reach[a] & nbr[a]}
    return pri


def gen_random(params: RandomParams, seed: int) -> PrioritizedInstance:
    params.check()
    rng = random.Random(seed)
    ids = _ids(params.n_facts)
    if params.fd_mode is not None:
        fd = params.fd_mode
        sig = Signature.of([(fd.relation, params.arity)])
        schema = Schema.of(sig, [fd])
        facts, seen = [], set()
        for x in ids:
            for _ in range(50):
                t = tuple(rng.randrange(params.domain) for _ in range(params.arity))
                if t not in seen:
                    break
            else:
                break
            seen.add(t)
            facts.append(Fact(x, fd.relation, t))
        d = PrioritizedInstance.from_fds(schema, facts)
        pri = _priority(rng, [f.id for f in facts], d.hypergraph.edges, params)
        return PrioritizedInstance.from_fds(schema, facts, pri)
    sig = Signature.of([("R", 1)])
    facts = [Fact(x, "R", (x,)) for x in ids]
    edges = _random_edges(rng, ids, params)
    pri = _priority(rng, ids, edges, params)
    return PrioritizedInstance.from_hyperedges(sig, facts, edges, pri)
