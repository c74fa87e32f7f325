"""Order-theoretic primitives over priority relations."""

from __future__ import annotations

import graphlib
from typing import Iterable, Iterator

from ._index import bits
from .errors import BoundExceeded
from .model import PrioritizedInstance, PriorityRelation

COMPLETION_BOUND = 20


def transitive_closure(p: PriorityRelation) -> PriorityRelation:
    """Pairs (f, g) joined by a nonempty path of ``p``. Raises ValueError on cycles."""
    succ = p.successors()
    ts = graphlib.TopologicalSorter({b: () for b in {x for q in p.pairs for x in q}})
    for a, bs in succ.items():
        for b in bs:
            ts.add(b, a)
    try:
        order = list(ts.static_order())
    except graphlib.CycleError as exc:
        raise ValueError("priority relation is cyclic") from exc
    reach: dict[str, set[str]] = {}
    for a in reversed(order):
        r: set[str] = set()
        for b in succ.get(a, ()):
            r.add(b)
            r |= reach[b]
        reach[a] = r
    return PriorityRelation(frozenset((a, b) for a, r in reach.items() for b in r))


def max_facts(p: PriorityRelation, k: Iterable[str]) -> frozenset[str]:
    ks = frozenset(k)
    dominated = {b for a, b in p.pairs if a in ks and b in ks}
    return ks - dominated


def is_transitive(d: PrioritizedInstance) -> bool:
    """True iff every neighbor pair related by the closure is already related directly."""
    ix = d._index
    cs = ix.closure_succ
    return all(cs[i] & ix.nbr[i] & ~ix.succ[i] == 0 for i in range(ix.n))


def incomparable_neighbor_pairs(d: PrioritizedInstance) -> list[tuple[str, str]]:
    ix = d._index
    out = []
    for i in range(ix.n):
        free = ix.nbr[i] & ~ix.succ[i] & ~ix.pred[i]
        for j in bits(free):
            if j > i:
                out.append((ix.ids[i], ix.ids[j]))
    return out


def iter_completions(d: PrioritizedInstance, bound: int = COMPLETION_BOUND) -> Iterator[PriorityRelation]:
    """Every acyclic orientation of the incomparable neighbor pairs added to the priority."""
    pairs = incomparable_neighbor_pairs(d)
    if len(pairs) > bound:
        raise BoundExceeded("incomparable neighbor pairs", len(pairs), bound)
    ix = d._index
    succ = list(ix.succ)

    def reaches(src: int, dst: int) -> bool:
        seen = 1 << src
        frontier = 1 << src
        while frontier:
            nxt = 0
            for i in bits(frontier):
                nxt |= succ[i]
            if nxt >> dst & 1:
                return True
            frontier = nxt & ~seen
            seen |= nxt
        return False

    chosen: list[tuple[int, int]] = []

    def rec(k: int) -> Iterator[PriorityRelation]:
        if k == len(pairs):
            extra = {(ix.ids[a], ix.ids[b]) for a, b in chosen}
            yield PriorityRelation(d.priority.pairs | extra)
            return
        a, b = ix.pos[pairs[k][0]], ix.pos[pairs[k][1]]
        for x, y in ((a, b), (b, a)):
            if reaches(y, x):
                continue
            succ[x] |= 1 << y
            chosen.append((x, y))
            yield from rec(k + 1)
            chosen.pop()
            succ[x] &= ~(1 << y)

    yield from rec(0)


def enumerate_completions(d: PrioritizedInstance, bound: int = COMPLETION_BOUND) -> list[PriorityRelation]:
    return list(iter_completions(d, bound))
