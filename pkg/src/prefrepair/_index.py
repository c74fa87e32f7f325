"""Bitmask view of an instance: facts become bit positions in lexicographic id order."""

from __future__ import annotations

import graphlib
from functools import cached_property
from typing import Iterable, Iterator


def bits(mask: int) -> Iterator[int]:
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


class Indexed:
    def __init__(self, d) -> None:
        self.ids: list[str] = sorted(f.id for f in d.facts)
        self.pos = {x: i for i, x in enumerate(self.ids)}
        self.n = len(self.ids)
        self.full = (1 << self.n) - 1
        self.edges: list[int] = sorted(self.mask(e) for e in d.hypergraph.edges)
        self.edges_of: list[list[int]] = [[] for _ in range(self.n)]
        self.nbr = [0] * self.n
        for e in self.edges:
            for i in bits(e):
                self.edges_of[i].append(e)
                self.nbr[i] |= e
        for i in range(self.n):
            self.nbr[i] &= ~(1 << i)
        self.succ = [0] * self.n
        self.pred = [0] * self.n
        for a, b in d.priority.pairs:
            i, j = self.pos[a], self.pos[b]
            self.succ[i] |= 1 << j
            self.pred[j] |= 1 << i

    def mask(self, ids: Iterable[str]) -> int:
        m = 0
        for x in ids:
            try:
                m |= 1 << self.pos[x]
            except KeyError:
                raise KeyError(f"unknown fact id {x!r}") from None
        return m

    def names(self, mask: int) -> frozenset[str]:
        return frozenset(self.ids[i] for i in bits(mask))

    def consistent(self, mask: int) -> bool:
        for e in self.edges:
            if e & mask == e:
                return False
        return True

    def can_add(self, mask: int, i: int) -> bool:
        """Whether ``mask | {i}`` stays consistent, assuming ``mask`` is."""
        m = mask | (1 << i)
        for e in self.edges_of[i]:
            if e & m == e:
                return False
        return True

    def maximal(self, remaining: int) -> int:
        """Facts of ``remaining`` with no predecessor inside ``remaining``."""
        out = 0
        for i in bits(remaining):
            if not self.pred[i] & remaining:
                out |= 1 << i
        return out

    @cached_property
    def topo(self) -> list[int]:
        ts = graphlib.TopologicalSorter({j: list(bits(self.pred[j])) for j in range(self.n)})
        return list(ts.static_order())

    @cached_property
    def closure_succ(self) -> list[int]:
        out = [0] * self.n
        for i in reversed(self.topo):
            m = self.succ[i]
            for j in bits(self.succ[i]):
                m |= out[j]
            out[i] = m
        return out

    @cached_property
    def closure_pred(self) -> list[int]:
        out = [0] * self.n
        cs = self.closure_succ
        for i in range(self.n):
            for j in bits(cs[i]):
                out[j] |= 1 << i
        return out
