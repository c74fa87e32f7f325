"""Repair checking for the four repair notions, the greedy c-repair generator,
and exhaustive enumeration of repairs.

Kinds, from weakest to strongest: plain (maximal consistent subinstance),
Pareto, global and completion-optimal. Every completion-optimal repair is
global, every global repair is Pareto, and every Pareto repair is plain.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from enum import Enum
from typing import Any, Callable, Iterable, Iterator

from ._index import Indexed, bits
from .errors import BoundExceeded
from .model import ConflictHypergraph, PrioritizedInstance

REPAIR_BOUND = 16
IMPROVEMENT_BOUND = 24


class RepairKind(str, Enum):
    PLAIN = "plain"
    PARETO = "pareto"
    GLOBAL = "global"
    COMPLETION = "completion"

    @classmethod
    def parse(cls, s: "str | RepairKind") -> "RepairKind":
        if isinstance(s, RepairKind):
            return s
        aliases = {"p": "pareto", "g": "global", "c": "completion"}
        try:
            return cls(aliases.get(s, s))
        except ValueError:
            raise ValueError(f"unknown repair kind {s!r}") from None


KINDS = (RepairKind.PLAIN, RepairKind.PARETO, RepairKind.GLOBAL, RepairKind.COMPLETION)


@dataclass(frozen=True)
class TieBreaker:
    """How FindCRep picks among the currently maximal facts."""

    policy: str = "lexicographic"
    seed: int | None = None
    order: tuple[str, ...] = ()

    @classmethod
    def lexicographic(cls) -> "TieBreaker":
        return cls()

    @classmethod
    def seeded(cls, seed: int) -> "TieBreaker":
        return cls("random", seed=seed)

    @classmethod
    def explicit(cls, order: Iterable[str]) -> "TieBreaker":
        return cls("explicit", order=tuple(order))

    def chooser(self, ix: Indexed) -> Callable[[int], int]:
        if self.policy == "lexicographic":
            return lambda m: (m & -m).bit_length() - 1
        if self.policy == "random":
            rng = random.Random(self.seed)
            return lambda m: rng.choice(list(bits(m)))
        if self.policy == "explicit":
            missing = set(ix.ids) - set(self.order)
            if missing:
                raise ValueError(f"explicit order misses facts {sorted(missing)}")
            rank = {ix.pos[x]: k for k, x in enumerate(self.order) if x in ix.pos}
            return lambda m: min(bits(m), key=rank.__getitem__)
        raise ValueError(f"unknown tie-break policy {self.policy!r}")


@dataclass(frozen=True)
class RepairCheck:
    kind: RepairKind
    verdict: bool
    witness: dict[str, Any] | None = None


@dataclass(frozen=True)
class RepairReport:
    subject: frozenset[str]
    verdicts: dict[RepairKind, bool]
    witness: dict[RepairKind, dict[str, Any]] = field(default_factory=dict)

    def to_json(self) -> dict:
        return {
            "subject": sorted(self.subject),
            "verdicts": {k.value: v for k, v in self.verdicts.items()},
            "witness": {k.value: w for k, w in self.witness.items()} or None,
        }


def is_consistent(j: Iterable[str], h: ConflictHypergraph) -> bool:
    js = frozenset(j)
    unknown = js - h.nodes
    if unknown:
        raise KeyError(f"unknown fact ids {sorted(unknown)}")
    return not any(e <= js for e in h.edges)


def is_repair(j: Iterable[str], d: PrioritizedInstance) -> bool:
    ix = d._index
    m = ix.mask(j)
    return ix.consistent(m) and _addable(ix, m) is None


def _require_consistent(ix: Indexed, *masks: int) -> None:
    for m in masks:
        if not ix.consistent(m):
            raise ValueError(f"inconsistent subinstance {sorted(ix.names(m))}")


def is_pareto_improvement(k: Iterable[str], j: Iterable[str], d: PrioritizedInstance) -> bool:
    """Some fact of k minus j is preferred to every fact of j minus k."""
    ix = d._index
    km, jm = ix.mask(k), ix.mask(j)
    _require_consistent(ix, km, jm)
    if km == jm:
        return False
    lost = jm & ~km
    return any(ix.succ[f] & lost == lost for f in bits(km & ~jm))


def is_global_improvement(k: Iterable[str], j: Iterable[str], d: PrioritizedInstance) -> bool:
    """Every fact of j minus k is dominated by some fact of k minus j."""
    ix = d._index
    km, jm = ix.mask(k), ix.mask(j)
    _require_consistent(ix, km, jm)
    if km == jm:
        return False
    dom = 0
    for f in bits(km & ~jm):
        dom |= ix.succ[f]
    lost = jm & ~km
    return dom & lost == lost


# -- single-repair checks over masks --------------------------------------------


def _violated_edge(ix: Indexed, m: int) -> int | None:
    for e in ix.edges:
        if e & m == e:
            return e
    return None


def _addable(ix: Indexed, m: int) -> int | None:
    for i in bits(ix.full & ~m):
        if ix.can_add(m, i):
            return i
    return None


def _pareto_witness(ix: Indexed, m: int) -> int | None:
    """A fact f outside m such that f plus the facts of m it does not dominate is consistent."""
    for f in bits(ix.full & ~m):
        if ix.can_add(m & ~ix.succ[f], f):
            return f
    return None


def _global_improvement(ix: Indexed, m: int, bound: int = IMPROVEMENT_BOUND) -> int | None:
    """A consistent global improvement of the consistent set m, or None.

    Only sets (m minus the facts dominated by A) plus A need checking, with A a
    nonempty set of outside facts each dominating something in m.
    """
    f = _addable(ix, m)
    if f is not None:
        return m | (1 << f)
    cand = [a for a in bits(ix.full & ~m) if ix.succ[a] & m]
    if len(cand) > bound:
        raise BoundExceeded("global-improvement candidates", len(cand), bound)
    suffix = [0] * (len(cand) + 1)
    for k in range(len(cand) - 1, -1, -1):
        suffix[k] = suffix[k + 1] | (ix.succ[cand[k]] & m)
    edges = ix.edges

    def rec(start: int, a_mask: int, dom: int) -> int | None:
        for k in range(start, len(cand)):
            a = cand[k]
            if not ix.can_add(a_mask, a):
                continue
            a2 = a_mask | (1 << a)
            dom2 = dom | (ix.succ[a] & m)
            kept = m & ~dom2
            trial = kept | a2
            ok = True
            hopeless = False
            for e in edges:
                if e & trial == e:
                    ok = False
                    if e & kept & suffix[k + 1] == 0:
                        hopeless = True
                        break
            if ok:
                return trial
            if not hopeless:
                found = rec(k + 1, a2, dom2)
                if found is not None:
                    return found
        return None

    return rec(0, 0, 0)


def _crep_run(ix: Indexed, m: int) -> tuple[bool, list[tuple[int, bool]], int]:
    """Drive FindCRep towards m.

    A maximal fact is safe to process when it belongs to m (it is then kept)
    or when it already conflicts with the facts kept so far (it is then
    dropped). Safe facts stay safe, so taking them in any order reaches m iff
    some execution returns m. Returns (success, steps, stuck-maximal-set).
    """
    remaining, cur = ix.full, 0
    steps: list[tuple[int, bool]] = []
    while remaining:
        top = ix.maximal(remaining)
        keep = top & m
        drop = 0
        for i in bits(top & ~m):
            if not ix.can_add(cur, i):
                drop |= 1 << i
        if not keep and not drop:
            return False, steps, top
        for i in bits(drop):
            steps.append((i, False))
        for i in bits(keep):
            steps.append((i, True))
        cur |= keep
        remaining &= ~(keep | drop)
    return True, steps, 0


def check_repair(
    j: Iterable[str],
    d: PrioritizedInstance,
    kind: RepairKind | str,
    bound: int = IMPROVEMENT_BOUND,
) -> RepairCheck:
    kind = RepairKind.parse(kind)
    ix = d._index
    m = ix.mask(j)
    e = _violated_edge(ix, m)
    if e is not None:
        return RepairCheck(kind, False, {"inconsistent": sorted(ix.names(e))})
    if kind is RepairKind.PLAIN:
        f = _addable(ix, m)
        if f is None:
            return RepairCheck(kind, True)
        return RepairCheck(kind, False, {"addable": ix.ids[f]})
    if kind is RepairKind.PARETO:
        f = _pareto_witness(ix, m)
        if f is None:
            return RepairCheck(kind, True)
        k0 = (m & ~ix.succ[f]) | (1 << f)
        return RepairCheck(kind, False, {"improvement": sorted(ix.names(k0)), "dominator": ix.ids[f]})
    if kind is RepairKind.GLOBAL:
        k = _global_improvement(ix, m, bound)
        if k is None:
            return RepairCheck(kind, True)
        return RepairCheck(kind, False, {"improvement": sorted(ix.names(k))})
    ok, steps, top = _crep_run(ix, m)
    if ok:
        return RepairCheck(kind, True, {"execution": [[ix.ids[i], "keep" if a else "drop"] for i, a in steps]})
    return RepairCheck(kind, False, {"stuck": sorted(ix.names(top))})


def is_completion_repair_by_enumeration(j: Iterable[str], d: PrioritizedInstance, bound: int = REPAIR_BOUND) -> bool:
    """Membership of j among all FindCRep outcomes, found by exhausting executions."""
    target = frozenset(j)
    return target in set(enumerate_repairs(d, RepairKind.COMPLETION, bound=bound))


def repair_report(j: Iterable[str], d: PrioritizedInstance, bound: int = IMPROVEMENT_BOUND) -> RepairReport:
    js = frozenset(j)
    verdicts: dict[RepairKind, bool] = {}
    witness: dict[RepairKind, dict[str, Any]] = {}
    holds = True
    for kind in KINDS:
        if not holds:
            verdicts[kind] = False
            continue
        r = check_repair(js, d, kind, bound)
        verdicts[kind] = r.verdict
        if r.witness is not None:
            witness[kind] = r.witness
        holds = r.verdict
    return RepairReport(js, verdicts, witness)


# -- FindCRep ----------------------------------------------------------------------


def find_crep_steps(d: PrioritizedInstance, tb: TieBreaker = TieBreaker()) -> list[tuple[str, bool]]:
    """Run FindCRep and return the processed facts in order, flagged kept or dropped."""
    ix = d._index
    choose = tb.chooser(ix)
    remaining, cur = ix.full, 0
    steps = []
    while remaining:
        i = choose(ix.maximal(remaining))
        remaining &= ~(1 << i)
        keep = ix.can_add(cur, i)
        if keep:
            cur |= 1 << i
        steps.append((ix.ids[i], keep))
    return steps


def find_crep(d: PrioritizedInstance, tb: TieBreaker = TieBreaker()) -> frozenset[str]:
    return frozenset(x for x, keep in find_crep_steps(d, tb) if keep)


# -- enumeration -------------------------------------------------------------------


def _blockers(ix: Indexed, pareto: bool) -> list[list[int]]:
    """For each fact, the minimal edge remainders that can justify leaving it out."""
    out = []
    for i in range(ix.n):
        bs = set()
        for e in ix.edges_of[i]:
            b = e & ~(1 << i)
            if pareto and b & ix.succ[i]:
                continue
            bs.add(b)
        mins = [b for b in bs if not any(c != b and c & b == c for c in bs)]
        out.append(sorted(mins))
    return out


def _search(ix: Indexed, blockers: list[list[int]]) -> Iterator[int]:
    """All consistent sets S such that every fact outside S has a blocker inside S."""
    full = ix.full

    def propagate(inm: int, out: int) -> tuple[int, int] | None:
        changed = True
        while changed:
            changed = False
            for i in range(ix.n):
                bit = 1 << i
                if out & bit:
                    viable = [b for b in blockers[i] if not b & out]
                    if not viable:
                        return None
                    if len(viable) == 1 and viable[0] & ~inm:
                        inm |= viable[0]
                        if inm & out:
                            return None
                        changed = True
                elif not inm & bit:
                    if not ix.can_add(inm, i):
                        out |= bit
                        changed = True
                    elif not any(not b & out for b in blockers[i]):
                        inm |= bit
                        changed = True
            if not ix.consistent(inm):
                return None
        return inm, out

    def pick(inm: int, out: int) -> int:
        und = full & ~(inm | out)
        best, best_n = -1, None
        for i in bits(out):
            viable = [b for b in blockers[i] if not b & out]
            open_ = [b for b in viable if b & ~inm]
            if len(open_) == len(viable) and (best_n is None or len(viable) < best_n):
                for b in open_:
                    c = b & und
                    if c:
                        best, best_n = (c & -c).bit_length() - 1, len(viable)
                        break
        if best >= 0:
            return best
        return (und & -und).bit_length() - 1

    stack = [(0, 0)]
    while stack:
        inm, out = stack.pop()
        st = propagate(inm, out)
        if st is None:
            continue
        inm, out = st
        und = full & ~(inm | out)
        if not und:
            yield inm
            continue
        i = pick(inm, out)
        stack.append((inm, out | (1 << i)))
        stack.append((inm | (1 << i), out))


def _completion_outcomes(ix: Indexed) -> Iterator[int]:
    """Distinct FindCRep outcomes over all executions.

    States are (remaining, kept). Two moves are applied eagerly because every
    execution makes them anyway: dropping a maximal fact that already conflicts
    with the kept facts, and keeping a maximal fact that no possible future
    kept set can conflict with.
    """

    def settle(remaining: int, cur: int) -> tuple[int, int]:
        while True:
            moved = False
            for i in bits(ix.maximal(remaining)):
                bit = 1 << i
                if not ix.can_add(cur, i):
                    remaining &= ~bit
                    moved = True
                elif ix.can_add(cur | remaining, i):
                    remaining &= ~bit
                    cur |= bit
                    moved = True
            if not moved:
                return remaining, cur

    seen: set[tuple[int, int]] = set()
    outcomes: set[int] = set()
    stack = [settle(ix.full, 0)]
    while stack:
        remaining, cur = stack.pop()
        if not remaining:
            if cur not in outcomes:
                outcomes.add(cur)
                yield cur
            continue
        for i in bits(ix.maximal(remaining)):
            bit = 1 << i
            nxt = settle(remaining & ~bit, cur | bit if ix.can_add(cur, i) else cur)
            if nxt not in seen:
                seen.add(nxt)
                stack.append(nxt)


def iter_repairs(
    d: PrioritizedInstance,
    kind: RepairKind | str,
    improvement_bound: int = IMPROVEMENT_BOUND,
) -> Iterator[frozenset[str]]:
    """Lazily yield the repairs of the given kind, each once, in no fixed order."""
    kind = RepairKind.parse(kind)
    ix = d._index
    if kind is RepairKind.COMPLETION:
        source: Iterator[int] = _completion_outcomes(ix)
    else:
        source = _search(ix, _blockers(ix, pareto=kind is not RepairKind.PLAIN))
    for m in source:
        if kind is RepairKind.GLOBAL and _global_improvement(ix, m, improvement_bound) is not None:
            continue
        yield ix.names(m)


def enumerate_repairs(
    d: PrioritizedInstance,
    kind: RepairKind | str,
    limit: int | None = None,
    bound: int = REPAIR_BOUND,
) -> list[frozenset[str]]:
    """All repairs of a kind, sorted by their sorted id lists.

    Without ``limit`` the instance must have at most ``bound`` facts. With
    ``limit`` the size bound is lifted and the search stops after ``limit``
    repairs have been found.
    """
    if limit is None and len(d) > bound:
        raise BoundExceeded("facts", len(d), bound)
    out = []
    for r in iter_repairs(d, kind):
        out.append(r)
        if limit is not None and len(out) >= limit:
            break
    return sorted(out, key=sorted)
