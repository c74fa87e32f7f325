"""FD reasoning and the schema-level complexity classifier."""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations
from typing import Iterable

from .errors import BoundExceeded
from .model import FD, Schema

ARITY_BOUND = 16
PATTERN_SEARCH_ARITY = 5

PTIME = "PTIME"
CONP_COMPLETE = "coNP-complete"
CONP = "coNP"
PI2P_COMPLETE = "Pi2p-complete"
PI2P = "Pi2p"


def _to_mask(attrs: Iterable[int]) -> int:
    m = 0
    for a in attrs:
        m |= 1 << (a - 1)
    return m


def _from_mask(m: int) -> frozenset[int]:
    return frozenset(i + 1 for i in range(m.bit_length()) if m >> i & 1)


def _relation_of(*groups: Iterable[FD]) -> str | None:
    rels = {d.relation for g in groups for d in g}
    if len(rels) > 1:
        raise ValueError(f"FD set mixes relations {sorted(rels)}")
    return next(iter(rels), None)


def _pairs(fds: Iterable[FD]) -> list[tuple[int, int]]:
    return [(_to_mask(d.lhs), _to_mask(d.rhs)) for d in fds]


def _closure(x: int, pairs: list[tuple[int, int]]) -> int:
    changed = True
    while changed:
        changed = False
        for l, r in pairs:
            if l & x == l and r & ~x:
                x |= r
                changed = True
    return x


def _implies_all(pairs: list[tuple[int, int]], targets: list[tuple[int, int]]) -> bool:
    return all(_closure(l, pairs) & r == r for l, r in targets)


def attribute_closure(x: Iterable[int], fds: Iterable[FD]) -> frozenset[int]:
    fds = list(fds)
    _relation_of(fds)
    return _from_mask(_closure(_to_mask(x), _pairs(fds)))


def implies(fds: Iterable[FD], fd: FD) -> bool:
    fds = list(fds)
    _relation_of(fds, [fd])
    return _implies_all(_pairs(fds), _pairs([fd]))


def fd_sets_equivalent(d1: Iterable[FD], d2: Iterable[FD]) -> bool:
    a, b = list(d1), list(d2)
    _relation_of(a, b)
    pa, pb = _pairs(a), _pairs(b)
    return _implies_all(pa, pb) and _implies_all(pb, pa)


def _arity(fds: list[FD], arity: int | None) -> int:
    if arity is not None:
        return arity
    return max((max(d.lhs | d.rhs, default=0) for d in fds), default=0)


def _subsets_by_size(n: int) -> list[int]:
    return sorted(range(1 << n), key=lambda m: (bin(m).count("1"), m))


def single_fd_equivalent(delta: Iterable[FD], arity: int | None = None, relation: str | None = None) -> FD | None:
    """Some FD X -> Y equivalent to ``delta``, or None.

    Only Y = closure(X) needs trying for each candidate lhs X; the returned rhs
    omits the attributes already in X.
    """
    fds = list(delta)
    relation = _relation_of(fds) or relation or "R"
    n = _arity(fds, arity)
    if n > ARITY_BOUND:
        raise BoundExceeded("relation arity", n, ARITY_BOUND)
    pairs = _pairs(fds)
    for x in _subsets_by_size(n):
        y = _closure(x, pairs)
        if _implies_all([(x, y)], pairs):
            return FD(relation, _from_mask(x), _from_mask(y & ~x))
    return None


def minimal_keys(delta: Iterable[FD], arity: int) -> list[frozenset[int]]:
    fds = list(delta)
    _relation_of(fds)
    if arity > ARITY_BOUND:
        raise BoundExceeded("relation arity", arity, ARITY_BOUND)
    pairs = _pairs(fds)
    full = (1 << arity) - 1
    keys: list[int] = []
    for x in _subsets_by_size(arity):
        if any(k & x == k for k in keys):
            continue
        if _closure(x, pairs) == full:
            keys.append(x)
    return [_from_mask(k) for k in keys]


def two_keys_equivalent(delta: Iterable[FD], arity: int) -> tuple[frozenset[int], frozenset[int]] | None:
    """Two distinct keys K1, K2 with {K1 -> all, K2 -> all} equivalent to ``delta``."""
    fds = list(delta)
    pairs = _pairs(fds)
    full = (1 << arity) - 1
    keys = [_to_mask(k) for k in minimal_keys(fds, arity)]
    for k1, k2 in combinations(keys, 2):
        if _implies_all([(k1, full), (k2, full)], pairs):
            return _from_mask(k1), _from_mask(k2)
    return None


def _pattern_ok(x: int, y: int, w: int, z: int) -> bool:
    return bool(y & ~x) and bool(z & ~w) and bool(w & ~(x | y | z)) and bool(z & ~(x | y | w))


def two_fd_hard_pattern(delta: Iterable[FD], arity: int | None = None) -> tuple[FD, FD] | None:
    """Nontrivial FDs X -> Y and W -> Z equivalent to ``delta`` where W and Z each
    hold an attribute absent from the other three sets.

    The FDs of ``delta`` themselves are tried first. For small arities every
    equivalent pair is searched, since the pattern is a property of the
    conflicts an FD set induces rather than of its syntax.
    """
    fds = list(delta)
    relation = _relation_of(fds) or "R"
    n = _arity(fds, arity)
    nontrivial = [d for d in fds if not d.trivial]
    distinct = sorted(set(nontrivial), key=str)
    if len(distinct) == 2:
        for a, b in (distinct, distinct[::-1]):
            if _pattern_ok(_to_mask(a.lhs), _to_mask(a.rhs), _to_mask(b.lhs), _to_mask(b.rhs)):
                return a, b
    if n > PATTERN_SEARCH_ARITY:
        return None
    pairs = _pairs(fds)
    cl = [_closure(s, pairs) for s in range(1 << n)]
    for x in range(1 << n):
        ys = cl[x] & ~x
        for w in range(1 << n):
            if not w & ~cl[x]:
                # some attribute of W must lie outside X and Y
                continue
            zs = cl[w] & ~w
            for y in _submasks(ys):
                if not y or not w & ~(x | y):
                    continue
                for z in _submasks(zs):
                    if not z or not _pattern_ok(x, y, w, z):
                        continue
                    if _implies_all([(x, y), (w, z)], pairs):
                        return (
                            FD(relation, _from_mask(x), _from_mask(y)),
                            FD(relation, _from_mask(w), _from_mask(z)),
                        )
    return None


def _submasks(m: int):
    s = m
    while True:
        yield s
        if s == 0:
            return
        s = (s - 1) & m


@dataclass(frozen=True)
class Verdict:
    label: str
    complete: bool | str

    def to_json(self) -> dict:
        return {"label": self.label, "complete": self.complete}


@dataclass(frozen=True)
class RelationAnalysis:
    relation: str
    single_fd_equivalent: bool
    witness_fd: FD | None
    two_keys_equivalent: bool
    witness_keys: tuple[frozenset[int], frozenset[int]] | None
    hard_pattern: tuple[FD, FD] | None = None

    def to_json(self) -> dict:
        def fd_json(d: FD | None):
            return None if d is None else {"lhs": sorted(d.lhs), "rhs": sorted(d.rhs)}

        return {
            "single_fd_equivalent": self.single_fd_equivalent,
            "witness_fd": fd_json(self.witness_fd),
            "two_keys_equivalent": self.two_keys_equivalent,
            "witness_keys": None if self.witness_keys is None else [sorted(k) for k in self.witness_keys],
            "hard_pattern": None if self.hard_pattern is None else [fd_json(d) for d in self.hard_pattern],
        }


@dataclass(frozen=True)
class SchemaClassification:
    relations: dict[str, RelationAnalysis]
    verdicts: dict[str, Verdict] = field(default_factory=dict)

    def to_json(self) -> dict:
        out: dict = {name: r.to_json() for name, r in self.relations.items()}
        out["verdicts"] = {k: v.to_json() for k, v in self.verdicts.items()}
        return out


def analyze_relation(schema: Schema, relation: str) -> RelationAnalysis:
    delta = sorted(schema.restrict(relation), key=str)
    n = schema.signature.arity(relation)
    fd = single_fd_equivalent(delta, n, relation)
    keys = two_keys_equivalent(delta, n) if fd is None else None
    pattern = two_fd_hard_pattern(delta, n) if fd is None else None
    return RelationAnalysis(relation, fd is not None, fd, keys is not None, keys, pattern)


def classify(schema: Schema) -> SchemaClassification:
    rels = {name: analyze_relation(schema, name) for name in schema.signature.names}
    all_single = all(r.single_fd_equivalent for r in rels.values())
    verdicts = {
        "pareto": Verdict(PTIME, True) if all_single else Verdict(CONP_COMPLETE, True),
        "completion": Verdict(PTIME, True),
    }
    if all_single:
        verdicts["global"] = Verdict(PTIME, True)
    elif any(r.hard_pattern is not None for r in rels.values()):
        verdicts["global"] = Verdict(PI2P_COMPLETE, True)
    elif all(r.single_fd_equivalent or r.two_keys_equivalent for r in rels.values()):
        verdicts["global"] = Verdict(CONP, "unknown")
    else:
        verdicts["global"] = Verdict(PI2P, "unknown")
    return SchemaClassification(rels, dict(sorted(verdicts.items())))
