"""Instance generators encoding exact cover, CNF satisfiability and
forall-exists CNF validity as categoricity questions.

Fresh constants start with ``#`` and user constants may not, so the two
never collide.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Any, Iterable, Sequence

from ..model import Fact, PrioritizedInstance
from ..schemas import standard_schema

RESERVED = "#"
ODOT, OTIMES, OPLUS = "#odot", "#otimes", "#oplus"

Literal = tuple[str, bool]


def _check_user_constant(c: Any) -> None:
    if isinstance(c, str) and c.startswith(RESERVED):
        raise ValueError(f"constant {c!r} uses the reserved prefix {RESERVED!r}")
    if not isinstance(c, (str, int)) or isinstance(c, bool):
        raise ValueError(f"constant {c!r} must be a string or an integer")


def _tag(c: Any) -> str:
    return json.dumps(c)


def parse_literal(lit: Any) -> Literal:
    """``"x"`` is a positive literal, ``"-x"`` (or ``"~x"``, ``"!x"``) a negative one."""
    if isinstance(lit, (list, tuple)) and len(lit) == 2:
        return str(lit[0]), bool(lit[1])
    if not isinstance(lit, str) or not lit.strip("-~!"):
        raise ValueError(f"bad literal {lit!r}")
    if lit[0] in "-~!":
        return lit[1:], False
    return lit, True


def _parse_clauses(raw: Any) -> tuple[tuple[Literal, ...], ...]:
    if not isinstance(raw, list):
        raise ValueError("`clauses` must be a list of literal lists")
    return tuple(tuple(parse_literal(l) for l in c) for c in raw)


def _check_clauses(clauses: Sequence[Sequence[Literal]], variables: Iterable[str]) -> None:
    known = set(variables)
    for j, c in enumerate(clauses):
        if not c:
            raise ValueError(f"clause {j} is empty")
        for name, _ in c:
            if name not in known:
                raise ValueError(f"clause {j} uses undeclared variable {name!r}")


def _tautology(clause: Sequence[Literal]) -> bool:
    return bool({n for n, p in clause if p} & {n for n, p in clause if not p})


def _dedupe(xs: Iterable[Any]) -> tuple:
    return tuple(dict.fromkeys(xs))


# -- exact cover -------------------------------------------------------------------


@dataclass(frozen=True)
class XCInput:
    universe: tuple
    sets: tuple[tuple[str, tuple], ...]

    @classmethod
    def of(cls, universe: Iterable[Any], sets: Any) -> "XCInput":
        if isinstance(sets, dict):
            named = [(str(k), _dedupe(v)) for k, v in sets.items()]
        else:
            named = [(f"S{i}", _dedupe(v)) for i, v in enumerate(sets)]
        return cls(_dedupe(universe), tuple(named))

    @classmethod
    def from_json(cls, doc: dict) -> "XCInput":
        if not isinstance(doc, dict) or "universe" not in doc or "sets" not in doc:
            raise ValueError("exact-cover input needs `universe` and `sets`")
        return cls.of(doc["universe"], doc["sets"])

    def validate(self) -> None:
        for u in self.universe:
            _check_user_constant(u)
        names = [n for n, _ in self.sets]
        if len(set(names)) != len(names):
            raise ValueError("set names must be distinct")
        if len({str(u) for u in self.universe}) != len(self.universe):
            raise ValueError("universe elements must have distinct string forms")
        covered = set()
        for name, elems in self.sets:
            if not elems:
                raise ValueError(f"set {name!r} is empty")
            extra = set(elems) - set(self.universe)
            if extra:
                raise ValueError(f"set {name!r} has elements outside the universe: {sorted(map(str, extra))}")
            covered |= set(elems)
        if covered != set(self.universe):
            missing = sorted(map(str, set(self.universe) - covered))
            raise ValueError(f"sets do not cover the universe; missing {missing}")

    def has_exact_cover(self) -> bool:
        """Brute force over all subcollections."""
        target = set(self.universe)
        sets = [set(e) for _, e in self.sets]

        def rec(k: int, covered: set) -> bool:
            if covered == target:
                return True
            if k == len(sets):
                return False
            if not sets[k] & covered and rec(k + 1, covered | sets[k]):
                return True
            return rec(k + 1, covered)

        return rec(0, set())


def gen_xc(inp: XCInput, as_stated: bool = False) -> tuple[PrioritizedInstance, frozenset[str]]:
    """Instance over R0 with {A->B, B->A} and its reference c-repair.

    The instance has a Pareto-optimal repair other than the reference one
    iff the input has an exact cover.

    ``as_stated=True`` builds the textbook variant instead: (u, u) dominates
    every R0(X_x, u), and the wrap-around facts do not dominate the
    (X_x, X_x) facts. That variant admits extra Pareto-optimal repairs
    mixing partial sets, so the equivalence fails for it.
    """
    inp.validate()
    facts: dict[str, tuple] = {}
    pri: set[tuple[str, str]] = set()
    by_value: dict[tuple, str] = {}

    def add(fid: str, a: Any, b: Any) -> str:
        if (a, b) in by_value:
            return by_value[(a, b)]
        facts[fid] = (a, b)
        by_value[(a, b)] = fid
        return fid

    def fu(u: Any) -> str:
        return f"#f:{_tag(u)}"

    def xc(name: str, x: Any) -> str:
        return f"#X:{name}:{_tag(x)}"

    uu = {u: add(f"u:{u}", u, u) for u in inp.universe}
    uf = {u: add(f"uf:{u}", u, fu(u)) for u in inp.universe}
    for u in inp.universe:
        pri.add((uu[u], uf[u]))
    j0 = set(uu.values())
    for name, elems in inp.sets:
        n = len(elems)
        for x in elems:
            xx = add(f"xx:{name}:{x}", xc(name, x), xc(name, x))
            j0.add(xx)
            xv = add(f"xv:{name}:{x}", xc(name, x), x)
            for u in inp.universe:
                xf = add(f"xf:{name}:{x}:{u}", xc(name, x), fu(u))
                pri.add((xx, xf))
                pri.add((xf, xv))
        for i, x in enumerate(elems):
            succ = elems[(i + 1) % n]
            if as_stated:
                pri.add((uu[x], by_value[(xc(name, x), x)]))
            if succ == x:
                # a one-element set: the wrap-around fact is the type (v) fact itself
                continue
            xw = add(f"xw:{name}:{i}", xc(name, succ), x)
            # (u, u) dominates R0(X_x, u) only for u != x, i.e. only the wrap-around facts
            pri.add((uu[x], xw))
            pri.add((xw, by_value[(xc(name, x), x)]))
            if not as_stated:
                # otherwise (X_y, X_y) could block the wrap-around fact and let a set be half chosen
                pri.add((xw, by_value[(xc(name, succ), xc(name, succ))]))
    schema = standard_schema(0)
    d = PrioritizedInstance.from_fds(schema, (Fact(k, "R0", v) for k, v in facts.items()), pri)
    return d, frozenset(j0)


# -- CNF satisfiability ------------------------------------------------------------


@dataclass(frozen=True)
class CNFInput:
    variables: tuple[str, ...]
    clauses: tuple[tuple[Literal, ...], ...]

    @classmethod
    def of(cls, variables: Iterable[str], clauses: Iterable[Iterable[Any]]) -> "CNFInput":
        return cls(_dedupe(variables), tuple(tuple(parse_literal(l) for l in c) for c in clauses))

    @classmethod
    def from_json(cls, doc: dict) -> "CNFInput":
        if not isinstance(doc, dict) or "clauses" not in doc:
            raise ValueError("CNF input needs `vars` and `clauses`")
        clauses = _parse_clauses(doc["clauses"])
        names = doc.get("vars")
        if names is None:
            names = [n for c in clauses for n, _ in c]
        if not isinstance(names, list):
            raise ValueError("`vars` must be a list of variable names")
        return cls(_dedupe(map(str, names)), clauses)

    def validate(self) -> None:
        if not self.variables:
            raise ValueError("a CNF input needs at least one variable")
        _check_clauses(self.clauses, self.variables)

    def satisfiable(self) -> bool:
        return any(_satisfies(self.clauses, a) for a in _assignments(self.variables))


def _assignments(variables: Sequence[str]):
    for k in range(1 << len(variables)):
        yield {v: bool(k >> i & 1) for i, v in enumerate(variables)}


def _satisfies(clauses, a: dict[str, bool]) -> bool:
    return all(any(a[n] == p for n, p in c) for c in clauses)


def gen_cnf_p(inp: CNFInput) -> PrioritizedInstance:
    """Instance over R6 with {{} -> A, B -> C}.

    The clause facts form the only c-repair; another Pareto-optimal repair
    exists iff the formula is satisfiable. Tautological clauses are dropped
    since they hold under every assignment.
    """
    inp.validate()
    facts: dict[str, tuple] = {}
    pri = []
    for x in inp.variables:
        for b in (0, 1):
            facts[f"v:{x}:{b}"] = (ODOT, f"#v:{x}", b)
    kept = [c for c in inp.clauses if not _tautology(c)]
    for j, clause in enumerate(kept):
        cid = f"c:{j}"
        facts[cid] = (OTIMES, f"#c:{j}", f"#c:{j}")
        pos = {n for n, p in clause if p}
        neg = {n for n, p in clause if not p}
        for x in inp.variables:
            if x in pos:
                pri.append((cid, f"v:{x}:0"))
            elif x in neg:
                pri.append((cid, f"v:{x}:1"))
            else:
                pri += [(cid, f"v:{x}:0"), (cid, f"v:{x}:1")]
    return PrioritizedInstance.from_fds(standard_schema(6), (Fact(k, "R6", v) for k, v in facts.items()), pri)


# -- forall-exists CNF ---------------------------------------------------------------


@dataclass(frozen=True)
class QSAT2Input:
    universal: tuple[str, ...]
    existential: tuple[str, ...]
    clauses: tuple[tuple[Literal, ...], ...]

    @classmethod
    def of(cls, universal: Iterable[str], existential: Iterable[str], clauses: Iterable[Iterable[Any]]) -> "QSAT2Input":
        return cls(
            _dedupe(universal),
            _dedupe(existential),
            tuple(tuple(parse_literal(l) for l in c) for c in clauses),
        )

    @classmethod
    def from_json(cls, doc: dict) -> "QSAT2Input":
        if not isinstance(doc, dict) or "clauses" not in doc or not isinstance(doc.get("vars"), dict):
            raise ValueError("QSAT2 input needs `vars` as {\"forall\": [...], \"exists\": [...]} and `clauses`")
        v = doc["vars"]
        return cls(
            _dedupe(map(str, v.get("forall", []))),
            _dedupe(map(str, v.get("exists", []))),
            _parse_clauses(doc["clauses"]),
        )

    def validate(self) -> None:
        both = set(self.universal) & set(self.existential)
        if both:
            raise ValueError(f"variables {sorted(both)} are both universal and existential")
        _check_clauses(self.clauses, self.universal + self.existential)

    def valid(self) -> bool:
        """Every assignment of the universal variables extends to a satisfying one."""
        return all(
            any(_satisfies(self.clauses, {**a, **b}) for b in _assignments(self.existential))
            for a in _assignments(self.universal)
        )


def gen_qsat2(inp: QSAT2Input) -> PrioritizedInstance:
    """Instance over R6 whose only global-optimal repair is ``f0`` iff the
    formula is forall-exists valid.

    Clause priorities are added for existential as well as universal
    variables; the equivalence needs a satisfying existential literal to
    dominate its clause.
    """
    inp.validate()
    facts: dict[str, tuple] = {"f0": (2, 0, 0)}
    pri = []
    for x in inp.universal:
        for b in (0, 1):
            facts[f"x0:{x}:{b}"] = (0, f"#v:{x}", b)
            facts[f"x1:{x}:{b}"] = (1, f"#v:{x}", b)
            pri.append((f"x1:{x}:{b}", f"x0:{x}:{b}"))
    for y in inp.existential:
        for b in (0, 1):
            facts[f"y1:{y}:{b}"] = (1, f"#v:{y}", b)
    one = {x: f"x1:{x}" for x in inp.universal}
    one.update({y: f"y1:{y}" for y in inp.existential})
    for w, prefix in one.items():
        for b in (0, 1):
            pri.append(("f0", f"{prefix}:{b}"))
    for j, clause in enumerate(inp.clauses):
        cid = f"c:{j}"
        facts[cid] = (0, f"#c:{j}", f"#c:{j}")
        for name, positive in dict.fromkeys(clause):
            pri.append((f"{one[name]}:{1 if positive else 0}", cid))
    return PrioritizedInstance.from_fds(standard_schema(6), (Fact(k, "R6", v) for k, v in facts.items()), pri)
