"""Fact-wise reductions between schemas.

Each reduction maps facts one by one, keeps fact ids and the priority pairs,
and rebuilds the conflicts from the target FDs. Pairwise consistency and
injectivity are preserved, so Pareto-optimal repairs correspond one to one.
"""

from __future__ import annotations

import json
from typing import Any, Callable, Iterable

from ..model import FD, Fact, PrioritizedInstance, Schema, Signature
from ..schemas import standard_schema
from .reductions import ODOT, OPLUS, OTIMES

FACTWISE_TARGETS = ("pi1", "pi2", "pi3", "pi4", "pi5", "two-keys", "two-fd")


def _pair(a: Any, b: Any) -> str:
    return "#<" + json.dumps([a, b]) + ">"


_BINARY: dict[str, Callable[[Any, Any], tuple]] = {
    "pi1": lambda a, b: (a, b, OTIMES),
    "pi2": lambda a, b: (a, b, OTIMES),
    "pi3": lambda a, b: (OTIMES, a, b),
    "pi4": lambda a, b: (a, b, a),
    "pi5": lambda a, b: (a, b, _pair(a, b)),
}


def _source_facts(d: PrioritizedInstance, arity: int) -> list[Fact]:
    rels = {f.relation for f in d.facts}
    if len(rels) > 1:
        raise ValueError(f"source instance must have a single relation, found {sorted(rels)}")
    for f in d.facts:
        if len(f.values) != arity:
            raise ValueError(f"source fact {f.id!r} is not {arity}-ary")
        for c in f.values:
            if isinstance(c, str) and c.startswith("#"):
                raise ValueError(f"source constant {c!r} uses the reserved prefix")
    return list(d.facts)


def _build(schema: Schema, rel: str, facts: Iterable[Fact], mapper, d: PrioritizedInstance) -> PrioritizedInstance:
    image = [Fact(f.id, rel, tuple(mapper(*f.values))) for f in facts]
    if len({f.values for f in image}) != len(image):
        raise ValueError("reduction is not injective on this input")
    return PrioritizedInstance.from_fds(schema, image, d.priority.pairs)


def _attrs(s: Iterable[int], n: int, what: str) -> frozenset[int]:
    out = frozenset(s)
    if not all(isinstance(i, int) and 1 <= i <= n for i in out):
        raise ValueError(f"{what} must be attribute indices in 1..{n}")
    return out


def two_keys_reduce(d: PrioritizedInstance, arity: int, x: Iterable[int], y: Iterable[int]) -> PrioritizedInstance:
    """From {A->B, B->A} to an n-ary relation with keys X and Y."""
    xs, ys = _attrs(x, arity, "X"), _attrs(y, arity, "Y")
    if not xs - ys or not ys - xs:
        raise ValueError("each key needs an attribute outside the other key")
    full = frozenset(range(1, arity + 1))
    schema = Schema.of(Signature.of([("R", arity)]), [FD("R", xs, full), FD("R", ys, full)])

    def mapper(a, b):
        return tuple(a if i in xs - ys else b if i in ys - xs else ODOT for i in range(1, arity + 1))

    return _build(schema, "R", _source_facts(d, 2), mapper, d)


def two_fd_reduce(
    d: PrioritizedInstance, arity: int, x: Iterable[int], y: Iterable[int], w: Iterable[int], z: Iterable[int]
) -> PrioritizedInstance:
    """From {{} -> A, B -> C} to an n-ary relation with FDs X->Y and W->Z, where
    W and Z each have an attribute absent from the other three sets."""
    xs, ys = _attrs(x, arity, "X"), _attrs(y, arity, "Y")
    ws, zs = _attrs(w, arity, "W"), _attrs(z, arity, "Z")
    if ys <= xs or zs <= ws:
        raise ValueError("both FDs must be nontrivial")
    only_w = ws - (xs | ys | zs)
    only_z = zs - (xs | ys | ws)
    if not only_w:
        raise ValueError("W needs an attribute outside X, Y and Z")
    if not only_z:
        raise ValueError("Z needs an attribute outside X, Y and W")
    schema = Schema.of(Signature.of([("R", arity)]), [FD("R", xs, ys), FD("R", ws, zs)])

    def mapper(a, b, c):
        out = []
        for i in range(1, arity + 1):
            if i in xs:
                out.append(ODOT)
            elif i in ys:
                out.append(a)
            elif i in only_w:
                out.append(b)
            elif i in only_z:
                out.append(c)
            else:
                out.append(OPLUS)
        return tuple(out)

    return _build(schema, "R", _source_facts(d, 3), mapper, d)


def factwise_reduce(target: str, d: PrioritizedInstance, **params: Any) -> PrioritizedInstance:
    """Apply a named reduction.

    ``pi1`` .. ``pi5`` take binary facts to the three-attribute schemas R1..R5.
    ``two-keys`` needs ``arity``, ``x``, ``y``; ``two-fd`` needs ``arity``,
    ``x``, ``y``, ``w``, ``z``.
    """
    if target in _BINARY:
        i = int(target[-1])
        return _build(standard_schema(i), f"R{i}", _source_facts(d, 2), _BINARY[target], d)
    if target == "two-keys":
        return two_keys_reduce(d, params["arity"], params["x"], params["y"])
    if target == "two-fd":
        return two_fd_reduce(d, params["arity"], params["x"], params["y"], params["w"], params["z"])
    raise ValueError(f"unknown reduction {target!r}; known: {list(FACTWISE_TARGETS)}")
