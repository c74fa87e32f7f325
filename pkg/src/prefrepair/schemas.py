"""The seven single-relation schemas used by the hardness results and reductions."""

from __future__ import annotations

from .model import FD, Schema, Signature

_DEFS = {
    0: (2, [({1}, {2}), ({2}, {1})]),
    1: (3, [({1, 2}, {3}), ({2, 3}, {1}), ({1, 3}, {2})]),
    2: (3, [({1}, {2}), ({2}, {1})]),
    3: (3, [({1, 2}, {3}), ({3}, {2})]),
    4: (3, [({1}, {2}), ({2}, {3})]),
    5: (3, [({1}, {3}), ({2}, {3})]),
    6: (3, [(set(), {1}), ({2}, {3})]),
}


def standard_schema(i: int) -> Schema:
    """Schema with the single relation ``R<i>`` and its FD set."""
    arity, fds = _DEFS[i]
    name = f"R{i}"
    return Schema.of(Signature.of([(name, arity)]), (FD.of(name, l, r) for l, r in fds))
