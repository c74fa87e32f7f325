"""Graphviz DOT rendering of a prioritized instance.

Priority pairs become directed edges f -> g (f preferred). Binary conflicts
without a priority between their facts are drawn undirected. Hyperedges with
more than two facts get an auxiliary point node joined to each member.
"""

from __future__ import annotations

import json

from .model import PrioritizedInstance


def _q(s: str) -> str:
    # JSON string escaping is a valid DOT quoted string
    return json.dumps(s, ensure_ascii=False)


def _fact_label(fact) -> str:
    args = ", ".join(str(v) for v in fact.values)
    return f"{fact.id}\n{fact.relation}({args})"


def to_dot(d: PrioritizedInstance, name: str = "instance") -> str:
    lines = [f"digraph {_q(name)} {{", "  node [shape=box];"]
    for f in d.facts:
        lines.append(f"  {_q(f.id)} [label={_q(_fact_label(f))}];")
    pri = d.priority.pairs
    for a, b in d.priority.sorted_pairs():
        lines.append(f"  {_q(a)} -> {_q(b)};")
    k = 0
    for e in d.hypergraph.sorted_edges():
        if len(e) == 2:
            a, b = e
            if (a, b) not in pri and (b, a) not in pri:
                lines.append(f"  {_q(a)} -> {_q(b)} [dir=none];")
            continue
        k += 1
        aux = f"#e{k}"
        lines.append(f"  {_q(aux)} [shape=point, xlabel={_q('e' + str(k))}];")
        for x in e:
            lines.append(f"  {_q(aux)} -> {_q(x)} [dir=none, style=dashed];")
    lines.append("}")
    return "\n".join(lines) + "\n"
