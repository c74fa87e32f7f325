"""JSON reading and writing of instances and schemas."""

from __future__ import annotations

import json
from pathlib import Path
from typing import Any

from .errors import InstanceFormatError
from .model import FD, Fact, PrioritizedInstance, Schema, Signature

_SCALARS = (str, int, float, bool, type(None))


def _need(cond: bool, msg: str) -> None:
    if not cond:
        raise InstanceFormatError(msg)


def parse_signature(raw: Any) -> Signature:
    _need(isinstance(raw, list), "`signature` must be a list")
    rels = []
    for r in raw:
        _need(isinstance(r, dict) and set(r) >= {"name", "arity"}, f"bad signature entry {r!r}")
        _need(isinstance(r["name"], str), f"relation name must be a string: {r!r}")
        _need(isinstance(r["arity"], int) and not isinstance(r["arity"], bool), f"bad arity in {r!r}")
        rels.append((r["name"], r["arity"]))
    sig = Signature.of(rels)
    probs = sig.problems()
    _need(not probs, "; ".join(probs))
    return sig


def parse_fds(raw: Any) -> list[FD]:
    _need(isinstance(raw, list), "`fds` must be a list")
    out = []
    for d in raw:
        _need(isinstance(d, dict) and set(d) >= {"relation", "lhs", "rhs"}, f"bad FD entry {d!r}")
        for k in ("lhs", "rhs"):
            _need(
                isinstance(d[k], list) and all(isinstance(i, int) and not isinstance(i, bool) for i in d[k]),
                f"FD {k} must be a list of attribute indices: {d!r}",
            )
        out.append(FD.of(d["relation"], d["lhs"], d["rhs"]))
    return out


def parse_schema(doc: Any) -> Schema:
    _need(isinstance(doc, dict), "schema document must be a JSON object")
    _need("signature" in doc, "missing `signature`")
    schema = Schema.of(parse_signature(doc["signature"]), parse_fds(doc.get("fds", [])))
    probs = schema.problems()
    _need(not probs, "; ".join(probs))
    return schema


def parse_instance(doc: Any, minimize: bool = True) -> PrioritizedInstance:
    """Build an instance from its canonical JSON form.

    Structural problems raise InstanceFormatError. Semantic problems (cycles,
    non-neighbor priorities, dangling ids) are left for ``validate`` to report.
    """
    _need(isinstance(doc, dict), "instance document must be a JSON object")
    _need("signature" in doc and "facts" in doc, "instance needs `signature` and `facts`")
    _need(not ("hyperedges" in doc and "fds" in doc), "give either `hyperedges` or `fds`, not both")
    sig = parse_signature(doc["signature"])

    raw_facts = doc["facts"]
    _need(isinstance(raw_facts, list), "`facts` must be a list")
    facts = []
    for f in raw_facts:
        _need(isinstance(f, dict) and set(f) >= {"id", "relation", "tuple"}, f"bad fact entry {f!r}")
        _need(isinstance(f["id"], str), f"fact id must be a string: {f!r}")
        _need(isinstance(f["tuple"], list), f"fact tuple must be a list: {f!r}")
        _need(all(isinstance(c, _SCALARS) for c in f["tuple"]), f"fact constants must be scalars: {f!r}")
        facts.append(Fact(f["id"], f["relation"], tuple(f["tuple"])))

    raw_pri = doc.get("priority", [])
    _need(isinstance(raw_pri, list), "`priority` must be a list")
    pri = []
    for p in raw_pri:
        _need(isinstance(p, list) and len(p) == 2 and all(isinstance(x, str) for x in p), f"bad priority pair {p!r}")
        pri.append((p[0], p[1]))

    if "fds" in doc:
        schema = Schema.of(sig, parse_fds(doc["fds"]))
        probs = schema.problems()
        _need(not probs, "; ".join(probs))
        ids = [f.id for f in facts]
        _need(len(ids) == len(set(ids)), "duplicate fact ids")
        try:
            return PrioritizedInstance.from_fds(schema, facts, pri)
        except ValueError as exc:
            raise InstanceFormatError(str(exc)) from exc

    edges = doc.get("hyperedges", [])
    _need(isinstance(edges, list), "`hyperedges` must be a list")
    for e in edges:
        _need(isinstance(e, list) and all(isinstance(x, str) for x in e), f"bad hyperedge {e!r}")
    return PrioritizedInstance.from_hyperedges(sig, facts, edges, pri, minimize=minimize)


def emit_signature(sig: Signature) -> list[dict]:
    return [{"name": r.name, "arity": r.arity} for r in sig.relations]


def emit_fds(fds) -> list[dict]:
    rows = [{"relation": d.relation, "lhs": sorted(d.lhs), "rhs": sorted(d.rhs)} for d in fds]
    return sorted(rows, key=lambda r: (r["relation"], r["lhs"], r["rhs"]))


def emit_schema(schema: Schema) -> dict:
    return {"signature": emit_signature(schema.signature), "fds": emit_fds(schema.fds)}


def emit_instance(d: PrioritizedInstance) -> dict:
    doc: dict[str, Any] = {
        "signature": emit_signature(d.signature),
        "facts": [{"id": f.id, "relation": f.relation, "tuple": list(f.values)} for f in d.facts],
        "priority": d.priority.sorted_pairs(),
    }
    if d.schema is not None:
        doc["fds"] = emit_fds(d.schema.fds)
    else:
        doc["hyperedges"] = d.hypergraph.sorted_edges()
    return doc


def dumps(doc: Any) -> str:
    return json.dumps(doc, sort_keys=True, indent=2, ensure_ascii=False) + "\n"


def read_json(path: str | Path) -> Any:
    try:
        return json.loads(Path(path).read_text(encoding="utf-8"))
    except FileNotFoundError as exc:
        raise InstanceFormatError(f"no such file: {path}") from exc
    except json.JSONDecodeError as exc:
        raise InstanceFormatError(f"{path}: invalid JSON ({exc})") from exc


def load_instance(path: str | Path) -> PrioritizedInstance:
    return parse_instance(read_json(path))


def save_instance(d: PrioritizedInstance, path: str | Path) -> None:
    Path(path).write_text(dumps(emit_instance(d)), encoding="utf-8")
