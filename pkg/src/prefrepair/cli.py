"""Command-line front end.

Exit status: 0 when a result was computed (whatever the verdict), 2 for
invalid input, 3 when a desk-scale bound is exceeded, 1 for anything else.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path
from typing import Any, Sequence

from . import io
from .categoricity import categoricity
from .dot import to_dot
from .errors import BoundExceeded, InstanceFormatError
from .generators import (
    FIXTURES,
    CNFInput,
    QSAT2Input,
    RandomParams,
    XCInput,
    fixture,
    gen_cnf_p,
    gen_qsat2,
    gen_random,
    gen_xc,
)
from .model import FD, PrioritizedInstance, validate
from .repairs import (
    IMPROVEMENT_BOUND,
    REPAIR_BOUND,
    RepairKind,
    TieBreaker,
    check_repair,
    enumerate_repairs,
    find_crep_steps,
)
from .schema_analysis import classify

EXIT_OK, EXIT_INTERNAL, EXIT_INVALID, EXIT_BOUND = 0, 1, 2, 3

KIND_CHOICES = ["plain", "p", "g", "c", "pareto", "global", "completion"]


class InvalidInput(Exception):
    def __init__(self, message: str, payload: dict | None = None):
        super().__init__(message)
        self.payload = payload


def _load(path: str) -> PrioritizedInstance:
    d = io.load_instance(path)
    report = validate(d)
    if not report.ok:
        raise InvalidInput(f"{path}: instance is not valid", report.to_json())
    return d


def _tie_breaker(policy: str, seed: int) -> TieBreaker:
    if policy == "lexicographic":
        return TieBreaker.lexicographic()
    if policy == "random":
        return TieBreaker.seeded(seed)
    if policy.startswith("explicit:"):
        return TieBreaker.explicit(x for x in policy[len("explicit:"):].split(",") if x)
    raise InvalidInput(f"bad --tie-break {policy!r}; use lexicographic, random or explicit:<id>,<id>,...")


def _parse_fd(text: str, relation: str = "R") -> FD:
    try:
        lhs, rhs = text.split("->")
        ints = lambda s: [int(x) for x in s.split(",") if x.strip()]
        return FD.of(relation, ints(lhs), ints(rhs))
    except ValueError:
        raise InvalidInput(f"bad FD {text!r}; expected e.g. 1->2 or 1,2->3") from None


def _ids(args: argparse.Namespace) -> list[str]:
    ids = list(args.ids)
    if args.repair_file:
        doc = io.read_json(args.repair_file)
        if not isinstance(doc, list) or not all(isinstance(x, str) for x in doc):
            raise InvalidInput("repair file must hold a JSON list of fact ids")
        ids += doc
    return ids


# -- subcommands ---------------------------------------------------------------------


def cmd_validate(args: argparse.Namespace) -> tuple[Any, int]:
    report = validate(io.load_instance(args.instance))
    return report.to_json(), EXIT_OK if report.ok else EXIT_INVALID


def cmd_categoricity(args: argparse.Namespace) -> tuple[Any, int]:
    d = _load(args.instance)
    schema = io.parse_schema(io.read_json(args.schema)) if args.schema else None
    r = categoricity(d, args.kind, schema, args.bound or IMPROVEMENT_BOUND)
    return r.to_json(), EXIT_OK


def cmd_check_repair(args: argparse.Namespace) -> tuple[Any, int]:
    d = _load(args.instance)
    ids = _ids(args)
    unknown = sorted(set(ids) - d.ids)
    if unknown:
        raise InvalidInput(f"unknown fact ids {unknown}")
    r = check_repair(ids, d, args.kind, args.bound or IMPROVEMENT_BOUND)
    return {"kind": r.kind.value, "subject": sorted(set(ids)), "verdict": r.verdict, "witness": r.witness}, EXIT_OK


def cmd_find_crep(args: argparse.Namespace) -> tuple[Any, int]:
    d = _load(args.instance)
    steps = find_crep_steps(d, _tie_breaker(args.tie_break, args.seed))
    return {
        "repair": sorted(x for x, keep in steps if keep),
        "steps": [[x, "keep" if keep else "drop"] for x, keep in steps],
    }, EXIT_OK


def cmd_enumerate(args: argparse.Namespace) -> tuple[Any, int]:
    d = _load(args.instance)
    kind = RepairKind.parse(args.kind)
    found = enumerate_repairs(d, kind, limit=args.limit, bound=args.bound or REPAIR_BOUND)
    return {"kind": kind.value, "count": len(found), "repairs": [sorted(r) for r in found]}, EXIT_OK


def cmd_classify(args: argparse.Namespace) -> tuple[Any, int]:
    schema = io.parse_schema(io.read_json(args.schema))
    return classify(schema).to_json(), EXIT_OK


def cmd_generate(args: argparse.Namespace) -> tuple[Any, int]:
    what = args.what
    extra = None
    if what == "fixture":
        if args.source not in FIXTURES:
            raise InvalidInput(f"unknown fixture {args.source!r}; known: {sorted(FIXTURES)}")
        d = fixture(args.source)
    elif what == "random":
        params = RandomParams(
            n_facts=args.n_facts,
            max_edge_arity=args.max_edge_arity,
            edge_density=args.edge_density,
            priority_density=args.priority_density,
            force_transitive=args.force_transitive,
            fd_mode=_parse_fd(args.fd) if args.fd else None,
            arity=args.arity,
            domain=args.domain,
        )
        d = gen_random(params, args.seed)
    else:
        if not args.source:
            raise InvalidInput(f"generate {what} needs an input file")
        doc = io.read_json(args.source)
        if what == "xc":
            d, j0 = gen_xc(XCInput.from_json(doc))
            extra = sorted(j0)
        elif what == "cnf":
            d = gen_cnf_p(CNFInput.from_json(doc))
        else:
            d = gen_qsat2(QSAT2Input.from_json(doc))
    if args.reference_out and extra is not None:
        Path(args.reference_out).write_text(io.dumps(extra), encoding="utf-8")
    return io.emit_instance(d), EXIT_OK


def cmd_export_dot(args: argparse.Namespace) -> tuple[Any, int]:
    d = _load(args.instance)
    return to_dot(d, Path(args.instance).stem), EXIT_OK


# -- parser --------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=int, default=0, help="seed for random choices")
    common.add_argument(
        "--tie-break",
        default="lexicographic",
        help="lexicographic, random (uses --seed) or explicit:<id>,<id>,...",
    )
    common.add_argument("--bound", type=int, default=None, help="override the desk-scale size bound")
    common.add_argument("-o", "--output", default=None, help="write output here instead of stdout")

    p = argparse.ArgumentParser(prog="prefrepair", description="Preferred repairs of prioritized inconsistent instances.")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("validate", parents=[common], help="check instance invariants")
    s.add_argument("instance")
    s.set_defaults(func=cmd_validate)

    s = sub.add_parser("categoricity", parents=[common], help="is there exactly one preferred repair")
    s.add_argument("kind", choices=["p", "g", "c", "pareto", "global", "completion"])
    s.add_argument("instance")
    s.add_argument("--schema", help="schema file used for per-relation dispatch")
    s.set_defaults(func=cmd_categoricity)

    s = sub.add_parser("check-repair", parents=[common], help="is a subinstance a repair of the given kind")
    s.add_argument("kind", choices=KIND_CHOICES)
    s.add_argument("instance")
    s.add_argument("ids", nargs="*", help="fact ids of the subinstance")
    s.add_argument("--repair-file", help="JSON list of fact ids, added to the positional ids")
    s.set_defaults(func=cmd_check_repair)

    s = sub.add_parser("find-crep", parents=[common], help="run the greedy c-repair generator")
    s.add_argument("instance")
    s.set_defaults(func=cmd_find_crep)

    s = sub.add_parser("enumerate", parents=[common], help="list all repairs of a kind")
    s.add_argument("kind", choices=KIND_CHOICES)
    s.add_argument("instance")
    s.add_argument("--limit", type=int, default=None, help="stop after this many repairs")
    s.set_defaults(func=cmd_enumerate)

    s = sub.add_parser("classify", parents=[common], help="complexity labels for a schema")
    s.add_argument("schema", help="schema file, or an instance file with `fds`")
    s.set_defaults(func=cmd_classify)

    s = sub.add_parser("generate", parents=[common], help="build an instance")
    s.add_argument("what", choices=["xc", "cnf", "qsat2", "random", "fixture"])
    s.add_argument("source", nargs="?", help="problem file, or the fixture name")
    s.add_argument("--reference-out", help="for xc, write the reference c-repair here")
    s.add_argument("--n-facts", type=int, default=8)
    s.add_argument("--max-edge-arity", type=int, default=2)
    s.add_argument("--edge-density", type=float, default=0.3)
    s.add_argument("--priority-density", type=float, default=0.5)
    s.add_argument("--force-transitive", action="store_true")
    s.add_argument("--fd", help="single FD over relation R, e.g. 1->2")
    s.add_argument("--arity", type=int, default=3)
    s.add_argument("--domain", type=int, default=3)
    s.set_defaults(func=cmd_generate)

    s = sub.add_parser("export-dot", parents=[common], help="render the instance as Graphviz DOT")
    s.add_argument("instance")
    s.set_defaults(func=cmd_export_dot)
    return p


def _emit(result: Any, output: str | None) -> None:
    text = result if isinstance(result, str) else io.dumps(result)
    if output:
        Path(output).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)


def run(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        # argparse exits 2 on usage errors, which matches invalid input
        return int(exc.code or 0)
    try:
        result, status = args.func(args)
    except InvalidInput as exc:
        _emit(exc.payload if exc.payload is not None else {"error": str(exc)}, None)
        print(f"prefrepair: {exc}", file=sys.stderr)
        return EXIT_INVALID
    except (InstanceFormatError, ValueError, KeyError) as exc:
        msg = exc.args[0] if isinstance(exc, KeyError) and exc.args else str(exc)
        _emit({"error": str(msg)}, None)
        print(f"prefrepair: invalid input: {msg}", file=sys.stderr)
        return EXIT_INVALID
    except BoundExceeded as exc:
        _emit({"error": "bound exceeded", "what": exc.what, "size": exc.size, "bound": exc.bound}, None)
        print(f"prefrepair: {exc}", file=sys.stderr)
        return EXIT_BOUND
    except Exception as exc:  # noqa: BLE001
        print(f"prefrepair: internal error: {exc!r}", file=sys.stderr)
        return EXIT_INTERNAL
    _emit(result, args.output)
    return status


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
