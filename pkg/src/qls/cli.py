"""``qls`` command line.

Every command prints one JSON object, ``{"status": "ok", "payload": ...}`` or
``{"status": "failed", "error": {"code": ..., "message": ...}}``, and exits
with the error's ``exit_code`` (0 on success).  ``--human`` prints aligned
text instead.
"""

from __future__ import annotations

import argparse
import os
import sys
from typing import Any, Sequence

from . import builder, registry
from .catalog import Matrix
from .errors import ParseError, QLSError
from .serialize import (
    RECTANGLE,
    GridDocument,
    dumps,
    from_document,
    read_document,
    to_document,
    write_document,
)
from .state import QuantumLatinSquare, census, set_relations, verify_grid, verify_qls

EXIT_CODES = {
    "ok": 0,
    "QLSError": 1,
    "ImpossibleCardinality": 2,
    "OutOfRange": 3,
    "UnsupportedOrder12Cardinality": 4,
    "ParseError": 5,
    "UnknownGenerator": 6,
    "UnsupportedParameter": 7,
    "SelfCheckFailed": 8,
    "DisjointnessViolation": 9,
    "NoDecomposition": 10,
    "DimensionMismatch": 11,
    "ShapeMismatch": 12,
    "IndexOutOfRange": 13,
    "DivisionByZero": 14,
    "RadicandTooLarge": 15,
    "TooManyRadicals": 16,
}


class _Parser(argparse.ArgumentParser):
    def error(self, message: str):  # type: ignore[override]
        raise ParseError(f"{self.prog}: {message}")


def _params(items: Sequence[str]) -> dict[str, str]:
    out = {}
    for item in items:
        for piece in item.split(","):
            if not piece:
                continue
            key, sep, value = piece.partition("=")
            if not sep or not key:
                raise ParseError(f"parameters are key=value, got {piece!r}")
            out[key.strip()] = value
    return out


def _load(path: str) -> Any:
    return from_document(read_document(path))


def _summary(obj: Any) -> dict:
    out: dict[str, Any] = {}
    if isinstance(obj, QuantumLatinSquare):
        out.update(kind="square", name=obj.name, order=obj.order, repaired=list(obj.repaired),
                   cardinality=obj.cardinality())
    elif isinstance(obj, Matrix):
        out.update(kind="matrix", name=obj.name, repaired=obj.repaired, orthonormal=obj.is_orthonormal())
    elif hasattr(obj, "cells"):
        cells = obj.cells()
        out.update(cardinality=len(census(cells)))
    return out


def cmd_build(args) -> dict:
    if args.plan:
        plan = from_document(read_document(args.plan))
        if not isinstance(plan, builder.BlockPlan):
            raise ParseError(f"{args.plan} is not a plan document")
    else:
        if args.m is None or args.cardinality is None:
            raise ParseError("build needs --m and --cardinality, or --plan")
        plan = builder.plan(args.m, args.cardinality)
    target = plan.predicted_cardinality
    if args.cardinality is not None and args.cardinality != target:
        raise ParseError(f"plan predicts {target}, --cardinality says {args.cardinality}")
    q = builder.assemble(plan)
    self_check = not args.no_self_check and (args.self_check or 6 * plan.m <= 36)
    if self_check:
        builder.run_self_check(q, target)
    doc = to_document(q)
    payload: dict[str, Any] = {
        "m": plan.m,
        "order": q.order,
        "branch": plan.branch,
        "predicted_cardinality": target,
        "census": q.cardinality(),
        "self_check": self_check,
        "repaired": list(q.repaired),
    }
    if args.plan_out:
        write_document(args.plan_out, plan.to_json())
        payload["plan_out"] = args.plan_out
    if args.out:
        write_document(args.out, doc)
        payload["out"] = args.out
    else:
        payload["square"] = doc
    return payload


def cmd_verify(args) -> dict:
    obj = _load(args.path)
    if isinstance(obj, QuantumLatinSquare):
        report = verify_qls(obj).to_json()
        return {"kind": "square", "name": obj.name, "repaired": list(obj.repaired), "report": report}
    if isinstance(obj, GridDocument):
        report = verify_grid(obj.grid, columns=obj.kind != RECTANGLE).to_json()
        return {"kind": obj.kind, "name": obj.name, "repaired": list(obj.repaired), "report": report}
    if isinstance(obj, Matrix):
        rows = obj.rows
        unit = [i for i in range(obj.size) if obj.row_norm_sq(i) != 1]
        return {
            "kind": "matrix",
            "name": obj.name,
            "repaired": obj.repaired,
            "report": {"ok": obj.is_orthonormal(), "order": len(rows), "rows_not_unit": unit},
        }
    raise ParseError(f"{args.path} holds no cells to verify")


def _grid_of(obj: Any, path: str):
    if isinstance(obj, (QuantumLatinSquare, GridDocument)):
        return obj.grid
    raise ParseError(f"{path} holds no cells")


def cmd_count(args) -> dict:
    grid = _grid_of(_load(args.path), args.path)
    index = {}
    classes: list[dict] = []
    from .state import canonicalize

    for r, row in enumerate(grid):
        for c, v in enumerate(row):
            key = canonicalize(v)
            if key not in index:
                index[key] = len(classes)
                classes.append({"size": 0, "cells": []})
            entry = classes[index[key]]
            entry["size"] += 1
            entry["cells"].append([r, c])
    return {"cardinality": len(classes), "classes": classes}


def cmd_relations(args) -> dict:
    a = _grid_of(_load(args.a), args.a)
    b = _grid_of(_load(args.b), args.b)
    cells_a = [v for row in a for v in row]
    cells_b = [v for row in b for v in row]
    return set_relations(cells_a, cells_b).to_json()


def cmd_gen(args) -> dict:
    gen = registry.lookup(args.name)
    obj = registry.generate(args.name, _params(args.params))
    doc = to_document(obj, name=gen.name)
    payload = {"generator": gen.name, **_summary(obj)}
    if args.out:
        write_document(args.out, doc)
        payload["out"] = args.out
    else:
        payload["document"] = doc
    return payload


def cmd_table(args) -> dict:
    rows = builder.feasibility_table(args.m)
    feasible = sum(r["feasible"] for r in rows)
    return {"m": args.m, "entries": rows, "feasible": feasible, "infeasible": len(rows) - feasible}


def cmd_generators(args) -> dict:
    return {
        name: {"params": sorted(g.params), "about": g.doc}
        for name, g in sorted(registry.GENERATORS.items())
    }


def make_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="qls", description="Exact quantum Latin squares of order 6m.")
    parser.add_argument("--human", action="store_true", help="aligned text instead of JSON")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("build", help="square of order 6m with a given cardinality")
    p.add_argument("--m", type=int)
    p.add_argument("--cardinality", type=int)
    p.add_argument("--plan", help="replay a plan file instead of planning")
    p.add_argument("--out")
    p.add_argument("--plan-out")
    check = p.add_mutually_exclusive_group()
    check.add_argument("--no-self-check", action="store_true")
    check.add_argument("--self-check", action="store_true", help="force the check above order 36")
    p.set_defaults(func=cmd_build)

    p = sub.add_parser("verify", help="orthonormality report")
    p.add_argument("path")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("count", help="phase-class census")
    p.add_argument("path")
    p.set_defaults(func=cmd_count)

    p = sub.add_parser("relations", help="common and exclusive class counts")
    p.add_argument("a")
    p.add_argument("b")
    p.set_defaults(func=cmd_relations)

    p = sub.add_parser("gen", help="emit a catalog object")
    p.add_argument("--name", required=True)
    p.add_argument("--params", nargs="*", default=[], metavar="KEY=VALUE")
    p.add_argument("--out")
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("table", help="planner outcome for every cardinality")
    p.add_argument("--m", type=int, required=True)
    p.set_defaults(func=cmd_table)

    p = sub.add_parser("generators", help="list generator names and parameters")
    p.set_defaults(func=cmd_generators)
    return parser


def _human(result: dict) -> str:
    if result["status"] != "ok":
        err = result["error"]
        return f"failed  {err['code']}: {err['message']}"
    payload = result["payload"]
    lines = []
    if isinstance(payload, dict) and "entries" in payload:
        lines.append(f"{'c':>6}  {'branch':<12} {'A':>3} {'B':>5} {'C':>4}  y1")
        for r in payload["entries"]:
            if r["feasible"]:
                lines.append(f"{r['c']:>6}  {r['branch']:<12} {r['A']:>3} {r['B']:>5} {r['C']:>4}  {r['y1']}")
            else:
                lines.append(f"{r['c']:>6}  {'-':<12} {r['error']}")
        payload = {k: v for k, v in payload.items() if k != "entries"}
    width = max((len(k) for k in payload), default=0)
    for key, value in payload.items():
        if key in ("square", "document", "classes"):
            value = f"<{len(value) if isinstance(value, list) else 'object'}>"
        elif isinstance(value, (dict, list)):
            value = dumps(value)
        lines.append(f"{key:<{width}}  {value}")
    return "\n".join(lines)


def run(argv: Sequence[str] | None = None) -> tuple[int, dict, bool]:
    """``(exit_code, result, human)`` without printing."""
    human = False
    try:
        args = make_parser().parse_args(argv)
        human = args.human
        payload = args.func(args)
        return 0, {"status": "ok", "payload": payload}, human
    except QLSError as exc:
        result = {"status": "failed", "error": {"code": exc.code, "message": str(exc)}}
        return EXIT_CODES.get(exc.code, exc.exit_code), result, human


def main(argv: Sequence[str] | None = None) -> int:
    code, result, human = run(argv)
    out = _human(result) if human else dumps(result)
    stream = sys.stdout if code == 0 else sys.stderr
    try:
        print(out, file=stream)
        stream.flush()
    except BrokenPipeError:
        # reader went away (e.g. piped into head); silence the interpreter's flush at exit
        os.dup2(os.open(os.devnull, os.O_WRONLY), stream.fileno())
    return code


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
