"""Command-line interface.

Exit codes: 0 success or pass, 1 a property failed or a counterexample was
found, 2 input error.
"""

from __future__ import annotations

import argparse
import sys
import time
from importlib import resources
from typing import Any, Callable

from . import semi
from .algebra import FuzzySoftError, FuzzySoftSet, decompose_points, format_grade
from .document import (
    SpaceDocument,
    document_for,
    dumps,
    grades_to_json,
    load,
    parse,
    serialize,
)
from .explorer import SEARCH_PROPERTIES, fuzz_theorems, gen_space, search_counterexample
from .topology import generate_from_subbasis, validate

BUNDLED_PREFIX = "bundled:"


def read_document(path: str) -> SpaceDocument:
    """Load a document from a path, or ``bundled:NAME`` for shipped examples."""
    if path.startswith(BUNDLED_PREFIX):
        name = path[len(BUNDLED_PREFIX) :]
        if not name.endswith(".json"):
            name += ".json"
        ref = resources.files("fuzzysoft") / "data" / name
        if not ref.is_file():
            raise FuzzySoftError(f"no bundled document {name!r}")
        return parse(ref.read_text(encoding="utf-8"))
    return load(path)


def compact(s: FuzzySoftSet) -> str:
    n = len(s.signature.universe)
    rows = []
    for i, e in enumerate(s.signature.parameters):
        row = s.grades[i * n : (i + 1) * n]
        rows.append(f"{e}:(" + ", ".join(format_grade(g) for g in row) + ")")
    return " ".join(rows)


class Reporter:
    """Builds reports as JSON-ready values or as indented text."""

    def __init__(self, as_json: bool, doc: SpaceDocument | None = None):
        self.as_json = as_json
        self.doc = doc

    def set(self, s: FuzzySoftSet | None) -> Any:
        if s is None:
            return None
        name = self.doc.name_of(s) if self.doc is not None else None
        if self.as_json:
            return {"name": name, "grades": grades_to_json(s)}
        return f"{compact(s)}" + (f"  [{name}]" if name else "")

    def emit(self, report: dict[str, Any]) -> None:
        if self.as_json:
            sys.stdout.write(dumps(report))
        else:
            sys.stdout.write("\n".join(_text(report, 0)) + "\n")


def _text(value: Any, depth: int) -> list[str]:
    pad = "  " * depth
    lines = []
    if isinstance(value, dict):
        for k, v in value.items():
            if isinstance(v, (dict, list)) and v:
                lines.append(f"{pad}{k}:")
                lines.extend(_text(v, depth + 1))
            else:
                lines.append(f"{pad}{k}: {_scalar(v)}")
    elif isinstance(value, list):
        for item in value:
            if isinstance(item, (dict, list)) and item:
                sub = _text(item, depth + 1)
                lines.append(f"{pad}- {sub[0].lstrip()}")
                lines.extend(sub[1:])
            else:
                lines.append(f"{pad}- {_scalar(item)}")
    else:
        lines.append(f"{pad}{_scalar(value)}")
    return lines


def _scalar(v: Any) -> str:
    if v is None:
        return "-"
    if isinstance(v, bool):
        return "yes" if v else "no"
    if v == {} or v == []:
        return "(none)"
    return str(v)


def _claims(doc: SpaceDocument, name: str, computed: dict[str, bool]) -> dict[str, Any]:
    out = {}
    for key, claimed in doc.claims.get(name, {}).items():
        if key in computed:
            out[key] = {"claimed": claimed, "computed": computed[key], "agrees": claimed == computed[key]}
    return out


def cmd_validate(args, rep: Reporter) -> int:
    doc = rep.doc
    names = list(doc.topology)
    report = validate(list(doc.topology.values()), doc.signature)
    axioms = {}
    for axiom, label in (("i", "contains phi and ambient"), ("ii", "closed under intersection"), ("iii", "closed under union")):
        hits = [v for v in report.violations if v.axiom == axiom]
        axioms[axiom] = {"statement": label, "passed": not hits, "violations": len(hits)}
    out: dict[str, Any] = {
        "passed": report.passed,
        "members": len(names),
        "distinct_members": len(set(doc.topology.values())),
        "axioms": axioms,
        "violations": [
            {
                "axiom": v.axiom,
                "witnesses": [names[i] for i in v.witnesses],
                "computed": rep.set(v.computed),
            }
            for v in report.violations
        ],
    }
    claims = _claims(doc, "topology", {"valid": report.passed})
    if claims:
        out["claims"] = claims
    rep.emit(out)
    return 0 if report.passed else 1


def cmd_classify(args, rep: Reporter) -> int:
    doc = rep.doc
    tau = doc.space()
    g = doc.lookup(args.set)
    r = semi.classify(tau, g)
    out: dict[str, Any] = {
        "set": args.set,
        "subject": rep.set(g),
        "topology_valid": tau.is_valid,
        "open": r.is_open,
        "closed": r.is_closed,
        "semiopen": {
            "definition": r.semiopen_def,
            "witness": rep.set(r.semiopen_witness),
            "characterization": r.semiopen_char,
        },
        "semiclosed": {
            "definition": r.semiclosed_def,
            "witness": rep.set(r.semiclosed_witness),
            "characterization": r.semiclosed_char,
        },
        "routes_agree": r.routes_agree,
        "certificate": {
            "interior": rep.set(r.interior),
            "closure": rep.set(r.closure),
            "closure_of_interior": rep.set(r.closure_of_interior),
            "interior_of_closure": rep.set(r.interior_of_closure),
        },
    }
    computed = {"open": r.is_open, "closed": r.is_closed, "semiopen": r.semiopen_char, "semiclosed": r.semiclosed_char}
    claims = _claims(doc, args.set, computed)
    if claims:
        out["claims"] = claims
    rep.emit(out)
    return 0


OPERATORS: dict[str, tuple[str, Callable]] = {
    "int": ("interior", lambda tau, g: tau.interior(g)),
    "cl": ("closure", lambda tau, g: tau.closure(g)),
    "sint": ("semi-interior", semi.fssint),
    "scl": ("semi-closure", semi.fsscl),
}


def cmd_operator(args, rep: Reporter) -> int:
    doc = rep.doc
    tau = doc.space()
    g = doc.lookup(args.set)
    label, op = OPERATORS[args.command]
    rep.emit({"operation": label, "set": args.set, "topology_valid": tau.is_valid, "result": rep.set(op(tau, g))})
    return 0


def _verdicts(verdicts, rep: Reporter) -> list[dict[str, Any]]:
    out = []
    for v in verdicts:
        item: dict[str, Any] = {"item": v.item, "status": v.status, "statement": v.statement}
        if v.status == "fail":
            item["left"] = _side(v.left, rep)
            item["right"] = _side(v.right, rep)
        out.append(item)
    return out


def _side(value, rep: Reporter):
    if isinstance(value, FuzzySoftSet):
        return rep.set(value)
    if isinstance(value, tuple):
        return [_side(x, rep) for x in value]
    return value


def cmd_properties(args, rep: Reporter) -> int:
    doc = rep.doc
    tau = doc.space()
    g, k = doc.lookup(args.g), doc.lookup(args.k)
    verdicts = semi.property_suite(tau, g, k)
    passed = all(v.ok for v in verdicts)
    rep.emit(
        {
            "g": args.g,
            "k": args.k,
            "topology_valid": tau.is_valid,
            "passed": passed,
            "items": _verdicts(verdicts, rep),
            "supplement": _verdicts(semi.property_supplement(tau, g, k), rep),
        }
    )
    return 0 if passed else 1


def cmd_points(args, rep: Reporter) -> int:
    doc = rep.doc
    tau = doc.space()
    g = doc.lookup(args.set)
    points = [
        {"parameter": p.parameter, "membership": dict(zip(doc.signature.universe, map(format_grade, p.membership)))}
        for p in decompose_points(g)
    ]
    holds = semi.point_characterization_check(tau, g)
    rep.emit(
        {
            "set": args.set,
            "topology_valid": tau.is_valid,
            "points": points,
            "semiopen": semi.is_semiopen(tau, g),
            "characterization_holds": holds,
        }
    )
    return 0 if holds else 1


def cmd_search(args, rep: Reporter) -> int:
    outcome = search_counterexample(
        args.property,
        args.budget,
        args.seed,
        grid=args.grid,
        n_objects=args.objects,
        n_parameters=args.parameters,
        max_subbasis=args.max_subbasis,
    )
    rep.emit(outcome.to_dict())
    return 1 if outcome.status == "found" else 0


def cmd_fuzz(args, rep: Reporter) -> int:
    start = time.perf_counter()
    report = fuzz_theorems(
        args.seed,
        args.samples,
        max_objects=args.max_objects,
        max_parameters=args.max_parameters,
        max_denominator=args.max_denominator,
        max_subbasis=args.max_subbasis,
        sets_per_space=args.sets_per_space,
    )
    elapsed = time.perf_counter() - start
    out = report.to_dict()
    if not rep.as_json:
        out.pop("failures")
        out["failed_checks"] = report.failed_checks()
    rep.emit(out)
    print(f"elapsed: {elapsed:.2f}s", file=sys.stderr)
    return 0 if report.passed else 1


def cmd_gen(args, rep: Reporter) -> int:
    _, tau = gen_space(args.seed, args.objects, args.parameters, args.grid, args.subbasis)
    sys.stdout.write(serialize(document_for(tau)))
    return 0


def cmd_repair(args, rep: Reporter) -> int:
    doc = rep.doc
    tau = generate_from_subbasis(list(doc.topology.values()), doc.signature)
    named: dict[FuzzySoftSet, str] = {}
    for name, s in doc.topology.items():
        named.setdefault(s, name)
    members = {}
    fresh = 0
    for h in tau.opens:
        if h in named:
            members[named[h]] = h
        else:
            fresh += 1
            members[f"J{fresh}"] = h
    sys.stdout.write(serialize(SpaceDocument(doc.signature, members, dict(doc.sets))))
    return 0


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", default=argparse.SUPPRESS, help="machine-readable output")

    parser = argparse.ArgumentParser(prog="fuzzysoft", description="Fuzzy soft topology toolkit", parents=[common])
    sub = parser.add_subparsers(dest="command", required=True, metavar="COMMAND")

    def add(name, func, help_text):
        p = sub.add_parser(name, parents=[common], help=help_text)
        p.set_defaults(func=func)
        return p

    add("validate", cmd_validate, "check the topology axioms").add_argument("file")
    p = add("classify", cmd_classify, "semiopen/semiclosed classification by both routes")
    p.add_argument("file")
    p.add_argument("set")
    for name, (label, _) in OPERATORS.items():
        p = add(name, cmd_operator, label)
        p.add_argument("file")
        p.add_argument("set")
    p = add("properties", cmd_properties, "the fourteen semi-closure/semi-interior properties")
    p.add_argument("file")
    p.add_argument("g")
    p.add_argument("k")
    p = add("points", cmd_points, "point decomposition and point characterization")
    p.add_argument("file")
    p.add_argument("set")

    p = add("search", cmd_search, "counterexample search")
    p.add_argument("property", choices=SEARCH_PROPERTIES)
    p.add_argument("--budget", type=int, default=100)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--grid", type=int, default=None, help="grid denominator (default depends on the property)")
    p.add_argument("--objects", type=int, default=3)
    p.add_argument("--parameters", type=int, default=1)
    p.add_argument("--max-subbasis", type=int, default=3)

    p = add("fuzz", cmd_fuzz, "fuzz every theorem")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--samples", type=int, default=1000)
    p.add_argument("--max-objects", type=int, default=3)
    p.add_argument("--max-parameters", type=int, default=2)
    p.add_argument("--max-denominator", type=int, default=4)
    p.add_argument("--max-subbasis", type=int, default=3)
    p.add_argument("--sets-per-space", type=int, default=10)

    p = add("gen", cmd_gen, "emit a random space document")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--objects", type=int, default=3)
    p.add_argument("--parameters", type=int, default=2)
    p.add_argument("--grid", type=int, default=4)
    p.add_argument("--subbasis", type=int, default=4)

    add("repair", cmd_repair, "emit the smallest topology containing the file's members").add_argument("file")
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    as_json = getattr(args, "json", False)
    try:
        doc = read_document(args.file) if hasattr(args, "file") else None
        return args.func(args, Reporter(as_json, doc))
    except (FuzzySoftError, OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
