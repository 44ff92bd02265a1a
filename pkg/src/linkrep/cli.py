"""Command-line interface.

Subcommands: check, search, obstruct, bundle, canon.  Reports are JSON on
stdout with exact integers and exact rational strings (never floats);
diagnostics go to stderr as JSON; exit codes: 0 success, 1 failed
check/search/obstruction, 2 parse or validation errors.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import sys
from fractions import Fraction
from pathlib import Path
from typing import Dict, List, Optional

from .conditions import (
    ConditionReport,
    Decoration,
    DecorationError,
    ensure_total,
    run_all_checks,
)
from .diagram import DiagramError, SingularLinkDiagram, betti, components, validate
from .field import format_scalar
from .obstructions import (
    ObstructionReport,
    bundle_profile,
    connected_sum_obstruction,
    divisibility_obstruction,
    pontryagin_square_diag,
)
from .rotation import RotationElement, preset_group, rotation_to_perm
from .search import (
    SearchOptions,
    StructuralConditionError,
    canonical_class,
    count_classes,
    enumerate_valid_decorations,
)
from .sldfile import SldDocument, SldParseError, parse, serialize


def _fail(message: str, code: int) -> int:
    print(json.dumps({"error": message}), file=sys.stderr)
    return code


def _frac(f: Fraction) -> str:
    return str(f.numerator) if f.denominator == 1 else f"{f.numerator}/{f.denominator}"


def _element_json(g: RotationElement) -> Dict:
    perm = rotation_to_perm(g)
    if perm is not None:
        return {"perm": perm.cycle_str()}
    return {"matrix": [format_scalar(e) for row in g.m.rows for e in row]}


def _checks_json(report: ConditionReport) -> Dict:
    return {
        c.name: {"passed": c.passed, "diagnostics": list(c.diagnostics)}
        for c in (report.genus0, report.selfint, report.relators, report.sw)
    }


def _obstruction_json(rep: ObstructionReport) -> Dict:
    out = {
        "psq": rep.psq,
        "divisibility_pass": rep.divisibility_pass,
        "hurewicz_flag": rep.hurewicz_flag,
    }
    if rep.summand_verdicts is not None:
        out["summand_verdicts"] = [
            {"b2": b, "passed": ok} for b, ok in rep.summand_verdicts
        ]
    return out


def _load_document(path: str) -> SldDocument:
    text = Path(path).read_text(encoding="utf-8")
    return parse(text)


def _report_skeleton() -> Dict:
    return {
        "wellformed": None,
        "b1": None,
        "b2": None,
        "components": None,
        "checks": None,
        "obstructions": None,
        "search": None,
        "diagnostics": [],
    }


def _diagram_obstructions(b2: int) -> Dict:
    if b2 == 0:
        return {"psq": None, "b2_mod4": 0, "verdict": True}
    return {
        "psq": pontryagin_square_diag([1] * b2),
        "b2_mod4": b2 % 4,
        "verdict": b2 % 4 == 0,
    }


def cmd_check(args) -> int:
    try:
        doc = _load_document(args.file)
    except (OSError, SldParseError) as exc:
        return _fail(str(exc), 2)
    d = doc.diagram()
    report = _report_skeleton()
    violations = validate(d)
    report["wellformed"] = not violations
    report["diagnostics"] = list(violations)
    if violations:
        print(json.dumps(report, indent=2))
        return _fail("diagram is not well-formed", 2)
    dec = doc.decoration()
    if dec is None:
        return _fail("check requires a decorated diagram", 2)
    try:
        ensure_total(d, dec)
    except DecorationError as exc:
        return _fail(str(exc), 2)
    checks = run_all_checks(d, dec, exhaustive_paths=args.all_sw_paths)
    report["checks"] = _checks_json(checks)
    report["components"] = [list(b) for b in components(d).blocks]
    if checks.selfint.passed:
        b1, b2 = betti(d)
        report["b1"], report["b2"] = b1, b2
    else:
        report["b2"] = d.n_hopf
    report["obstructions"] = _diagram_obstructions(d.n_hopf)
    print(json.dumps(report, indent=2))
    return 0 if checks.passed else 1


def _options_digest(doc: SldDocument, opts_desc: Dict) -> str:
    payload = serialize(doc) + json.dumps(opts_desc, sort_keys=True)
    return hashlib.sha256(payload.encode("utf-8")).hexdigest()


def cmd_search(args) -> int:
    try:
        doc = _load_document(args.file)
    except (OSError, SldParseError) as exc:
        return _fail(str(exc), 2)
    d = doc.diagram()
    violations = validate(d)
    if violations:
        return _fail("; ".join(violations), 2)
    group_name = args.group or doc.group_name() or "octahedral"
    try:
        group = preset_group(group_name)
    except ValueError as exc:
        return _fail(str(exc), 2)
    opts = SearchOptions(
        group=group,
        involutions_only_on_hopfs=not args.any_hopf_elements,
        exhaustive_sw_paths=args.all_sw_paths,
        dedup=args.dedup,
    )
    opts_desc = {
        "group": group_name,
        "involutions_only_on_hopfs": opts.involutions_only_on_hopfs,
        "exhaustive_sw_paths": opts.exhaustive_sw_paths,
        "dedup": opts.dedup,
    }

    cache_file = None
    if args.cache:
        cache_dir = Path(args.cache)
        cache_dir.mkdir(parents=True, exist_ok=True)
        cache_file = cache_dir / f"{_options_digest(doc, opts_desc)}.json"
        if cache_file.exists():
            cached = json.loads(cache_file.read_text(encoding="utf-8"))
            print(json.dumps(cached, indent=2))
            return 0 if cached["search"]["raw_solutions"] > 0 else 1

    try:
        solutions = enumerate_valid_decorations(d, opts)
    except StructuralConditionError as exc:
        return _fail(str(exc), 1)
    classes = count_classes(solutions, list(d.hopfs), opts)
    report = _report_skeleton()
    report["wellformed"] = True
    report["components"] = [list(b) for b in components(d).blocks]
    try:
        report["b1"], report["b2"] = betti(d)
    except DiagramError:
        report["b2"] = d.n_hopf
    report["obstructions"] = _diagram_obstructions(d.n_hopf)
    report["search"] = {
        "raw_solutions": len(solutions),
        "classes": classes,
        "solutions": [
            {node: _element_json(g) for node, g in dec.mapping} for dec in solutions
        ],
    }
    if cache_file is not None:
        cache_file.write_text(json.dumps(report), encoding="utf-8")
    print(json.dumps(report, indent=2))
    return 0 if solutions else 1


def cmd_obstruct(args) -> int:
    if args.b2 is None and args.summands is None:
        return _fail("obstruct requires --b2 and/or --summands", 2)
    out = {}
    passed = True
    try:
        if args.b2 is not None:
            rep = divisibility_obstruction(args.b2)
            out["b2"] = _obstruction_json(rep)
            passed = passed and rep.divisibility_pass
        if args.summands is not None:
            summands = [int(t) for t in args.summands.split(",") if t != ""]
            rep = connected_sum_obstruction(summands)
            out["connected_sum"] = _obstruction_json(rep)
            passed = passed and rep.divisibility_pass
    except ValueError as exc:
        return _fail(str(exc), 2)
    out["verdict"] = "pass" if passed else "fail"
    print(json.dumps(out, indent=2))
    return 0 if passed else 1


def cmd_bundle(args) -> int:
    try:
        profile = bundle_profile(args.b1, args.b2, args.c2)
    except ValueError as exc:
        return _fail(str(exc), 2)
    out = {
        "b1": profile.b1,
        "b2": profile.b2,
        "c2": profile.c2,
        "c1sq": profile.c1sq,
        "p1": profile.p1,
        "energy": _frac(profile.energy),
        "compact": profile.compact,
        "flat": profile.flat,
        "irreducible_locked": profile.irreducible_locked,
        "d": profile.d,
    }
    print(json.dumps(out, indent=2))
    return 0


def cmd_canon(args) -> int:
    try:
        doc = _load_document(args.file)
    except (OSError, SldParseError) as exc:
        return _fail(str(exc), 2)
    d = doc.diagram()
    violations = validate(d)
    if violations:
        return _fail("; ".join(violations), 2)
    dec = doc.decoration()
    if dec is None:
        return _fail("canon requires a decorated diagram", 2)
    try:
        elements = [dec[h] for h in d.hopfs]
        key = canonical_class(elements)
    except (DecorationError, ValueError) as exc:
        return _fail(str(exc), 2)
    out = {
        "hopf_order": list(d.hopfs),
        "size": key.size,
        "cos_squared": [format_scalar(c) for c in key.cos_squared],
        "gram_signs": list(key.gram_signs),
        "triple_signs": list(key.triple_signs),
    }
    print(json.dumps(out, indent=2))
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="linkrep",
        description="Exact checks, searches and obstruction calculus for "
        "decorated singular link diagrams.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("check", help="run the four condition checks on a diagram")
    p.add_argument("file")
    p.add_argument("--all-sw-paths", action="store_true")
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("search", help="enumerate valid decorations")
    p.add_argument("file")
    p.add_argument("--group", choices=("tetrahedral", "octahedral", "icosahedral"))
    p.add_argument(
        "--dedup",
        choices=("none", "group_conjugacy", "so3_canonical"),
        default="so3_canonical",
    )
    p.add_argument("--all-sw-paths", action="store_true")
    p.add_argument(
        "--any-hopf-elements",
        action="store_true",
        help="lift the pi-rotation restriction on Hopf decorations",
    )
    p.add_argument("--cache", help="directory for content-hash keyed result reuse")
    p.set_defaults(func=cmd_search)

    p = sub.add_parser("obstruct", help="mod-4 divisibility obstructions")
    p.add_argument("--b2", type=int)
    p.add_argument("--summands", help="comma-separated b2 values of summands")
    p.set_defaults(func=cmd_obstruct)

    p = sub.add_parser("bundle", help="bundle profile from (b1, b2, c2)")
    p.add_argument("--b1", type=int, required=True)
    p.add_argument("--b2", type=int, required=True)
    p.add_argument("--c2", type=int, required=True)
    p.set_defaults(func=cmd_bundle)

    p = sub.add_parser("canon", help="conjugacy key of the decorated Hopf tuple")
    p.add_argument("file")
    p.set_defaults(func=cmd_canon)

    return parser


def main(argv: Optional[List[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
