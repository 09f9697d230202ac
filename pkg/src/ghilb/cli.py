"""Command-line front end.

Exit codes: 0 success, 2 invalid group spec or bound, 3 Gorenstein-only
analysis requested for a non-Gorenstein group, 4 internal verification
failure (details printed as a structured report).
"""

from __future__ import annotations

import argparse
import json
import sys

from .errors import FanVerificationError, GroupParseError, OrderLimitError
from .groups import (
    GroupSpec,
    heuristic_4d,
    junior_elements,
    parse_group,
    stringy_euler,
)
from .hilb import build_fan, hexagon_census
from .mckay import analysis, mckay_table
from .monomials import monomial_str
from .oracle import oracle_check
from .report import (
    fan_to_dict,
    info_to_dict,
    mckay_to_dict,
    surface_to_dict,
    verify_all,
)
from .surface import resolve_surface
from .svg import emit_svg


def _parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--max-order", type=int, default=200, help="group order bound")
    common.add_argument("--quiet", action="store_true", help="suppress the report table")
    p = argparse.ArgumentParser(
        prog="ghilb",
        description="Exact toric resolutions of abelian quotient singularities "
        "with character labelling of the exceptional locus.",
    )
    sub = p.add_subparsers(dest="command", required=True)

    sub.add_parser("info", help="group facts", parents=[common]).add_argument("group")
    sp = sub.add_parser(
        "surface", help="minimal resolution of 1/r(1,q), n = 2", parents=[common]
    )
    sp.add_argument("group")
    sp.add_argument("--json", dest="json_path")
    for name, helptext in (
        ("resolve", "build and verify the 3D fan"),
        ("mckay", "full character labelling of the resolution"),
    ):
        sp = sub.add_parser(name, help=helptext, parents=[common])
        sp.add_argument("group")
        sp.add_argument("--json", dest="json_path")
        sp.add_argument("--svg", dest="svg_path")
    sub.add_parser(
        "oracle", help="brute-force cross-checks", parents=[common]
    ).add_argument("group")
    hp = sub.add_parser(
        "heuristic4d", help="probe the family 1/r(1,1,1,r-3)", parents=[common]
    )
    hp.add_argument("--r", type=int, required=True)
    return p


def _emit(args, text: str) -> None:
    if not args.quiet:
        print(text)


def _write(path, text: str) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(text)


def _load_group(args) -> GroupSpec:
    return parse_group(args.group)


def _cmd_info(args) -> int:
    group = _load_group(args)
    d = info_to_dict(group)
    _emit(args, f"group       {d['group']}")
    _emit(args, f"order       {d['order']}   exponent {d['exponent']}")
    _emit(args, f"gorenstein  {d['gorenstein']}")
    se = stringy_euler(group)
    flag = "  [stratified formula not implemented]" if se.flagged else ""
    _emit(args, f"stringy e   {se.count}{flag}")
    if group.is_gorenstein():
        juniors = junior_elements(group)
        _emit(args, f"juniors     {len(juniors)}")
    return 0


def _cmd_surface(args) -> int:
    group = _load_group(args)
    if group.n != 2:
        print("surface analysis needs a 2-dimensional group", file=sys.stderr)
        return 2
    r, weights = group.generators[0]
    if len(group.generators) != 1 or weights[0] != 1:
        print("surface analysis needs a cyclic group 1/r(1,q)", file=sys.stderr)
        return 2
    res = resolve_surface(r, weights[1])
    _emit(args, f"continued fraction {r}/{weights[1]} = {list(res.continued_fraction.terms)}")
    for i, c in enumerate(res.curves, 1):
        _emit(
            args,
            f"E{i}  ray {c.ray}  self-intersection {c.self_intersection}  "
            f"ratio {c.ratio_str()}  character {_label(group, c.character)}",
        )
    for i, ch in enumerate(res.charts):
        _emit(args, f"chart {i}: {ch}")
    if args.json_path:
        _write(args.json_path, json.dumps(surface_to_dict(res), indent=2) + "\n")
    return 0


def _label(group, char) -> str:
    return group.character_label(char)


def _cmd_resolve(args) -> int:
    group = _load_group(args)
    if group.n != 3:
        print("resolve needs a 3-dimensional group", file=sys.stderr)
        return 2
    fan = build_fan(group, max_order=args.max_order)
    _emit(args, f"fan of {group.spec_string()}: {len(fan.cones)} cones, "
          f"{len(fan.vertices)} rays, {len(fan.interior_edges())} compact curves")
    for w in fan.warnings:
        _emit(args, f"warning: {w}")
    report = verify_all(group, max_order=args.max_order)
    for c in report.checks:
        _emit(args, f"  [{'pass' if c.passed else 'FAIL'}] {c.name}: {c.detail}")
    if args.json_path:
        _write(args.json_path, json.dumps(fan_to_dict(fan), indent=2) + "\n")
    if args.svg_path:
        _write(args.svg_path, emit_svg(fan))
    return 0 if report.passed else 4


def _cmd_mckay(args) -> int:
    group = _load_group(args)
    if group.n != 3:
        print("mckay needs a 3-dimensional group", file=sys.stderr)
        return 2
    if not group.is_gorenstein():
        print(
            "mckay labelling needs a Gorenstein (SL) group; "
            f"{group.spec_string()} is not",
            file=sys.stderr,
        )
        return 3
    fan = build_fan(group, max_order=args.max_order)
    ana = analysis(fan)
    _emit(args, f"McKay correspondence for {group.spec_string()}")
    for i in fan.interior_edges():
        lab = ana.label(i)
        a, b = (fan.vertices[v] for v in fan.edges[i].rays)
        _emit(args, f"  curve {a} -- {b}: {lab.ratio_str()}  character {_label(group, lab.character)}")
    for s in ana.hexagons():
        rel = s.relation
        e_t = ", ".join(_label(group, c) for c in rel.e_chars)
        f_t = ", ".join(_label(group, c) for c in rel.f_chars)
        _emit(args, f"  hexagon at {s.point}: e = ({e_t}), f = ({f_t}), c2 = {s.c2_value}")
    for row in mckay_table(fan):
        if row.role in ("non-active", "trivial"):
            _emit(args, f"  character {row.label}: {row.role}")
    if args.json_path:
        _write(args.json_path, json.dumps(mckay_to_dict(fan), indent=2) + "\n")
    if args.svg_path:
        _write(args.svg_path, emit_svg(fan, labels=True))
    return 0


def _cmd_oracle(args) -> int:
    group = _load_group(args)
    if group.n == 2:
        report = verify_all(group, max_order=args.max_order)
        for c in report.checks:
            _emit(args, f"  [{'pass' if c.passed else 'FAIL'}] {c.name}: {c.detail}")
        return 0 if report.passed else 4
    report = oracle_check(group, max_order=args.max_order)
    for c in report.checks:
        _emit(args, f"  [{'pass' if c.passed else 'FAIL'}] {c.name}: {c.detail}")
    return 0 if report.passed else 4


def _cmd_heuristic4d(args) -> int:
    h = heuristic_4d(args.r)
    _emit(
        args,
        f"1/{args.r}(1,1,1,{args.r - 3}): juniors {h.junior_count}, "
        f"basic {h.basic}, predicts crepant {h.heuristic_predicts}",
    )
    return 0


_COMMANDS = {
    "info": _cmd_info,
    "surface": _cmd_surface,
    "resolve": _cmd_resolve,
    "mckay": _cmd_mckay,
    "oracle": _cmd_oracle,
    "heuristic4d": _cmd_heuristic4d,
}


def main(argv=None) -> int:
    args = _parser().parse_args(argv)
    try:
        return _COMMANDS[args.command](args)
    except (GroupParseError, OrderLimitError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except FanVerificationError as exc:
        print(f"verification failure: {exc}", file=sys.stderr)
        for line in exc.report:
            print(f"  - {line}", file=sys.stderr)
        return 4


if __name__ == "__main__":
    sys.exit(main())
