"""Command-line front end: ``semidual <command> ...``.

Exit codes: 0 for success (and an Unknown verdict), 10 when ``analyze``
finds the input inherently nondualisable, 2 for usage or input errors.
"""
from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import census as census_mod
from .catalog import catalog, catalog_names
from .classify import Status, classify
from .core import FiniteSemigroup, parse_table_text
from .errors import SemidualError
from .icprobe import BUILTIN_EGOS, DEFAULT_BUDGET as PROBE_BUDGET, ic_probe
from .plane import (DEFAULT_BUDGET, TemplateMode, build_plane, closure, closure_report,
                    derive_template_nilpotent, find_template_commutator, find_template_raw,
                    ghost, ghost_membership, ind_bookkeeping_check, line_generators,
                    nilpotent_pair)
from .rees import as_group

EXIT_OK, EXIT_USAGE, EXIT_IND = 0, 2, 10


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def load_input(ref: str) -> tuple[str, FiniteSemigroup]:
    if ref.startswith("catalog:"):
        entry = catalog(ref.split(":", 1)[1])
        return entry.name, entry.semigroup
    path = Path(ref)
    if not path.is_file():
        raise UsageError(f"no such file: {ref}")
    return path.name, parse_table_text(path.read_text())


def _emit(args, payload, text):
    if args.json:
        print(json.dumps(payload, indent=2, default=str))
    else:
        print(text)


def cmd_analyze(args) -> int:
    name, s = load_input(args.input)
    verdict = classify(s)
    payload = verdict.to_json(name, s)
    lines = [f"{name}: {verdict.status.value}"]
    lines += [f"  {h.criterion_id}: {h.citation}" for h in verdict.fired_criteria]
    lines += [f"  note: {n}" for n in verdict.notes]
    _emit(args, payload, "\n".join(lines))
    return EXIT_IND if verdict.status is Status.IND else EXIT_OK


def _template_for(mode: TemplateMode, host: FiniteSemigroup):
    if mode is TemplateMode.RAW:
        tpl = find_template_raw(host)
        if tpl is None:
            raise UsageError("host has no raw template")
        return tpl, {}
    if mode is TemplateMode.COMMUTATOR:
        tpl = find_template_commutator(as_group(host))
        if tpl is None:
            raise UsageError("group is abelian; no commutator template")
        return tpl, {}
    pair = nilpotent_pair(host)
    if pair is None:
        raise UsageError("no pair of elements generates a 3-nilpotent quotient")
    der = derive_template_nilpotent(host, *pair)
    return der.template, {"u": host.label(der.u), "u_word": der.u_word, "v": host.label(der.v)}


def cmd_witness(args) -> int:
    name, host = load_input(args.input)
    mode = TemplateMode(args.mode)
    plane = build_plane(args.q)
    tpl, extra = _template_for(mode, host)
    result = closure(host, line_generators(host, tpl, plane), mode, args.budget)
    member, chain = ghost_membership(result, ghost(tpl, plane))
    payload = closure_report(args.q, name, host, tpl, result, member, args.budget)
    payload.update(extra)
    if chain is not None:
        payload["ghost_derivation_steps"] = len(chain)
    if mode is not TemplateMode.COMMUTATOR and plane.n_points > host.order + 2:
        try:
            book = ind_bookkeeping_check(result, tpl, plane, host.order)
            payload["bookkeeping"] = {"threshold": book.threshold, "passed": book.passed,
                                      "coordinates": book.coordinates_checked}
        except ValueError as exc:
            payload["bookkeeping"] = {"passed": False, "reason": str(exc)}
    text = (f"{name} over PG(2,{args.q}), {mode.value} template: "
            f"{result.generator_count} generators, {result.member_count} members, "
            f"ghost {'IN' if member else 'not in'} closure")
    if "bookkeeping" in payload:
        text += f"; bookkeeping {'passed' if payload['bookkeeping']['passed'] else 'failed'}"
    _emit(args, payload, text)
    return EXIT_OK


def cmd_census(args) -> int:
    rec = census_mod.census(args.n, unbounded=args.unbounded)
    if args.csv:
        print(census_mod.CSV_HEADER)
        print(rec.csv_row())
    else:
        _emit(args, rec.to_json(),
              f"n={rec.n}: {rec.labeled_associative_count} labeled, {rec.iso_class_count} classes, "
              f"proper 3-nilpotent {rec.proper_3_nilpotent_fraction:.4f}, "
              f"flagged {rec.ind_flagged_fraction:.4f} ({rec.runtime:.2f}s)")
    return EXIT_OK


def cmd_ic_probe(args) -> int:
    name, s = load_input(args.input)
    if name not in BUILTIN_EGOS:
        raise UsageError(f"no built-in alter ego for {name}; available: {', '.join(BUILTIN_EGOS)}")
    rep = ic_probe(s, BUILTIN_EGOS[name](), args.arity, sampled=args.sampled,
                   budget=args.budget or PROBE_BUDGET, target_name=name)
    text = (f"{name} arity {rep.arity}: {rep.substructures} substructures, {rep.morphisms} morphisms, "
            f"{'all extend' if rep.all_extend else 'counterexample found'}"
            + ("" if rep.exhaustive else " (non-exhaustive)"))
    _emit(args, rep.to_json(), text)
    return EXIT_OK


def cmd_catalog(args) -> int:
    names = catalog_names()
    if args.json:
        print(json.dumps([{"name": n, "provenance": catalog(n).provenance} for n in names], indent=2))
    else:
        for n in names:
            print(n)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    # SUPPRESS keeps a flag given before the subcommand from being reset after it
    common.add_argument("--json", action="store_true", default=argparse.SUPPRESS,
                        help="machine-readable output")
    common.add_argument("--budget", type=int, default=argparse.SUPPRESS,
                        help="member cap for closures and probes")
    common.add_argument("--seed", default=argparse.SUPPRESS, help=argparse.SUPPRESS)

    p = _Parser(prog="semidual", parents=[common],
                description="Finite semigroup structure and nondualisability checks.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    a = sub.add_parser("analyze", parents=[common], help="classify a table file or catalog:NAME")
    a.add_argument("input")
    a.set_defaults(func=cmd_analyze)

    w = sub.add_parser("witness", parents=[common], help="run the plane construction on a host")
    w.add_argument("input")
    w.add_argument("--q", type=int, required=True)
    w.add_argument("--mode", choices=[m.value for m in TemplateMode], default="raw")
    w.set_defaults(func=cmd_witness)

    c = sub.add_parser("census", parents=[common], help="enumerate and classify order-n semigroups")
    c.add_argument("n", type=int)
    c.add_argument("--unbounded", action="store_true", help="allow n = 5 (slow)")
    c.add_argument("--csv", action="store_true")
    c.set_defaults(func=cmd_census)

    i = sub.add_parser("ic-probe", parents=[common], help="interpolation probe with a built-in alter ego")
    i.add_argument("input")
    i.add_argument("--arity", type=int, required=True)
    i.add_argument("--sampled", action="store_true", help="non-exhaustive mode, needed above arity 2")
    i.set_defaults(func=cmd_ic_probe)

    g = sub.add_parser("catalog", parents=[common], help="list named semigroups")
    g.add_argument("--list", action="store_true")
    g.set_defaults(func=cmd_catalog)
    return p


def cli_main(argv=None) -> int:
    try:
        args = build_parser().parse_args(argv)
        if hasattr(args, "seed"):
            raise UsageError("--seed is not accepted: every command is deterministic")
        args.json = getattr(args, "json", False)
        args.budget = getattr(args, "budget", None)
        if args.command == "witness" and args.budget is None:
            args.budget = DEFAULT_BUDGET
        return args.func(args)
    except UsageError as exc:
        print(f"semidual: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (SemidualError, ValueError) as exc:
        print(f"semidual: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


def main() -> None:
    sys.exit(cli_main())
