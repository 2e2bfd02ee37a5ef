"""``hodgelab`` command-line front end.

Exit status: 0 on success, 1 when a verification or embedded check fails,
2 on invalid input (malformed JSON, schema violations, capacity guards).
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
from typing import Sequence

from . import __version__, repro
from .covers import building_degrees, eigentable, genus, inverted, pardini_check
from .errors import CapacityError, HodgelabError, InputError
from .remainders import lambda_profile, verify_bound
from .serialization import cover_from_json, load_json, product_from_json
from .torelli import double_torelli_hypothesis, freeness_check, hodge_summary, torelli_report

EXIT_OK, EXIT_FAIL, EXIT_INPUT = 0, 1, 2


def _int_range(text: str) -> list[int]:
    """``"4"`` or ``"2..6"`` (inclusive)."""
    try:
        if ".." in text:
            lo, hi = text.split("..", 1)
            values = list(range(int(lo), int(hi) + 1))
        else:
            values = [int(text)]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected N or LO..HI, got {text!r}") from None
    if not values:
        raise argparse.ArgumentTypeError(f"empty range {text!r}")
    return values


def _emit(fmt: str, payload: dict, markdown: str) -> None:
    if fmt == "json":
        print(json.dumps(payload, indent=2, sort_keys=True))
    else:
        print(markdown)


def _md_kv(title: str, items: dict) -> str:
    lines = [f"# {title}", "", "| quantity | value |", "|---|---|"]
    lines += [f"| {k} | {v} |" for k, v in items.items()]
    return "\n".join(lines)


def cmd_genus(args) -> int:
    spec = cover_from_json(load_json(args.spec))
    g = genus(spec)
    _emit(args.format, {"genus": g, "group": spec.group.to_json(), "quotient_genus": spec.quotient_genus},
          _md_kv("genus", {"group": spec.group, "quotient genus": spec.quotient_genus,
                           "branch points": len(spec.branch), "genus": g}))
    return EXIT_OK


def cmd_eigentable(args) -> int:
    spec = cover_from_json(load_json(args.spec))
    table = eigentable(spec)
    if args.invert:
        table = inverted(table)
    lines = [f"# eigenspace dimensions of {spec.group}, genus {table.genus}", "",
             "| character | dim |", "|---|---|"]
    lines += [f"| {list(chi)} | {n} |" for chi, n in sorted(table.dims.items())]
    _emit(args.format, table.to_json(), "\n".join(lines))
    return EXIT_OK


def cmd_hodge(args) -> int:
    ps = product_from_json(load_json(args.spec))
    hs = hodge_summary(ps)
    _emit(args.format, hs.to_json(), _md_kv("Hodge numbers", hs.to_json()))
    return EXIT_OK


def cmd_torelli(args) -> int:
    ps = product_from_json(load_json(args.spec))
    rep = torelli_report(ps, exact=args.exact)
    hyp = double_torelli_hypothesis(ps)
    payload = {**rep.to_json(), "double_torelli_hypothesis": [h.to_json() for h in hyp]}
    lines = ["# infinitesimal Torelli", "",
             "| factor | admissible | image bound | exact rank | target | verdict |", "|---|---|---|---|---|---|"]
    for f in rep.factors:
        rank = "" if f.exact_rank is None else f.exact_rank
        lines.append(f"| {f.factor} | {len(f.admissible)} | {f.image_bound} | {rank} | {f.target} | {f.verdict.value} |")
    lines += ["", f"kernel lower bound: {rep.kernel_lower_bound}", "",
              "| factor | q | Sym^2 source | target | dPhi1 verdict |", "|---|---|---|---|---|"]
    lines += [f"| {d.factor} | {d.q} | {d.source} | {d.target} | {d.verdict.value} |" for d in rep.dphi1]
    lines += ["", "| factor | double Torelli hypothesis | reason |", "|---|---|---|"]
    lines += [f"| {h.factor} | {h.status.value} | {h.reason} |" for h in hyp]
    lines += [f"\nwarning (factor {f.factor}): {f.warning}" for f in rep.factors if f.warning]
    _emit(args.format, payload, "\n".join(lines))
    return EXIT_OK


def cmd_freeness(args) -> int:
    ps = product_from_json(load_json(args.spec))
    free, witness = freeness_check(ps)
    _emit(args.format, {"free": free, "witness": list(witness) if witness else None},
          _md_kv("freeness", {"free": free, "witness": list(witness) if witness else "-"}))
    return EXIT_OK


def cmd_remainder_verify(args) -> int:
    rep = verify_bound(args.d_max, args.r or [4], jobs=args.jobs)
    md = _md_kv("remainder-sum bound", {
        "d_max": rep.d_max, "r": rep.r_values, "checked": rep.checked, "violations": len(rep.violations),
        "skipped r": rep.skipped_r or "-", "wall time (ms)": rep.wall_time_ms,
    })
    if rep.violations:
        md += "\n\n" + "\n".join(f"- d = {v['d']}, m = {v['m']}: {v['count_ones']} ones" for v in rep.violations)
    _emit(args.format, rep.to_json(), md)
    return EXIT_OK if rep.ok else EXIT_FAIL


def cmd_remainder_profile(args) -> int:
    prof = lambda_profile(args.d, args.m)
    md = "\n".join([
        f"# lambda profile, d = {prof.d}, m = {list(prof.m)}", "",
        "| i | lambda(i) |", "|---|---|",
        *[f"| {i} | {v} |" for i, v in enumerate(prof.lambdas, start=1)],
        "", f"ones: {prof.count_ones}",
    ])
    _emit(args.format, prof.to_json(), md)
    return EXIT_OK


def cmd_pardini_check(args) -> int:
    spec = cover_from_json(load_json(args.spec))
    bd = building_degrees(spec)
    ok, violations = pardini_check(bd)
    md = "\n".join([
        "# building data", "", "| character | L degree |", "|---|---|",
        *[f"| {list(c)} | {n} |" for c, n in sorted(bd.L_degrees.items())],
        "", f"equivalences: {'all hold' if ok else f'{len(violations)} violated'}",
    ])
    _emit(args.format, {**bd.to_json(), "ok": ok, "violations": violations}, md)
    return EXIT_OK if ok else EXIT_FAIL


def cmd_repro(args) -> int:
    target = args.target
    if target == "k-family-dims":
        result = repro.k_family_dims(args.k or range(2, 7))
    elif target == "section5-tables":
        cases = None
        if args.d:
            rs = args.r or [2]
            cases = [(d, r) for d in args.d for r in rs]
        result = repro.bicyclic_tables(cases)
    elif target == "lemma46-sweep":
        result = repro.remainder_sweep(jobs=args.jobs)
    else:
        result = repro.TARGETS[target]()
    print(result.render(args.format))
    return EXIT_OK if result.ok else EXIT_FAIL


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=["markdown", "json"], default=argparse.SUPPRESS,
                        help="output format (default: markdown)")

    # the top-level option needs its own action: parent actions are shared objects
    p = argparse.ArgumentParser(prog="hodgelab",
                                description="Eigenspace, Hodge and Torelli computations for abelian covers.")
    p.add_argument("--format", choices=["markdown", "json"], default="markdown", help="output format")
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    p.add_argument("-v", "--verbose", action="store_true", help="show warnings on stderr")
    sub = p.add_subparsers(dest="command", required=True)

    def spec_cmd(name, func, help_text):
        sp = sub.add_parser(name, parents=[common], help=help_text)
        sp.add_argument("spec", help="JSON file ('-' for stdin)")
        sp.set_defaults(func=func)
        return sp

    spec_cmd("genus", cmd_genus, "genus of a cover")
    spec_cmd("eigentable", cmd_eigentable, "eigenspace dimensions of holomorphic 1-forms").add_argument(
        "--invert", action="store_true", help="relabel characters by their inverses")
    spec_cmd("hodge", cmd_hodge, "Hodge numbers of a product quotient")
    spec_cmd("torelli", cmd_torelli, "infinitesimal Torelli report").add_argument(
        "--exact", action="store_true", help="compute exact ranks on rational quotients")
    spec_cmd("freeness", cmd_freeness, "is the diagonal action free")

    lem = sub.add_parser("lemma46", parents=[common], help="remainder-sum counting bound")
    lsub = lem.add_subparsers(dest="action", required=True)
    v = lsub.add_parser("verify", parents=[common], help="exhaustive check")
    v.add_argument("--d-max", type=int, required=True)
    v.add_argument("--r", type=int, action="append", help="number of parts (repeatable, default 4)")
    v.add_argument("--jobs", type=int, default=1)
    v.set_defaults(func=cmd_remainder_verify)
    pr = lsub.add_parser("profile", parents=[common], help="lambda values of one composition")
    pr.add_argument("--d", type=int, required=True)
    pr.add_argument("--m", type=int, nargs="+", required=True)
    pr.set_defaults(func=cmd_remainder_profile)

    par = sub.add_parser("pardini", parents=[common], help="building data of a cover of the line")
    psub = par.add_subparsers(dest="action", required=True)
    pc = psub.add_parser("check", parents=[common], help="check the building data equivalences")
    pc.add_argument("spec")
    pc.set_defaults(func=cmd_pardini_check)

    rp = sub.add_parser("repro", parents=[common], help="reproduce a table or claim")
    rp.add_argument("target", choices=sorted(repro.TARGETS))
    rp.add_argument("--k", type=_int_range, help="k values for k-family-dims, N or LO..HI")
    rp.add_argument("--d", type=int, action="append", help="prime d for section5-tables (repeatable)")
    rp.add_argument("--r", type=int, action="append", help="twist parameter for section5-tables (repeatable)")
    rp.add_argument("--jobs", type=int, default=1)
    rp.set_defaults(func=cmd_repro)
    return p


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INPUT if exc.code else EXIT_OK
    logging.basicConfig(level=logging.WARNING if args.verbose else logging.ERROR, format="%(levelname)s: %(message)s")
    try:
        return args.func(args)
    except (InputError, CapacityError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except HodgelabError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())
