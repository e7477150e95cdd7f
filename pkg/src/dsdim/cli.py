"""Command-line front end.

Exit status: 0 on success, 1 on input or computation errors, 2 when the
brute-force cross-check disagrees with the closed form.
"""
from __future__ import annotations

import argparse
import logging
import sys
from typing import List, Optional, Sequence

from . import dimpoly, dmod, oracle
from .lambda_monoid import Partition
from .linpoly import CompletionError, InconsistentSystem, charset_linear_system
from .numpoly import NumericalPolynomial, format_canonical, maximal_elements_lex_family
from .setdim import omega_E, phi_A, stable_bounds
from .sysfile import ParseError, parse_points, parse_system

__all__ = ["main", "build_parser", "run"]

EXIT_OK, EXIT_INPUT, EXIT_ORACLE = 0, 1, 2


def _names(k: int) -> List[str]:
    return [f"t{i + 1}" for i in range(k)]


def _tuple_arg(text: str) -> tuple:
    try:
        return tuple(int(x) for x in text.replace(",", " ").split())
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}")


def _emit_poly(out: List[str], label: str, phi: NumericalPolynomial, fmt: str) -> None:
    if fmt in ("expanded", "both"):
        out.append(f"{label} = {phi.to_str(_names(phi.num_vars))}")
    if fmt in ("binomial", "both"):
        out.append(f"# canonical coefficients of {label}")
        out.append(format_canonical(phi).rstrip("\n"))


def _point_partition(points, args, with_autos: bool) -> Partition:
    n = args.autos if with_autos else 0
    if args.partition:
        part = Partition(args.partition, n)
    else:
        if not points:
            raise ValueError("an empty point set needs --partition")
        part = Partition((len(points[0]) - n,), n)
    width = part.m + part.n
    for pt in points:
        if len(pt) != width:
            raise ValueError(f"point {pt} does not have {width} coordinates")
    return part


def _grid(args, nv: int, default_lo: Sequence[int], span: int = 3) -> oracle.GridSpec:
    lo = tuple(args.lower) if args.lower else tuple(default_lo)
    hi = tuple(args.upper) if args.upper else tuple(x + span for x in lo)
    if len(lo) != nv or len(hi) != nv:
        raise ValueError(f"grid corners need {nv} coordinates")
    return oracle.GridSpec(lo, hi)


def cmd_setdim(args, out):
    points = parse_points(args.input)
    part = _point_partition(points, args, with_autos=False)
    phi = omega_E(points, part.block_sizes)
    _emit_poly(out, "omega", phi, args.format)
    if args.check_oracle:
        _check_points(phi, lambda r: oracle.count_VE(points, part.block_sizes, r),
                      stable_bounds(points, part.block_sizes), part.block_sizes, out)


def cmd_zsetdim(args, out):
    points = parse_points(args.input)
    part = _point_partition(points, args, with_autos=True)
    phi = phi_A(points, part)
    _emit_poly(out, "phi", phi, args.format)
    if args.check_oracle:
        from .setdim import pair_points, rho_embed
        B = [rho_embed(a, part.m) for a in points] + pair_points(part.m, part.n)
        lo = stable_bounds(B, part.block_sizes + (2 * part.n,))
        _check_points(phi, lambda r: oracle.count_WA(points, part, r), lo, part.caps(), out)


def _check_points(phi, counter, lo, caps, out):
    grid = oracle.GridSpec(lo, tuple(x + c + 1 for x, c in zip(lo, caps)))
    values = {r: counter(r) for r in grid.points()}
    bad = [r for r, v in values.items() if phi(*r) != v]
    if bad:
        raise dimpoly.OracleMismatch(f"enumeration disagrees at {bad[0]}")
    out.append(f"oracle: agreement on grid {grid} ({grid.size()} points)")


def _load(args):
    return parse_system(args.input, args.partition)


def _charset(system, args):
    return charset_linear_system(system.polys, max_rounds=args.max_rounds)


def cmd_charset(args, out):
    system = _load(args)
    cs = _charset(system, args)
    out.append(f"# characteristic set ({len(cs)} element(s))")
    for i, A in enumerate(cs, 1):
        out.append(f"A{i} = {A.to_str(system.indeterminates)}")


def _report_lines(report, args, out, label="Phi"):
    out.append("# characteristic set" if label == "Phi" else "# Groebner basis")
    for i, line in enumerate(report.charset_echo, 1):
        out.append(f"{'A' if label == 'Phi' else 'G'}{i} = {line}")
    for i, rho in enumerate(report.extra.get("rho", []), 1):
        out.append(f"rho(G{i}) = {rho}")
    nv = report.phi.num_vars
    out.append(f"U1 = {report.u1_part.to_str(_names(nv))}")
    out.append(f"U2 = {report.u2_part.to_str(_names(nv))}")
    _emit_poly(out, "Phi", report.phi, args.format)
    out.append("# invariants")
    out.extend(report.invariants.lines())
    if report.oracle_note:
        out.append(f"oracle: {report.oracle_note}")


def cmd_dimpoly(args, out):
    system = _load(args)
    report = dimpoly.system_dimension_polynomial(
        system, check_oracle=args.check_oracle, max_rounds=args.max_rounds)
    _report_lines(report, args, out)


def cmd_gbdim(args, out):
    system = _load(args)
    pres = (dmod.ModulePresentation(system.partition, len(system.indeterminates), system.polys,
                                    list(system.indeterminates))
            if system.is_module else dmod.kahler_module_of_linear_system(system))
    report = dmod.gb_dimension_polynomial(pres, max_rounds=args.max_rounds)
    _report_lines(report, args, out, label="GB")
    if args.check_oracle:
        note = dimpoly._verify_with_oracle(report.table, report.phi, oracle.DEFAULT_CAP)
        out.append(f"oracle: {note}")


def cmd_strength(args, out):
    system = _load(args)
    report = dimpoly.system_dimension_polynomial(
        system, check_oracle=args.check_oracle, max_rounds=args.max_rounds)
    grid = _grid(args, report.phi.num_vars, (0,) * report.phi.num_vars)
    out.append(dimpoly.strength_report(report, list(grid.points())).rstrip("\n"))


def cmd_oracle(args, out):
    system = _load(args)
    cs = _charset(system, args)
    table = dimpoly.LeaderTable.from_charset(cs, len(system.indeterminates), system.partition)
    nv = system.partition.p + 1
    grid = _grid(args, nv, dimpoly.stability_offset(table), span=2)
    values = {r: oracle.count_reduced_terms(table, r) for r in grid.points()}
    out.append(oracle.grid_csv(values).rstrip("\n"))


def cmd_maximal(args, out):
    points = parse_points(args.input)
    for pt in sorted(maximal_elements_lex_family(points), reverse=True):
        out.append(" ".join(str(x) for x in pt))


COMMANDS = {
    "setdim": (cmd_setdim, "dimension polynomial of a subset of N^m"),
    "zsetdim": (cmd_zsetdim, "dimension polynomial of a subset of N^m x Z^n"),
    "charset": (cmd_charset, "characteristic set of a linear system"),
    "dimpoly": (cmd_dimpoly, "dimension polynomial via characteristic sets"),
    "gbdim": (cmd_gbdim, "dimension polynomial via a Groebner basis of the module"),
    "strength": (cmd_strength, "strength report with an evaluation table"),
    "oracle": (cmd_oracle, "brute-force counts as CSV"),
    "maximal": (cmd_maximal, "elements maximal under some lexicographic order"),
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="dsdim", description=__doc__.splitlines()[0])
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)
    for name, (_, help_text) in COMMANDS.items():
        sp = sub.add_parser(name, help=help_text)
        sp.add_argument("input")
        if name == "maximal":
            continue
        sp.add_argument("--partition", type=int, nargs="+", metavar="M",
                        help="block sizes m1 .. mp")
        sp.add_argument("--format", choices=("binomial", "expanded", "both"), default="both")
        sp.add_argument("--check-oracle", action="store_true",
                        help="cross-check against brute-force enumeration")
        sp.add_argument("--max-rounds", type=int, default=1000,
                        help="completion iteration cap")
        sp.add_argument("--lower", type=_tuple_arg, help="grid lower corner, e.g. 0,0")
        sp.add_argument("--upper", type=_tuple_arg, help="grid upper corner")
        if name == "zsetdim":
            sp.add_argument("--autos", type=int, default=1, help="number of automorphisms n")
    return parser


def run(args) -> int:
    out: List[str] = []
    handler = COMMANDS[args.command][0]
    try:
        handler(args, out)
    except dimpoly.OracleMismatch as exc:
        sys.stdout.write("\n".join(out) + ("\n" if out else ""))
        print(f"oracle mismatch: {exc}", file=sys.stderr)
        return EXIT_ORACLE
    except (ParseError, OSError, ValueError, ArithmeticError, InconsistentSystem,
            CompletionError, oracle.CapExceeded) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    sys.stdout.write("\n".join(out) + "\n")
    return EXIT_OK


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    return run(args)


if __name__ == "__main__":
    sys.exit(main())
