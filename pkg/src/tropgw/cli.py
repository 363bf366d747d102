"""Command-line interface.

Subcommands: ``invariant``, ``table``, ``absolute``, ``verify`` and
``oracle-kontsevich``.  Invariants computed by any subcommand can be
persisted to a JSON-lines cache given by ``--cache PATH`` or, by default,
``$TROPGW_CACHE_DIR/invariants.jsonl``.

Exit status: 0 on success, 1 when a computation fails or an identity does
not hold, 2 for usage errors.
"""

from __future__ import annotations

import argparse
import json
import logging
import re
import sys
from pathlib import Path

from . import store
from .absolute import HomologyClass, InsufficientTableError, absolute_invariant, kontsevich
from .configs import ConfigError, CurveConfig, from_json
from .lattice import Vec, format_rational, is_valid_incoming
from .solver import Solver, SolverError

log = logging.getLogger("tropgw")

DEFAULT_Y_SET = [Vec(-1, 0), Vec(-1, 1), Vec(-1, 2), Vec(-2, 1), Vec(-2, -1)]

_Y_RE = re.compile(r"^\s*\(?\s*(-?\d+)\s*,\s*(-?\d+)\s*\)?\s*$")


class UsageError(Exception):
    pass


def parse_y(text: str) -> Vec:
    m = _Y_RE.match(text)
    if m is None:
        raise UsageError(f"--y expects '(y1,y2)', got {text!r}")
    y = Vec(int(m.group(1)), int(m.group(2)))
    if not is_valid_incoming(y):
        raise UsageError(f"invalid incoming vector {tuple(y)}: need y1 <= -1 and y2 > y1")
    return y


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="tropgw", description=__doc__.split("\n\n")[0])
    p.add_argument("-v", "--verbose", action="store_true", help="log progress to stderr")
    sub = p.add_subparsers(dest="command", required=True)

    def cache_opt(sp):
        sp.add_argument(
            "--cache",
            metavar="PATH",
            help=f"invariant table file to resume from and update (default: ${store.CACHE_ENV}/{store.CACHE_FILENAME})",
        )

    sp = sub.add_parser("invariant", help="relative invariant of one configuration")
    sp.add_argument("--gamma", required=True, help="configuration JSON, e.g. '[[[2,-2]]]'")
    sp.add_argument("--json", action="store_true")
    cache_opt(sp)

    sp = sub.add_parser("table", help="all connected invariants within bounds")
    sp.add_argument("--max-degree", type=int, required=True)
    sp.add_argument("--min-chi", type=int, required=True)
    sp.add_argument("--nonzero", action="store_true", help="print only nonzero entries")
    sp.add_argument("--json", action="store_true", help="print in the table file format")
    cache_opt(sp)

    sp = sub.add_parser("absolute", help="absolute invariant of a blowup of the plane")
    sp.add_argument("--points", type=int, required=True, help="number of blowups n")
    sp.add_argument("--genus", type=int, required=True)
    sp.add_argument("--class", dest="beta", required=True, help="'d:c1,...,cn' for dH - sum c_i E_i")
    sp.add_argument("--json", action="store_true")
    cache_opt(sp)

    sp = sub.add_parser("verify", help="check that both sweeps of the series agree")
    sp.add_argument("--max-degree", type=int, required=True)
    sp.add_argument("--min-chi", type=int, default=None, help="default: -2 * max-degree")
    sp.add_argument("--y", action="append", default=None, help="incoming vector '(y1,y2)'; repeatable")
    sp.add_argument("--json", action="store_true")
    cache_opt(sp)

    sp = sub.add_parser("oracle-kontsevich", help="classical genus-0 plane curve counts")
    sp.add_argument("--max-degree", type=int, required=True)
    sp.add_argument("--json", action="store_true")
    return p


def _open_solver(args) -> tuple[Solver, Path | None]:
    path = Path(args.cache) if getattr(args, "cache", None) else store.default_cache_path()
    table = None
    if path is not None and path.exists():
        table = store.load_table(path)
        log.info("loaded %d invariants from %s", len(table), path)
    return Solver(table), path


def _save(solver: Solver, path, bounds=None):
    if path is None:
        return
    table = solver.table
    if bounds is not None and not table.covers(*bounds):
        table.max_degree, table.min_chi = bounds
    store.save_table(table, path)
    log.info("saved %d invariants to %s", len(table), path)


def _emit(obj, as_json, text):
    if as_json:
        print(json.dumps(obj, separators=(",", ":")))
    else:
        print(text)


def cmd_invariant(args):
    try:
        gamma = from_json(args.gamma)
    except (ConfigError, ValueError) as exc:
        raise UsageError(f"--gamma: {exc}") from exc
    if gamma.is_empty:
        raise UsageError("--gamma: empty configuration")
    solver, path = _open_solver(args)
    value = gamma_invariant(solver, gamma)
    _save(solver, path)
    _emit({"gamma": gamma.to_json(), "value": format_rational(value)}, args.json, format_rational(value))
    return 0


def gamma_invariant(solver: Solver, gamma: CurveConfig):
    """``n_gamma`` for any configuration: connected, disconnected or incoming-marked."""
    if gamma.incoming is not None:
        return solver.incoming_invariant(gamma)
    value = 1
    for comp in gamma.split():
        value *= solver.invariant(comp)
    return value


def cmd_table(args):
    solver, path = _open_solver(args)
    table = solver.build_table(args.max_degree, args.min_chi)
    _save(solver, path, (args.max_degree, args.min_chi))
    if args.json:
        sys.stdout.write(store.dumps_table(table))
        return 0
    for c, x in sorted(table.values.items(), key=lambda kv: (kv[0].degree, -kv[0].euler_characteristic, kv[0])):
        if args.nonzero and not x:
            continue
        print(f"{c.dumps()}\t{format_rational(x)}")
    return 0


def cmd_absolute(args):
    try:
        beta = HomologyClass.parse(args.beta)
    except ValueError as exc:
        raise UsageError(f"--class: {exc}") from exc
    if args.points < 1:
        raise UsageError("--points must be positive")
    if beta.n != args.points:
        raise UsageError(f"--class has {beta.n} exceptional entries but --points is {args.points}")
    solver, path = _open_solver(args)
    value = absolute_invariant(args.points, args.genus, beta, solver)
    _save(solver, path)
    obj = {"points": args.points, "genus": args.genus, "class": str(beta), "value": format_rational(value)}
    _emit(obj, args.json, format_rational(value))
    return 0


def cmd_verify(args):
    ys = [parse_y(t) for t in args.y] if args.y else DEFAULT_Y_SET
    min_chi = args.min_chi if args.min_chi is not None else -2 * args.max_degree
    solver, path = _open_solver(args)
    reports = [solver.verify_identity(y, args.max_degree, min_chi) for y in ys]
    _save(solver, path)
    if args.json:
        obj = [
            {
                "y": list(r.y),
                "max_degree": r.max_degree,
                "min_chi": r.min_chi,
                "ok": r.ok,
                "terms": r.left.to_json(),
                "mismatches": [
                    {"config": c.to_json(), "left": format_rational(a), "right": format_rational(b)}
                    for c, a, b in r.mismatches
                ],
            }
            for r in reports
        ]
        print(json.dumps(obj, separators=(",", ":")))
    else:
        for r in reports:
            print(r.summary())
            for c, a, b in r.mismatches:
                print(f"  {c.dumps()}: left {format_rational(a)} right {format_rational(b)}")
    return 0 if all(r.ok for r in reports) else 1


def cmd_kontsevich(args):
    if args.max_degree < 1:
        raise UsageError("--max-degree must be at least 1")
    values = kontsevich(args.max_degree)
    _emit([format_rational(x) for x in values], args.json, "\n".join(f"{d} {format_rational(x)}" for d, x in enumerate(values, 1)))
    return 0


COMMANDS = {
    "invariant": cmd_invariant,
    "table": cmd_table,
    "absolute": cmd_absolute,
    "verify": cmd_verify,
    "oracle-kontsevich": cmd_kontsevich,
}


def run(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(message)s")
    try:
        return COMMANDS[args.command](args)
    except UsageError as exc:
        print(f"tropgw {args.command}: error: {exc}", file=sys.stderr)
        return 2
    except (SolverError, InsufficientTableError, store.StoreError, ConfigError, ValueError) as exc:
        print(f"tropgw {args.command}: {exc}", file=sys.stderr)
        return 1


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
