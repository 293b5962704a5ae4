"""``ffk`` command line: JSON in, JSON out."""

from __future__ import annotations

import argparse
import json
import os
import sys
from pathlib import Path

from .alexander import alexander_polynomial, dehn_matrix
from .corpus import lookup, primary_entries, write_corpus
from .diagram import Diagram, parse_pd
from .errors import FFKError, InvalidParameter, NotStabilized
from .finitefield import MAX_ORDER, is_prime
from .locsys import DEFAULT_BUDGET, DEFAULT_CAP, LevelReport, stable_class_count
from .presentation import dehn_presentation, presentations_json
from .torsor import count_torsors, make_group
from .ztorsion import count_invertible_modules, minor_gcd, prime_to_p, predicted_level_count

GRID = ((2, 1), (2, 2), (3, 1), (5, 1))
VERIFY_MAX_ORDER = 2 ** 16


def _budget(args) -> int:
    if args.budget is not None:
        return args.budget
    env = os.environ.get("FFK_BUDGET")
    return int(env) if env else DEFAULT_BUDGET


def _diagram(args) -> Diagram:
    if args.file:
        text = Path(args.file).read_text()
    elif args.diagram:
        text = args.diagram
    else:
        raise InvalidParameter("give a PD string, a corpus name or --file")
    entry = lookup(text.strip())
    if entry is not None:
        return entry.diagram()
    return parse_pd(text)


def _check_pnu(args):
    if not is_prime(args.p):
        raise InvalidParameter(f"p={args.p} is not prime")
    if args.nu < 1:
        raise InvalidParameter("nu must be positive")


def cmd_parse(args):
    return _diagram(args).as_dict()


def cmd_present(args):
    return presentations_json(_diagram(args))


def cmd_alex(args):
    poly = alexander_polynomial(_diagram(args), method=args.method)
    return {"poly": list(poly.coeffs), "method": args.method}


def cmd_count(args):
    _check_pnu(args)
    return count_invertible_modules(_diagram(args), args.p, args.nu).as_dict()


def cmd_enumerate(args):
    _check_pnu(args)
    return stable_class_count(_diagram(args), args.p, args.nu, args.cap, _budget(args)).as_dict()


def cmd_torsor(args):
    _check_pnu(args)
    level = args.level or 2 * args.nu
    n = {"gl1": 1, "gl2": 2}[args.group]
    if args.p ** (level * n * n) > MAX_ORDER:
        raise InvalidParameter(f"level {level} is too large for {args.group}")
    spec = make_group("GL", n, args.p, level)
    return count_torsors(_diagram(args), spec, args.nu, _budget(args)).as_dict()


def verify_row(name: str, d: Diagram, p: int, nu: int, cap: int, budget: int) -> dict:
    """SNF count against the Alexander value and against enumeration level by level."""
    res = count_invertible_modules(d, p, nu)
    if res.p_divides_c0:
        a = [[int(e(p ** nu)) for e in row] for row in _classical(d)]
        target = prime_to_p(minor_gcd(a, d.v), p) if d.v else 1
    else:
        target = abs(res.delta_q)
    row = {
        "knot": name,
        "p": p,
        "nu": nu,
        "count": res.count,
        "delta_q": res.delta_q,
        "p_divides_c0": res.p_divides_c0,
        "snf_matches": res.count == target,
    }
    levels, mismatched = [], []
    stable = None
    try:
        rep = stable_class_count(d, p, nu, cap, budget, VERIFY_MAX_ORDER)
        stable = rep.value
        scanned = rep.levels
    except NotStabilized as exc:
        scanned = [LevelReport(r["level"], r["count"], r["status"]) for r in exc.info["report"]]
    for lv in scanned:
        if lv.count is None:
            continue
        want = predicted_level_count(res.elementary_divisors, p, lv.level)
        levels.append({"level": lv.level, "enumerated": lv.count, "predicted": want})
        if lv.count != want:
            mismatched.append(lv.level)
    reached = any(lv["predicted"] == res.count for lv in levels)
    row["levels"] = levels
    row["stable_count"] = stable
    row["full_count_reached"] = reached
    if stable is None:
        row["enumeration"] = "unconfirmed"
    elif reached:
        row["enumeration"] = "agrees" if stable == res.count else "disagrees"
    else:
        row["enumeration"] = "partial"
    row["pass"] = bool(row["snf_matches"] and levels and not mismatched
                       and row["enumeration"] != "disagrees")
    return row


def _classical(d: Diagram):
    return dehn_matrix(dehn_presentation(d), classical=True)


def cmd_verify(args):
    if args.p is not None or args.nu_set:
        grid = [(args.p or 2, args.nu)]
    else:
        grid = list(GRID)
    budget = _budget(args)
    rows = []
    for entry in primary_entries():
        for p, nu in grid:
            rows.append(verify_row(entry.name, entry.diagram(), p, nu, args.cap, budget))
    rows.sort(key=lambda r: (r["knot"], r["p"], r["nu"]))
    return {"rows": rows, "all_pass": all(r["pass"] for r in rows)}


def cmd_corpus(args):
    path = write_corpus(Path(args.out) if args.out else None)
    return {"written": str(path) if args.out else path.name,
            "entries": len(json.loads(path.read_text())["entries"])}


def _parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--pretty", action="store_true", help="indent the JSON output")
    common.add_argument("--budget", type=int, default=None,
                        help="largest search space per level (default: FFK_BUDGET or 2^20)")

    knot = argparse.ArgumentParser(add_help=False)
    knot.add_argument("diagram", nargs="?", help="PD text, 'unknot' or a corpus name")
    knot.add_argument("--file", help="read the diagram from a file")

    field = argparse.ArgumentParser(add_help=False)
    field.add_argument("--p", type=int, default=2)
    field.add_argument("--nu", type=int, default=1)

    parser = argparse.ArgumentParser(prog="ffk", description="Knot invariants over finite fields")
    sub = parser.add_subparsers(dest="command", required=True)
    sub.add_parser("parse", parents=[common, knot]).set_defaults(func=cmd_parse)
    sub.add_parser("present", parents=[common, knot]).set_defaults(func=cmd_present)
    alex = sub.add_parser("alex", parents=[common, knot])
    alex.add_argument("--method", choices=("dehn", "fox"), default="dehn")
    alex.set_defaults(func=cmd_alex)
    sub.add_parser("count", parents=[common, knot, field]).set_defaults(func=cmd_count)
    en = sub.add_parser("enumerate", parents=[common, knot, field])
    en.add_argument("--cap", type=int, default=DEFAULT_CAP,
                    help="scan levels nu, 2nu, ..., cap*nu")
    en.set_defaults(func=cmd_enumerate)
    tor = sub.add_parser("torsor", parents=[common, knot, field])
    tor.add_argument("--group", choices=("gl1", "gl2"), default="gl1")
    tor.add_argument("--level", type=int, default=None, help="field degree M (default 2nu)")
    tor.set_defaults(func=cmd_torsor)
    ver = sub.add_parser("verify", parents=[common])
    ver.add_argument("--p", type=int, default=None)
    ver.add_argument("--nu", type=int, default=None)
    ver.add_argument("--cap", type=int, default=DEFAULT_CAP)
    ver.set_defaults(func=cmd_verify)
    corp = sub.add_parser("corpus", parents=[common])
    corp.add_argument("action", choices=("regen",))
    corp.add_argument("--out", default=None, help="write here instead of the bundled file")
    corp.set_defaults(func=cmd_corpus)
    return parser


def run(argv=None) -> int:
    args = _parser().parse_args(argv)
    if args.command == "verify":
        args.nu_set = args.nu is not None
        args.nu = args.nu or 1
    try:
        out = args.func(args)
        code = 0
    except FFKError as exc:
        out = {"error": exc.kind, "detail": exc.detail}
        if "report" in exc.info:
            out["report"] = exc.info["report"]
        code = 1
    except (OSError, ValueError) as exc:
        out = {"error": type(exc).__name__, "detail": str(exc)}
        code = 1
    text = json.dumps(out, sort_keys=True, indent=2 if args.pretty else None,
                      separators=None if args.pretty else (",", ":"))
    print(text)
    return code


def main() -> None:
    sys.exit(run())
