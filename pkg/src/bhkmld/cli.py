"""Command-line front end.

Exit status: 0 on success, 1 when an input fails validation, 2 on usage errors.
``--json`` output uses sorted keys and ``"p/q"`` strings for every rational.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
import time
from fractions import Fraction
from typing import Sequence

from .bhk import certify, group_orders, mld_even_subquotient, mld_formula
from .dbscan import SCAN_MODES, dumps_record, load_weight_systems, scan_rank
from .errors import BhkError
from .examples import generate_extremal, liu_potential, liu_weights, sylvester
from .exactlin import determinant, transpose
from .oracle import DEFAULT_BOUND, mld_oracle
from .potential import Potential, parse_potential


def rat(x: Fraction) -> str:
    x = Fraction(x)
    return f"{x.numerator}/{x.denominator}"


def _charges(cd) -> dict:
    return {"q": [rat(x) for x in cd.q], "d": cd.d, "a": list(cd.a)}


def _oracle_json(report) -> dict:
    return {
        "value": rat(report.value),
        "method": report.method,
        "witness": report.witness,
        "element": None if report.element is None else [rat(x) for x in report.element],
    }


def _read_potential(args) -> str:
    if args.file:
        with open(args.file, encoding="utf-8") as fh:
            return fh.read().strip()
    if not args.potential:
        raise argparse.ArgumentTypeError("give a potential or --file")
    return args.potential


def analysis_report(text: str, nvars: int | None, oracle: bool, bound: int) -> dict:
    p = parse_potential(text, nvars)
    cert = certify(p)
    report = {
        "input": str(p),
        "atoms": [{"kind": a.kind, "indices": list(a.indices), "exponents": list(a.exponents)}
                  for a in cert.atoms.atoms],
        "determinant": determinant(cert.matrix),
        "charges": _charges(cert.charges),
        "mirror": _charges(cert.mirror),
        "calabi_yau": cert.calabi_yau,
        "well_formed": cert.well_formed,
        "quasismooth": cert.quasismooth,
    }
    if cert.calabi_yau:
        orders = group_orders(cert.matrix, cert.charges)
        report["group_orders"] = {"aut_f": orders.aut_f, "j_f": orders.j_f, "aut_t": orders.aut_t}
    if cert.ok:
        formula = mld_formula(cert.mirror, cert)
        report["mld_formula"] = rat(formula)
        if cert.atoms.is_even_loop_shape():
            report["mld_even_subgroup"] = rat(mld_even_subquotient(cert.mirror, cert))
        if oracle:
            res = mld_oracle(cert, "autT", bound=bound)
            report["mld_oracle"] = _oracle_json(res)
            report["agreement"] = res.value == formula
    return report


def _emit(args, payload: dict, lines: Sequence[str]) -> None:
    if args.json:
        print(json.dumps(payload, sort_keys=True))
    else:
        print("\n".join(lines))


def _table(d: dict, indent: str = "") -> list[str]:
    out = []
    width = max((len(k) for k in d), default=0)
    for k, v in d.items():
        if isinstance(v, dict):
            out.append(f"{indent}{k}:")
            out.extend(_table(v, indent + "  "))
        else:
            if isinstance(v, list):
                v = ", ".join(json.dumps(x) if isinstance(x, dict) else str(x) for x in v)
            out.append(f"{indent}{k:<{width}}  {v}")
    return out


def cmd_analyze(args) -> int:
    rep = analysis_report(_read_potential(args), args.vars, args.oracle, args.bound)
    _emit(args, rep, _table(rep))
    return 0 if rep.get("agreement", True) else 1


def cmd_mirror(args) -> int:
    cert = certify(parse_potential(_read_potential(args), args.vars))
    mirror_pot = Potential.from_rows(transpose(cert.matrix))
    rep = {"input": str(cert.potential), "mirror_potential": str(mirror_pot),
           "charges": _charges(cert.charges), "mirror": _charges(cert.mirror)}
    _emit(args, rep, _table(rep))
    return 0


def cmd_mld(args) -> int:
    cert = certify(parse_potential(_read_potential(args), args.vars))
    cert.require()
    if args.mode == "autT":
        value = mld_formula(cert.mirror, cert)
    else:
        value = mld_even_subquotient(cert.mirror, cert)
    rep = {"input": str(cert.potential), "mode": args.mode, "mld_formula": rat(value)}
    if args.oracle:
        res = mld_oracle(cert, "autT" if args.mode == "autT" else "evenSubgroup",
                         bound=args.bound)
        rep["mld_oracle"] = _oracle_json(res)
        rep["agreement"] = res.value == value
    _emit(args, rep, _table(rep))
    return 0 if rep.get("agreement", True) else 1


def _example_json(ex, oracle: bool, bound: int) -> dict:
    rep = {
        "n": ex.n, "b": list(ex.b), "v": ex.v, "D": ex.D, "m": ex.m,
        "potential": str(ex.potential),
        "weights": list(ex.weights.a), "degree": ex.weights.d,
        "mld": rat(ex.mld),
        "checks": ex.checks,
    }
    if oracle:
        mode = "autT" if ex.n % 2 else "evenSubgroup"
        res = mld_oracle(certify(ex.potential), mode, bound=bound)
        rep["mld_oracle"] = _oracle_json(res)
        rep["agreement"] = res.value == ex.mld
    return rep


def cmd_gen_example(args) -> int:
    ex = generate_extremal(args.n)
    rep = _example_json(ex, args.oracle, args.bound)
    _emit(args, rep, _table(rep))
    return 0 if rep.get("agreement", True) else 1


def _parse_range(text: str) -> range:
    for sep in ("..", "-", ":"):
        if sep in text:
            lo, hi = text.split(sep, 1)
            return range(int(lo), int(hi) + 1)
    return range(int(text), int(text) + 1)


def cmd_verify(args) -> int:
    try:
        ns = _parse_range(args.range)
    except ValueError:
        print(f"error: bad range {args.range!r}", file=sys.stderr)
        return 2
    rows = []
    ok = True
    for n in ns:
        t0 = time.perf_counter()
        ex = generate_extremal(n)
        below = ex.mld < Fraction(1, 2 ** (2 ** n)) if n >= 3 else None
        entry = {"n": n, "identity": ex.checks["identity"], "mld": rat(ex.mld),
                 "below_2^-2^n": below, "seconds": round(time.perf_counter() - t0, 3)}
        ok &= ex.checks["identity"] and below is not False
        rows.append(entry)
    if args.json:
        print(json.dumps({"results": rows, "ok": ok}, sort_keys=True))
    else:
        for r in rows:
            print(f"n={r['n']}: identity {'ok' if r['identity'] else 'FAIL'}  "
                  f"mld={r['mld'] if len(r['mld']) < 40 else r['mld'][:37] + '...'}  "
                  f"below 1/2^(2^n): {r['below_2^-2^n']}")
    return 0 if ok else 1


def cmd_liu(args) -> int:
    p, expected = liu_potential(args.n)
    cert = certify(p)
    d, weights = liu_weights(args.n)
    formula = mld_formula(cert.mirror, cert)
    rep = {"n": args.n, "potential": str(p), "weights": list(cert.charges.a),
           "degree": cert.charges.d, "expected_weights": list(weights),
           "expected_mld": rat(expected), "mld_formula": rat(formula),
           "sylvester": [sylvester(i) for i in range(args.n + 2)]}
    if args.oracle:
        res = mld_oracle(cert, "autT", bound=args.bound)
        rep["mld_oracle"] = _oracle_json(res)
        rep["agreement"] = res.value == formula
    _emit(args, rep, _table(rep))
    good = formula == expected and cert.charges.a == weights and rep.get("agreement", True)
    return 0 if good else 1


def cmd_scan(args) -> int:
    systems = load_weight_systems(args.file, cy_only=args.cy_only)
    records = scan_rank(systems, args.mode, check_top=args.check_top, jobs=args.jobs)
    if args.json:
        for rec in records:
            print(dumps_record(rec))
    else:
        for rec in records:
            best = f"{rat(rec.best.mld)}  [{rec.best.tag}]  {rec.best.potential}" if rec.best else "-"
            k = len(rec.candidates)
            print(f"{str(rec.ws):<32} {k:>3} candidate{'' if k == 1 else 's'}  best {best}")
    bad = [c for r in records for c in r.candidates if c.oracle is not None and c.oracle != c.mld]
    return 1 if bad else 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="bhkmld", description=__doc__.splitlines()[0])
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, potential=True, oracle=True):
        p.add_argument("--json", action="store_true", help="machine-readable output")
        if potential:
            p.add_argument("potential", nargs="?", help='e.g. "x0^2 + x1^3*x3 + x1*x2^5 + x2*x3^19"')
            p.add_argument("--file", help="read the potential from a file")
            p.add_argument("--vars", type=int, help="number of variables (default: inferred)")
        if oracle:
            p.add_argument("--oracle", action="store_true", help="cross-check with the brute-force oracle")
            p.add_argument("--bound", type=int, default=DEFAULT_BOUND, help="group size limit for the oracle")

    p = sub.add_parser("analyze", help="full report for a potential")
    common(p)
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("mirror", help="BHK mirror potential, charges and weights")
    common(p, oracle=False)
    p.set_defaults(func=cmd_mirror)

    p = sub.add_parser("mld", help="mld of the toric quotient")
    common(p)
    p.add_argument("--mode", choices=("autT", "even"), default="autT")
    p.set_defaults(func=cmd_mld)

    p = sub.add_parser("gen-example", help="Sylvester-sequence example in dimension n")
    common(p, potential=False)
    p.add_argument("n", type=int)
    p.set_defaults(func=cmd_gen_example)

    p = sub.add_parser("verify", help="identity checks over a range of n, e.g. 2-8")
    common(p, potential=False, oracle=False)
    p.add_argument("range")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("liu", help="Liu's Fermat pair in dimension n")
    common(p, potential=False)
    p.add_argument("n", type=int)
    p.set_defaults(func=cmd_liu)

    p = sub.add_parser("scan", help="rank a weight-system file by mld (JSON lines with --json)")
    common(p, potential=False, oracle=False)
    p.add_argument("file")
    p.add_argument("--mode", choices=SCAN_MODES, default="pair")
    p.add_argument("--cy-only", action="store_true", help="reject lines whose weights do not sum to d")
    p.add_argument("--check-top", type=int, default=0, metavar="K")
    p.add_argument("--jobs", type=int, default=1)
    p.set_defaults(func=cmd_scan)
    return parser


def run_command(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING,
                        stream=sys.stderr, format="%(levelname)s %(name)s: %(message)s")
    if getattr(args, "jobs", 1) < 1:
        parser.error("--jobs must be at least 1")
    try:
        return args.func(args)
    except argparse.ArgumentTypeError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (BhkError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


def main() -> None:
    sys.exit(run_command())
