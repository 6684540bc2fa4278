"""Command-line interface.

Exit codes: 0 success, 2 configuration or parse error, 3 resource cap hit,
4 soundness alarm (a proved congruence failed inside its guaranteed range).
"""

from __future__ import annotations

import argparse
import csv
import json
import sys

from . import __version__
from .congruences import (
    ExcludedParameterTriple,
    ModulusTooLarge,
    check_companion,
    check_digit_product,
    check_gauss,
    check_lucasx_with_q,
    check_partial_lucas,
    check_wolstenholme,
    frobenius_property_check,
)
from .parser import ParseContext, ParseError, format_poly, parse
from .polytope import CandidateExplosion, SupportGeometry, minimal_M
from .ring import is_prime
from .sequences import ORACLES, CTRepresentation, InvalidParameters, ct_prefix, get_entry, load_catalog

EXIT_OK = 0
EXIT_CONFIG = 2
EXIT_RESOURCE = 3
EXIT_ALARM = 4

VERIFY_KINDS = ("lucas", "digits", "gauss", "companion", "lucasx", "wolstenholme", "frobenius")


class ConfigError(ValueError):
    pass


def parse_primes(spec: str) -> list[int]:
    """``"3,5,7"`` or ranges such as ``"3..19"`` (filtered to primes)."""
    out: list[int] = []
    for part in spec.split(","):
        part = part.strip()
        if not part:
            continue
        if ".." in part:
            lo, hi = part.split("..", 1)
            try:
                out.extend(n for n in range(int(lo), int(hi) + 1) if is_prime(n))
            except ValueError:
                raise ConfigError(f"bad prime range {part!r}") from None
        else:
            try:
                n = int(part)
            except ValueError:
                raise ConfigError(f"bad prime {part!r}") from None
            if not is_prime(n):
                raise ConfigError(f"{n} is not prime")
            out.append(n)
    if not out:
        raise ConfigError(f"no primes in {spec!r}")
    return sorted(set(out))


def _load_entries(args):
    return load_catalog(args.catalog)


def _resolve_rep(args, need_poly: bool = True):
    """Return ``(representation, context, catalog entry or None)``."""
    entry = None
    if args.catalog_entry:
        try:
            entry = get_entry(args.catalog_entry, _load_entries(args))
        except KeyError as exc:
            raise ConfigError(str(exc.args[0])) from None
        return entry.representation, entry.context, entry
    if not args.poly:
        if need_poly:
            raise ConfigError("give --poly (with --vars) or --catalog-entry")
        return None, None, None
    ctx = ParseContext(args.vars)
    q = getattr(args, "q", None)
    return CTRepresentation.from_strings(args.poly, q, ctx), ctx, None


def _emit(args, text_lines, payload, csv_rows=None, csv_header=None):
    fmt = "json" if args.json else args.format
    out = sys.stdout
    if fmt == "json":
        json.dump(payload, out, indent=2, sort_keys=False)
        out.write("\n")
    elif fmt == "csv":
        w = csv.writer(out, lineterminator="\n")
        if csv_header:
            w.writerow(csv_header)
        for row in csv_rows or []:
            w.writerow(row)
    else:
        for line in text_lines:
            out.write(line + "\n")


def cmd_newton(args) -> int:
    rep, ctx, _ = _resolve_rep(args)
    geom = SupportGeometry.from_poly(rep.P)
    report = minimal_M(geom, cap=args.cap)
    data = report.to_json()
    data = {"support_size": len(geom.points), **data}
    lines = [
        f"support size     {len(geom.points)}",
        f"contains origin  {report.contains_origin}",
        f"g_min            {data['g_min']}",
        f"M_min            {report.m_min}",
        "interior points at scale 1 (nonzero):",
    ]
    lines += [f"  {tuple(p['v'])}  g = {p['g']}" for p in data["interior_points"]] or ["  none"]
    rows = [[" ".join(map(str, p["v"])), p["g"]] for p in data["interior_points"]]
    _emit(args, lines, data, rows, ["v", "g"])
    return EXIT_OK


def cmd_expand(args) -> int:
    rep, ctx, _ = _resolve_rep(args)
    text = format_poly(rep.P, ctx)
    _emit(args, [text], {"poly": text, "vars": list(ctx.names)}, [[text]], ["poly"])
    return EXIT_OK


def cmd_seq(args) -> int:
    rep, _, _ = _resolve_rep(args)
    values = ct_prefix(rep, args.n, args.mod)
    payload = {"modulus": args.mod, "values": values}
    _emit(args, [" ".join(map(str, values))], payload,
          [[n, v] for n, v in enumerate(values)], ["n", "value"])
    return EXIT_OK


def cmd_oracle(args) -> int:
    fn = ORACLES[args.name]
    params = {}
    if args.name == "uab":
        params = {"eps": args.eps, "a": args.a, "b": args.b}
    start = 1 if args.name == "w" else 0
    indices = list(range(start, args.n + 1))
    values = [fn(n, **params) for n in indices]
    payload = {"name": args.name, "params": params, "start": start, "values": values}
    _emit(args, [" ".join(map(str, values))], payload,
          [[n, v] for n, v in zip(indices, values)], ["n", "value"])
    return EXIT_OK


def cmd_catalog(args) -> int:
    entries = _load_entries(args)
    if args.json:
        _emit(args, [], [e.to_json() for e in entries])
        return EXIT_OK
    lines = []
    rows = []
    for e in entries:
        oracle = e.oracle["name"] if e.oracle else "-"
        params = ",".join(f"{k}={v}" for k, v in e.parameters.items())
        if params:
            oracle += f"({params})"
        lines.append(f"{e.name:<14} M={e.documented_m}  vars={','.join(e.vars):<6} "
                     f"oracle={oracle:<22} P={e.poly}" + ("" if e.q == "1" else f"  Q={e.q}"))
        rows.append([e.name, e.documented_m, ",".join(e.vars), e.poly, e.q, oracle])
    _emit(args, lines, None, rows, ["name", "documented_m", "vars", "poly", "q", "oracle"])
    return EXIT_OK


def _report_lines(report) -> list[str]:
    marks = " ".join(f"{v.k}:{'ok' if v.passed else 'FAIL'}" for v in report.verdicts)
    alarm = "  SOUNDNESS ALARM" if report.soundness_alarm else ""
    return [f"{report.check:<10} p={report.prime:<4} power={report.power} n_max={report.n_max} "
            f"M={report.m_used} guaranteed_k={report.guaranteed_k} observed_k={report.observed_k}"
            f"{alarm}", f"    {marks}"]


def _report_rows(report) -> list[list]:
    rows = []
    for v in report.verdicts:
        ce = v.counterexample
        rows.append([report.check, report.prime, report.power, report.n_max, report.m_used,
                     report.guaranteed_k, report.observed_k, v.k, v.passed,
                     "" if ce is None else ce.n, "" if ce is None else ce.lhs,
                     "" if ce is None else ce.rhs])
    return rows


REPORT_HEADER = ["check", "prime", "power", "n_max", "m_used", "guaranteed_k", "observed_k",
                 "k", "pass", "n", "lhs", "rhs"]


def cmd_verify(args) -> int:
    primes = parse_primes(args.primes)
    kind = args.kind
    if kind == "wolstenholme":
        return _verify_wolstenholme(args, primes)
    rep, ctx, entry = _resolve_rep(args)
    if kind == "frobenius":
        results = [{"check": "frobenius", "prime": p, "pass": frobenius_property_check(rep.P, p)}
                   for p in primes]
        lines = [f"frobenius  p={r['prime']:<4} {'ok' if r['pass'] else 'FAIL  SOUNDNESS ALARM'}"
                 for r in results]
        _emit(args, lines, results, [[r["check"], r["prime"], r["pass"]] for r in results],
              ["check", "prime", "pass"])
        return EXIT_OK if all(r["pass"] for r in results) else EXIT_ALARM

    reports = []
    for p in primes:
        if kind == "lucas":
            reports.append(check_partial_lucas(rep, p, args.n_max, args.m))
        elif kind == "digits":
            reports.append(check_digit_product(rep, p, args.m, args.n_max))
        elif kind == "gauss":
            source = rep
            if args.source == "oracle":
                if entry is None or not entry.has_oracle():
                    raise ConfigError("--source oracle needs a catalog entry with an oracle")
                source = entry.oracle_at
            reports.append(check_gauss(source, p, args.r_max, args.n_max, proven=rep.q_is_one))
        elif kind == "companion":
            reports.append(_verify_companion(args, rep, ctx, entry, p))
        elif kind == "lucasx":
            reports.append(check_lucasx_with_q(rep, p, args.n_max))
    lines = [line for r in reports for line in _report_lines(r)]
    rows = [row for r in reports for row in _report_rows(r)]
    _emit(args, lines, [r.to_json() for r in reports], rows, REPORT_HEADER)
    if any(r.soundness_alarm for r in reports):
        print("soundness alarm: a guaranteed congruence failed", file=sys.stderr)
        return EXIT_ALARM
    return EXIT_OK


def _verify_companion(args, rep, ctx, entry, p):
    if args.companion:
        Qc = parse(args.companion, ctx)
    elif entry is not None and entry.companion_poly is not None:
        Qc = entry.companion_poly
    else:
        raise ConfigError("companion check needs --companion (or --q) or an entry with a companion")
    k_lo = args.k_lo if args.k_lo is not None else (p + 1) // 2
    k_hi = args.k_hi if args.k_hi is not None else p - 1
    k_hi = min(k_hi, p - 1)
    if k_lo > k_hi:
        k_lo = k_hi
    # the catalog's companion polynomial is proved for (p+1)/2 <= k < p
    proven = (entry is not None and entry.companion_poly == Qc
              and k_lo >= (p + 1) // 2 and p >= 3)
    return check_companion(rep, Qc, p, k_lo, k_hi, args.n_max, proven=proven)


def _verify_wolstenholme(args, primes) -> int:
    results = [check_wolstenholme(args.eps, args.a, args.b, p) for p in primes]
    payload = [r.to_json() for r in results]
    lines = [f"wolstenholme (eps,a,b)=({r.eps},{r.a},{r.b}) p={r.prime:<4} "
             f"lhs={r.lhs} rhs={r.rhs} mod {r.modulus}  {'ok' if r.passed else 'FAIL  SOUNDNESS ALARM'}"
             for r in results]
    rows = [["wolstenholme", r.prime, r.eps, r.a, r.b, r.lhs, r.rhs, r.passed] for r in results]
    _emit(args, lines, payload, rows, ["check", "prime", "eps", "a", "b", "lhs", "rhs", "pass"])
    return EXIT_OK if all(r.passed for r in results) else EXIT_ALARM


def _add_output(p):
    p.add_argument("--json", action="store_true", help="emit JSON (same as --format json)")
    p.add_argument("--format", choices=("text", "json", "csv"), default="text")


def _add_poly(p, with_q=True):
    p.add_argument("--vars", default="x", help="comma-separated variable names (default: x)")
    p.add_argument("--poly", help="Laurent polynomial P")
    if with_q:
        p.add_argument("--q", help="Laurent polynomial Q (default 1)")
    p.add_argument("--catalog-entry", help="use a named catalog entry instead of --poly")
    p.add_argument("--catalog", help="path to a catalog JSON file (default: built-in)")


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="ctlucas", description=__doc__.splitlines()[0])
    ap.add_argument("--version", action="version", version=f"ctlucas {__version__}")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("newton", help="digit bound M from the Newton polytope of P")
    _add_poly(p, with_q=False)
    p.add_argument("--cap", type=int, default=10**7, help="lattice-point cap for the search box")
    _add_output(p)
    p.set_defaults(func=cmd_newton)

    p = sub.add_parser("expand", help="print P in canonical form")
    _add_poly(p, with_q=False)
    _add_output(p)
    p.set_defaults(func=cmd_expand)

    p = sub.add_parser("seq", help="constant terms A(0..N) of P^n Q")
    _add_poly(p)
    p.add_argument("--n", type=int, required=True, help="largest index N")
    p.add_argument("--mod", type=int, help="reduce modulo this integer")
    _add_output(p)
    p.set_defaults(func=cmd_seq)

    p = sub.add_parser("oracle", help="values of a binomial-sum oracle")
    p.add_argument("--name", required=True, choices=sorted(ORACLES))
    p.add_argument("--n", type=int, required=True, help="largest index")
    p.add_argument("--eps", type=int, default=1)
    p.add_argument("--a", type=int, default=1)
    p.add_argument("--b", type=int, default=1)
    _add_output(p)
    p.set_defaults(func=cmd_oracle)

    p = sub.add_parser("catalog", help="list catalog entries")
    p.add_argument("--catalog", help="path to a catalog JSON file (default: built-in)")
    _add_output(p)
    p.set_defaults(func=cmd_catalog)

    p = sub.add_parser("verify", help="run a congruence sweep over primes")
    p.add_argument("kind", choices=VERIFY_KINDS)
    _add_poly(p)
    p.add_argument("--companion", help="companion polynomial Q_c for the companion check")
    p.add_argument("--primes", default="3..19", help="list or range, e.g. 3,5,7 or 3..19")
    p.add_argument("--n-max", type=int, default=20)
    p.add_argument("--m", type=int, help="override the digit bound M")
    p.add_argument("--r-max", type=int, default=2)
    p.add_argument("--source", choices=("ct", "oracle"), default="ct",
                   help="gauss: values from the constant term or the entry's oracle")
    p.add_argument("--k-lo", type=int)
    p.add_argument("--k-hi", type=int)
    p.add_argument("--eps", type=int, default=1)
    p.add_argument("--a", type=int, default=1)
    p.add_argument("--b", type=int, default=1)
    _add_output(p)
    p.set_defaults(func=cmd_verify)
    return ap


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.command == "verify" and args.kind == "companion" and args.q and not args.companion:
        # for the companion check --q names Q_c, the representation keeps Q = 1
        args.companion, args.q = args.q, None
    try:
        return args.func(args)
    except ParseError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except (CandidateExplosion, ModulusTooLarge) as exc:
        print(f"resource limit: {exc}", file=sys.stderr)
        return EXIT_RESOURCE
    except (ConfigError, InvalidParameters, ExcludedParameterTriple, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG


if __name__ == "__main__":
    sys.exit(main())
