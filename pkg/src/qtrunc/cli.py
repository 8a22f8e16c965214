"""Command-line front end.

Exit codes: 0 success (identity equal, scan clean, conjecture scan run),
1 identity unequal or a proven inequality violated, 2 configuration error.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import os
import re
import sys
from fractions import Fraction

from .errors import QTruncError
from .identities import CATALOG, Budget, FormalVar, MonoSpec, get, sweep, verify_many
from .identities.core import INT, NAT, PARAM, RATIONAL

EXIT_OK, EXIT_FAIL, EXIT_CONFIG = 0, 1, 2


class ConfigError(Exception):
    pass


# -- binding values ----------------------------------------------------------------

_NUM = r"[+-]?\d+(?:/\d+)?"
_FACTOR = re.compile(
    r"(?P<var>[qz])(?:\^(?:\{(?P<b>%s)\}|\((?P<p>%s)\)|(?P<n>%s)))?$" % (_NUM, _NUM, _NUM)
)


def parse_fraction(text: str) -> Fraction:
    try:
        return Fraction(text.strip())
    except (ValueError, ZeroDivisionError):
        raise ConfigError(f"not a rational number: {text!r}") from None


def parse_monomial(text: str) -> MonoSpec:
    """``[+-][c*]q^e[*z^f]...`` with rational exponents written ``3``,
    ``3/2``, ``(3/2)`` or ``{3/2}``; a bare integer is a constant."""
    s = text.strip().replace(" ", "")
    if not s:
        raise ConfigError("empty monomial")
    sign = 1
    if s[0] in "+-":
        sign = -1 if s[0] == "-" else 1
        s = s[1:]
    coeff = 1
    exps: dict[str, Fraction] = {}
    for i, piece in enumerate(s.split("*")):
        if i == 0 and re.fullmatch(r"\d+", piece):
            coeff = int(piece)
            continue
        m = _FACTOR.match(piece)
        if not m:
            raise ConfigError(f"malformed monomial factor {piece!r} in {text!r}")
        e = m.group("b") or m.group("p") or m.group("n") or "1"
        exps[m.group("var")] = exps.get(m.group("var"), Fraction(0)) + Fraction(e)
    if coeff == 0:
        raise ConfigError(f"zero coefficient in {text!r}")
    order = [v for v in ("q", "z") if v in exps and exps[v] != 0]
    return MonoSpec(sign * coeff, tuple((v, exps[v]) for v in order))


def parse_binding(entry, item: str):
    if "=" not in item:
        raise ConfigError(f"binding {item!r} is not of the form name=value")
    name, value = (x.strip() for x in item.split("=", 1))
    kind = next((p.kind for p in entry.params if p.name == name), None)
    if kind is None:
        raise ConfigError(f"{entry.tag} has no parameter {name!r} (free: {', '.join(entry.free) or 'none'})")
    if kind in (INT, NAT):
        try:
            return name, int(value)
        except ValueError:
            raise ConfigError(f"{name} needs an integer, got {value!r}") from None
    if kind == RATIONAL:
        return name, parse_fraction(value)
    if kind == PARAM:
        m = re.fullmatch(r"formal(?:\((\d+)\))?", value)
        if m:
            return name, FormalVar(name, int(m.group(1)) if m.group(1) else None)
        return name, parse_monomial(value)
    raise ConfigError(f"unsupported parameter kind {kind}")


def parse_window(text: str) -> tuple[int, int]:
    m = re.fullmatch(r"\s*\[?\s*(-?\d+)\s*[,:]\s*(-?\d+)\s*\]?\s*", text)
    if not m:
        raise ConfigError(f"z window must look like -20,20; got {text!r}")
    lo, hi = int(m.group(1)), int(m.group(2))
    if lo > 0 or hi < 0:
        raise ConfigError("z window must contain 0")
    return lo, hi


# -- output ----------------------------------------------------------------------

def _emit(text: str, out: str | None):
    if out:
        with open(out, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _json(payload) -> str:
    return json.dumps(payload, indent=1, sort_keys=True) + "\n"


def _reports_text(reports) -> str:
    lines = []
    for r in reports:
        b = " ".join(f"{k}={v}" for k, v in r.to_dict(False)["bindings"].items())
        status = "equal" if r.equal else f"UNEQUAL at {r.first_diff}"
        lines.append(f"{r.identity} [{b}] q<={r.q_cap}: {status}")
    return "\n".join(lines) + "\n"


def _reports_csv(reports) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["identity", "bindings", "q_cap", "equal", "first_diff"])
    for r in reports:
        d = r.to_dict(False)
        w.writerow([r.identity, json.dumps(d["bindings"], sort_keys=True), r.q_cap, r.equal,
                    json.dumps(d["first_diff"], sort_keys=True) if d["first_diff"] else ""])
    return buf.getvalue()


# -- commands --------------------------------------------------------------------

def cmd_verify(args) -> int:
    budget = Budget(args.qcap, parse_window(args.zwindow), args.param_degree)
    if args.all:
        jobs = [(tag, b, budget) for tag in CATALOG for b in sweep(tag)]
    else:
        if not args.id:
            raise ConfigError("verify needs --id TAG or --all")
        entry = get(args.id)
        if args.sweep:
            if args.bind:
                raise ConfigError("--sweep and --bind are exclusive")
            jobs = [(entry.tag, b, budget) for b in sweep(entry.tag)]
        else:
            binding = dict(parse_binding(entry, item) for item in args.bind)
            missing = [p for p in entry.free if p not in binding]
            if missing:
                raise ConfigError(f"{entry.tag}: missing bindings for {', '.join(missing)}")
            jobs = [(entry.tag, binding, budget)]
    # validate every job before spending time on any of them
    from .identities.core import normalize_binding, validate_binding

    for tag, b, _ in jobs:
        e = get(tag)
        validate_binding(e, normalize_binding(e, b))
    reports = verify_many(jobs, args.jobs)
    if args.format == "json":
        payload = [r.to_dict(timing=not args.no_timing) for r in reports]
        text = _json(payload[0] if len(payload) == 1 else payload)
    elif args.format == "csv":
        text = _reports_csv(reports)
    else:
        text = _reports_text(reports)
    _emit(text, args.out)
    return EXIT_OK if all(r.equal for r in reports) else EXIT_FAIL


def _scan_result(args):
    from . import analysis
    from .identities import verify_conjecture_nonneg

    if args.scan == "corineq":
        families = [args.family] if args.family else ["I", "II"]
        whichs = [args.which] if args.which else list(analysis.WHICH)
        m_max = args.nmax if args.mmax is None else args.mmax
        results = [analysis.scan_cor_ineq(f, w, args.kmax, args.nmax, m_max, k_min=args.kmin, workers=args.jobs)
                   for f in families for w in whichs]
        return results, True
    if args.scan == "corn":
        stats = [args.stat] if args.stat else list(analysis.CORN)
        m_max = args.nmax if args.mmax is None else args.mmax
        results = [analysis.scan_corn(s, args.kmax, args.nmax, m_max, k_min=args.kmin, n_min=args.nmin)
                   for s in stats]
        return results, True
    if args.scan == "amconj":
        ks = [args.k] if args.k is not None else list(range(1, args.kmax + 1))
        results = []
        for k in ks:
            rep = verify_conjecture_nonneg(k, args.R, args.S, args.qcap)
            results.append(analysis.ScanResult(
                f"amconj:R={args.R}:S={args.S}",
                {"k": [k, k], "m": [1, args.qcap]},
                [(k, m, None, c) for m, c in rep.violations],
                args.qcap,
                rep.elapsed * 1000,
            ))
        return results, False
    if args.scan == "unimodal":
        return [analysis.scan_unimodal(args.kmax, args.nmax, k_min=args.kmin)], False
    raise ConfigError(f"unknown scan {args.scan!r}")


def cmd_scan(args) -> int:
    for name in ("kmax", "nmax", "qcap"):
        v = getattr(args, name, None)
        if v is not None and v < 0:
            raise ConfigError(f"--{name} must be >= 0")
    results, proven = _scan_result(args)
    timing = not args.no_timing
    if args.format == "text":
        lines = []
        for r in results:
            lines.append(f"{r.scan} {json.dumps(r.ranges, sort_keys=True)}: {r.count} cells, "
                         f"{len(r.violations)} violations")
            lines += [f"  k={k} m={m} n={n} value={v}" for k, m, n, v in r.violations]
        text = "\n".join(lines) + "\n"
    else:
        payload = [r.to_dict(timing) for r in results]
        text = _json(payload[0] if len(payload) == 1 else payload)
    _emit(text, args.out)
    if proven and any(r.violations for r in results):
        return EXIT_FAIL
    return EXIT_OK


def cmd_table(args) -> int:
    from .partitions import NEEDS_K, gf_coefficients

    if args.stat in NEEDS_K and args.k is None:
        raise ConfigError(f"--stat {args.stat} needs --k")
    if args.nmax < 0:
        raise ConfigError("--nmax must be >= 0")
    table = gf_coefficients(args.stat, args.nmax, k=args.k, m_max=args.mmax, cache=not args.no_cache)
    _emit(table.to_json() if args.format == "json" else table.to_csv(), args.out)
    return EXIT_OK


# -- parser ----------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    from .partitions import STATS

    ap = argparse.ArgumentParser(prog="qtrunc", description="Truncated q-series identities and partition scans.")
    ap.add_argument("--cache-dir", help="table cache directory (overrides QTRUNC_CACHE_DIR)")
    sub = ap.add_subparsers(dest="command", required=True)

    v = sub.add_parser("verify", help="verify catalog identities")
    v.add_argument("--id", help="identity tag, e.g. PNT or MTH2")
    v.add_argument("--bind", action="append", default=[], metavar="NAME=VALUE",
                   help="parameter binding, e.g. k=2, a=-q^2, alpha=1/2, t=formal")
    v.add_argument("--sweep", action="store_true", help="run the entry's standard binding sweep")
    v.add_argument("--all", action="store_true", help="run every entry over its standard sweep")
    v.add_argument("--qcap", type=int, default=40)
    v.add_argument("--zwindow", default="-20,20")
    v.add_argument("--param-degree", type=int, default=10)
    v.add_argument("--format", choices=("json", "csv", "text"), default="json")
    v.add_argument("--out")
    v.add_argument("--jobs", type=int, default=1)
    v.add_argument("--no-timing", action="store_true", help="omit the timing metadata field")
    v.set_defaults(func=cmd_verify)

    s = sub.add_parser("scan", help="run an inequality or conjecture scan")
    s.add_argument("scan", choices=("corineq", "corn", "amconj", "unimodal"))
    s.add_argument("--family", choices=("I", "II"))
    s.add_argument("--which", choices=("nonneg", "shift_minus", "shift_plus"))
    s.add_argument("--stat", choices=("JE", "JT", "JG"))
    s.add_argument("--kmin", type=int, default=0)
    s.add_argument("--kmax", type=int, default=3)
    s.add_argument("--nmin", type=int, default=0)
    s.add_argument("--nmax", type=int, default=30)
    s.add_argument("--mmax", type=int)
    s.add_argument("--k", type=int)
    s.add_argument("--R", type=int, default=3)
    s.add_argument("--S", type=int, default=1)
    s.add_argument("--qcap", type=int, default=40)
    s.add_argument("--format", choices=("json", "text"), default="json")
    s.add_argument("--out")
    s.add_argument("--jobs", type=int, default=1)
    s.add_argument("--no-timing", action="store_true")
    s.set_defaults(func=cmd_scan)

    t = sub.add_parser("table", help="emit a partition-statistic coefficient table")
    t.add_argument("--stat", required=True, choices=STATS)
    t.add_argument("--nmax", type=int, required=True)
    t.add_argument("--k", type=int)
    t.add_argument("--mmax", type=int)
    t.add_argument("--format", choices=("csv", "json"), default="csv")
    t.add_argument("--out")
    t.add_argument("--no-cache", action="store_true")
    t.set_defaults(func=cmd_table)
    return ap


def main(argv=None) -> int:
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as e:
        return int(e.code) if e.code is not None else EXIT_OK
    if args.cache_dir:
        os.environ["QTRUNC_CACHE_DIR"] = args.cache_dir
    try:
        return args.func(args)
    except (ConfigError, QTruncError, ValueError) as e:
        print(f"qtrunc: error: {e}", file=sys.stderr)
        return EXIT_CONFIG


if __name__ == "__main__":
    sys.exit(main())
