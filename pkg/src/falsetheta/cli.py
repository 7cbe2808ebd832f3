"""Command-line front end.

Every subcommand is a thin wrapper over library calls. JSON output is
deterministic: no timings, fixed key order. Exit status is 0 on success,
1 when an identity or conjecture check fails, 2 on usage or input errors.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import re
import sys
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Any, Sequence

from . import asymptotics as asy
from . import identities as ids
from . import mex as mexmod
from . import scanner
from .series import ModSeries, dumps_series, read_series, reciprocal, reduce_mod
from .theta import SpecParseError, eta_product, expand_theta, parse_eta, parse_theta

EXIT_OK, EXIT_FAILED, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


@dataclass
class RunConfig:
    command: str
    trunc: int | None = None
    modulus: int | None = None
    specs: list[str] = field(default_factory=list)
    output: str = "text"
    output_path: str | None = None
    options: dict[str, Any] = field(default_factory=dict)

    def __post_init__(self):
        if self.trunc is not None and self.trunc < 0:
            raise UsageError(f"--trunc must be non-negative, got {self.trunc}")
        if self.modulus is not None and self.modulus < 2:
            raise UsageError(f"--mod must be at least 2, got {self.modulus}")
        if self.output not in ("text", "json", "csv"):
            raise UsageError(f"unknown output format {self.output!r}")


def _dump_json(obj) -> str:
    return json.dumps(obj, indent=2) + "\n"


def _csv(rows: Sequence[dict]) -> str:
    buf = io.StringIO()
    if rows:
        writer = csv.DictWriter(buf, fieldnames=list(rows[0]), lineterminator="\n")
        writer.writeheader()
        writer.writerows(rows)
    return buf.getvalue()


def _is_theta(text: str) -> bool:
    return re.match(r"\s*(f|psi|Psi)\s*\(", text) is not None


# ---------------------------------------------------------------------------
# commands: each returns (exit status, text to emit)
# ---------------------------------------------------------------------------

def _cmd_expand(cfg: RunConfig) -> tuple[int, str]:
    opts = cfg.options
    if opts.get("input"):
        series = read_series(opts["input"])
        label = opts["input"]
        if cfg.trunc is not None:
            series = series.truncate(min(cfg.trunc, series.trunc))
    else:
        if not cfg.specs:
            raise UsageError("expand needs a spec string or --input FILE")
        if cfg.trunc is None:
            raise UsageError("expand needs --trunc")
        label = cfg.specs[0]
        if _is_theta(label):
            series = expand_theta(parse_theta(label), cfg.trunc)
        else:
            series = eta_product(parse_eta(label), cfg.trunc)
    if cfg.modulus is not None:
        series = reduce_mod(series, cfg.modulus)
    if opts.get("reciprocal"):
        series = reciprocal(series)
        label = f"1/({label})"
    if cfg.output == "text":
        return EXIT_OK, dumps_series(series)
    coeffs = [int(c) for c in series]
    if cfg.output == "csv":
        return EXIT_OK, _csv([{"n": n, "coeff": c} for n, c in enumerate(coeffs)])
    return EXIT_OK, _dump_json({
        "spec": label, "trunc": series.trunc,
        "modulus": series.modulus if isinstance(series, ModSeries) else "exact",
        "coeffs": coeffs,
    })


def _verify_one(identity_id: str, trunc, modulus):
    return ids.verify_registry_identity(identity_id, trunc, modulus)


def _cmd_verify(cfg: RunConfig) -> tuple[int, str]:
    targets = ids.registry_ids() if cfg.options.get("all") else cfg.specs
    if not targets:
        raise UsageError("verify needs an identity id or --all")
    unknown = [t for t in targets if t not in ids.REGISTRY]
    if unknown:
        raise UsageError(f"unknown identity {unknown[0]!r}; known: {', '.join(ids.registry_ids())}")
    workers = min(scanner.worker_count(), len(targets))
    if workers > 1:
        with ThreadPoolExecutor(workers) as pool:
            reports = list(pool.map(lambda t: _verify_one(t, cfg.trunc, cfg.modulus), targets))
    else:
        reports = [_verify_one(t, cfg.trunc, cfg.modulus) for t in targets]
    status = EXIT_OK if all(r.ok for r in reports) else EXIT_FAILED
    if cfg.output == "json":
        payload = [r.to_dict() for r in reports]
        return status, _dump_json(payload[0] if len(payload) == 1 and not cfg.options.get("all") else payload)
    if cfg.output == "csv":
        rows = [{k: v for k, v in r.to_dict().items() if k not in ("details", "warnings")} for r in reports]
        return status, _csv(rows)
    lines = []
    for r in reports:
        tail = "" if r.ok else f" first mismatch at q^{r.first_mismatch}"
        lines.append(f"{r.identity_id}: {r.status} to trunc {r.trunc} (modulus {r.modulus}){tail}")
    return status, "\n".join(lines) + "\n"


def _cmd_scan(cfg: RunConfig) -> tuple[int, str]:
    o = cfg.options
    if cfg.trunc is None:
        raise UsageError("scan needs --trunc")
    modulus = cfg.modulus or 2
    series = ids.c_t_series(o["t"], cfg.trunc, modulus)
    progs = scanner.scan_progressions(series, o["amax"], o["min_hits"])
    rows = [p.to_dict() for p in progs]
    if cfg.output == "json":
        return EXIT_OK, _dump_json(rows)
    if cfg.output == "csv":
        return EXIT_OK, _csv(rows)
    lines = [f"c_{o['t']}({p.A}n+{p.B}) == 0 mod {p.modulus}, checked to {p.verified_upto}" for p in progs]
    return EXIT_OK, "\n".join(lines + [f"{len(progs)} progressions"]) + "\n"


def _cmd_asymptotics(cfg: RunConfig) -> tuple[int, str]:
    o = cfg.options
    n = o["n"]
    window = tuple(o["window"]) if o.get("window") else (n // 2, n)
    if o["t"] == 2:
        seq = asy.c2_by_recurrence(n)
        sandwich, _ = asy.sandwich_holds(n)
        r7 = asy.largest_real_root(asy.UPPER_RECURRENCE.char_poly)
        r26 = asy.largest_real_root(asy.LOWER_RECURRENCE.char_poly)
    else:
        seq = list(ids.c_t_series(o["t"], n).coeffs)
        sandwich = r7 = r26 = None
    lo, hi = asy.growth_ratio(seq, window)
    out = {"t": o["t"], "n": n, "window": list(window), "ratio_lo": lo, "ratio_hi": hi,
           "root_deg7": r7, "root_deg26": r26, "sandwich_ok": sandwich}
    status = EXIT_OK if sandwich in (True, None) else EXIT_FAILED
    if cfg.output == "json":
        return status, _dump_json(out)
    if cfg.output == "csv":
        return status, _csv([out])
    lines = [f"c_{o['t']}: ratio in [{lo:.12f}, {hi:.12f}] over n in [{window[0]}, {window[1]})"]
    if r7 is not None:
        lines.append(f"dominant roots: degree 7 {r7:.9f}, degree 26 {r26:.9f}")
        lines.append(f"b(n) <= c_2(n) <= a(n) for n <= {n}: {sandwich}")
    return status, "\n".join(lines) + "\n"


def _cmd_mex(cfg: RunConfig) -> tuple[int, str]:
    rows = mexmod.mex_table(cfg.options["k"], cfg.options["n"])
    if cfg.output == "json":
        return EXIT_OK, _dump_json(rows)
    if cfg.output == "csv":
        return EXIT_OK, _csv(rows)
    lines = ["n\tgf_coeff\toracle_count\tdiff_sum"] + [
        f"{r['n']}\t{r['gf_coeff']}\t{r['oracle_count']}\t{r['diff_sum']}" for r in rows]
    return EXIT_OK, "\n".join(lines) + "\n"


def _cmd_conjectures(cfg: RunConfig) -> tuple[int, str]:
    targets = cfg.specs or list(scanner.CONJECTURES)
    trunc = 20000 if cfg.trunc is None else cfg.trunc
    for t in targets:
        if t not in scanner.CONJECTURES:
            raise UsageError(f"unknown conjecture {t!r}; known: {', '.join(scanner.CONJECTURES)}")
    reports = [scanner.check_conjecture(t, trunc) for t in targets]
    status = EXIT_OK if all(r.ok for r in reports) else EXIT_FAILED
    if cfg.output == "json":
        return status, _dump_json([r.to_dict() for r in reports])
    if cfg.output == "csv":
        rows = [dict(conjecture=r.conjecture_id, **e.to_dict()) for r in reports for e in r.entries]
        return status, _csv(rows)
    lines = []
    for r in reports:
        lines.append(f"{r.conjecture_id} ({r.label}, to {r.trunc}): {'pass' if r.ok else 'fail'}")
        for e in r.entries:
            tail = "" if e.status == "pass" else f", first counterexample {e.first_counterexample}"
            lines.append(f"  c_{e.t}({e.A}n+{e.B}) == 0 mod {e.modulus}: {e.status}{tail}")
    return status, "\n".join(lines) + "\n"


COMMANDS = {
    "expand": _cmd_expand,
    "verify": _cmd_verify,
    "scan": _cmd_scan,
    "asymptotics": _cmd_asymptotics,
    "mex": _cmd_mex,
    "conjectures": _cmd_conjectures,
}


def run(cfg: RunConfig) -> tuple[int, str]:
    return COMMANDS[cfg.command](cfg)


# ---------------------------------------------------------------------------
# argument parsing
# ---------------------------------------------------------------------------

def _add_output(p: argparse.ArgumentParser, csv_ok: bool = True):
    choices = ["text", "json", "csv"] if csv_ok else ["text", "json"]
    p.add_argument("--format", choices=choices, default="text", dest="fmt")
    p.add_argument("--json", action="store_const", const="json", dest="fmt", help="shorthand for --format json")
    p.add_argument("--output", "-o", metavar="PATH", help="write to PATH instead of stdout")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="falsetheta",
        description="Truncated q-series: theta and false theta expansions, reciprocals and congruence checks.")
    parser.add_argument("--seed-acceptance", action="store_true",
                        help="run the acceptance checks and print a scoreboard")
    sub = parser.add_subparsers(dest="command")

    p = sub.add_parser("expand", help="expand a theta, false theta or eta-product spec")
    p.add_argument("spec", nargs="?", help='e.g. "psi(-q^5,q)" or "q * f1^2 * f10^6"')
    p.add_argument("--input", metavar="FILE", help="read a series in the text interchange format")
    p.add_argument("--trunc", type=int)
    p.add_argument("--mod", type=int, dest="modulus")
    p.add_argument("--reciprocal", action="store_true")
    _add_output(p)

    p = sub.add_parser("verify", help="verify a registered identity to a truncation bound")
    p.add_argument("identity", nargs="*")
    p.add_argument("--all", action="store_true", help="verify every registered identity")
    p.add_argument("--trunc", type=int)
    p.add_argument("--mod", type=int, dest="modulus")
    _add_output(p)

    p = sub.add_parser("scan", help="search c_t for zero progressions mod m")
    p.add_argument("--t", type=int, required=True)
    p.add_argument("--mod", type=int, dest="modulus", default=2)
    p.add_argument("--amax", type=int, default=64)
    p.add_argument("--min-hits", type=int, default=50)
    p.add_argument("--trunc", type=int, required=True)
    _add_output(p)

    p = sub.add_parser("asymptotics", help="growth ratios and bounding recurrences")
    p.add_argument("--t", type=int, default=2)
    p.add_argument("--n", type=int, default=2000)
    p.add_argument("--window", type=int, nargs=2, metavar=("N0", "N1"))
    _add_output(p)

    p = sub.add_parser("mex", help="tabulate M_k(n) three ways")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--n", type=int, required=True)
    _add_output(p)

    p = sub.add_parser("conjectures", help="check the empirical congruence tables")
    p.add_argument("ids", nargs="*")
    p.add_argument("--trunc", type=int)
    _add_output(p)
    return parser


def _config_from_args(args: argparse.Namespace) -> RunConfig:
    cmd = args.command
    common = dict(command=cmd, output=args.fmt, output_path=args.output)
    if cmd == "expand":
        return RunConfig(trunc=args.trunc, modulus=args.modulus, specs=[args.spec] if args.spec else [],
                         options={"input": args.input, "reciprocal": args.reciprocal}, **common)
    if cmd == "verify":
        return RunConfig(trunc=args.trunc, modulus=args.modulus, specs=list(args.identity),
                         options={"all": args.all}, **common)
    if cmd == "scan":
        if args.t < 1 or args.amax < 1 or args.min_hits < 1:
            raise UsageError("--t, --amax and --min-hits must be positive")
        return RunConfig(trunc=args.trunc, modulus=args.modulus,
                         options={"t": args.t, "amax": args.amax, "min_hits": args.min_hits}, **common)
    if cmd == "asymptotics":
        if args.t < 1 or args.n < 2:
            raise UsageError("--t must be positive and --n at least 2")
        return RunConfig(options={"t": args.t, "n": args.n, "window": args.window}, **common)
    if cmd == "mex":
        if args.k < 1 or args.n < 0:
            raise UsageError("--k must be positive and --n non-negative")
        return RunConfig(options={"k": args.k, "n": args.n}, **common)
    return RunConfig(trunc=args.trunc, specs=list(args.ids), **common)


def _emit(text: str, path: str | None):
    if path:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    if args.seed_acceptance:
        from .acceptance import run_all, scoreboard

        results = run_all()
        print(scoreboard(results))
        return EXIT_OK if all(r.passed for r in results) else EXIT_FAILED
    if args.command is None:
        parser.print_usage(sys.stderr)
        return EXIT_USAGE
    try:
        cfg = _config_from_args(args)
        status, text = run(cfg)
    except SpecParseError as exc:
        print(f"falsetheta: parse error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (UsageError, ValueError, KeyError, OSError) as exc:
        msg = exc.args[0] if isinstance(exc, KeyError) and exc.args else exc
        print(f"falsetheta: error: {msg}", file=sys.stderr)
        return EXIT_USAGE
    _emit(text, cfg.output_path)
    return status


if __name__ == "__main__":
    sys.exit(main())
