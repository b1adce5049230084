"""Command-line front end: ``prefab count|stats|enumerate|verify``.

Exit codes: 0 success, 1 verification failure, 2 usage error,
3 enumeration cap refusal.  Every error is one stderr line starting with
``error:``.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from dataclasses import asdict, dataclass, field

from . import identities, partitions, series, stats
from .identities import Mode
from .stats import StatKind

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_CAP = 0, 1, 2, 3
DEFAULT_MAX_N = 100


class UsageError(Exception):
    pass


class CapRefusal(Exception):
    pass


@dataclass
class RunConfig:
    command: str
    spec: str | None = None
    max_n: int = DEFAULT_MAX_N
    kind: str | None = None
    k: list[int] = field(default_factory=lambda: [1])
    n: int | None = None
    theorem: str | None = None
    all: bool = False
    mode: str = "FAST"
    b: list[int] = field(default_factory=lambda: list(identities.DEFAULT_B))
    rs: list[list[int]] = field(default_factory=lambda: [list(p) for p in identities.DEFAULT_RS])
    format: str | None = None
    output: str | None = None
    cap: int = partitions.DEFAULT_CAP
    force: bool = False
    count_only: bool = False
    timing: str | None = None

    def to_json(self) -> str:
        return json.dumps(asdict(self), sort_keys=True)

    @classmethod
    def from_json(cls, text: str) -> "RunConfig":
        return cls(**json.loads(text))


# -- argument parsing --------------------------------------------------------

class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _int_list(text: str) -> list[int]:
    """``"3"``, ``"1,2,5"`` or ``"1-4"``."""
    out: list[int] = []
    try:
        for chunk in text.split(","):
            lo, sep, hi = chunk.partition("-")
            if sep and lo:
                out.extend(range(int(lo), int(hi) + 1))
            else:
                out.append(int(chunk))
    except ValueError:
        raise argparse.ArgumentTypeError(f"bad integer list {text!r}") from None
    return out


def _pair(text: str) -> list[int]:
    vals = _int_list(text)
    if len(vals) != 2:
        raise argparse.ArgumentTypeError(f"expected r,s pair, got {text!r}")
    return vals


def build_parser() -> argparse.ArgumentParser:
    fmt = argparse.ArgumentDefaultsHelpFormatter
    common = _Parser(add_help=False)
    common.add_argument("--format", choices=["text", "json", "csv"], default=None,
                        help="output format (default depends on the subcommand)")
    common.add_argument("--output", default=None, help="write primary output to this file instead of stdout")
    common.add_argument("--seedless", action="store_true",
                        help="accepted for compatibility; output is always deterministic")
    common.add_argument("--print-config", action="store_true", help="print the parsed run config as JSON and exit")

    parser = _Parser(prog="prefab", description="Colored partition counts, statistics and identity checks.",
                     formatter_class=fmt)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("count", parents=[common], formatter_class=fmt, help="coefficients h(0..N) of a product")
    p.add_argument("--spec", default="uniform:1", help="name[:p1[,p2]]")
    p.add_argument("--max-n", type=int, default=DEFAULT_MAX_N, help="largest weight n")

    p = sub.add_parser("stats", parents=[common], formatter_class=fmt, help="a statistic over n = 0..N")
    p.add_argument("--kind", required=True, help="F, G, H, Fo, Go, Fd, Fgen, Obar, Oover, Tbar, Fbar1, Gbar1, Gbar3 "
                   "or a full kind name such as F_ODD")
    p.add_argument("--spec", default="uniform:1", help="name[:p1[,p2]]")
    p.add_argument("--k", "--m", dest="k", type=_int_list, default=[1], help="index list: 3, 1,2,5 or 1-4")
    p.add_argument("--max-n", type=int, default=DEFAULT_MAX_N, help="largest weight n")

    p = sub.add_parser("enumerate", parents=[common], formatter_class=fmt, help="list all colored partitions of n")
    p.add_argument("--spec", default="uniform:1", help="name[:p1[,p2]]")
    p.add_argument("--n", type=int, required=True, help="weight to enumerate")
    p.add_argument("--count-only", action="store_true", help="print only the number of partitions")
    p.add_argument("--cap", type=int, default=partitions.DEFAULT_CAP, help="largest n enumerated without --force")
    p.add_argument("--force", action="store_true", help="enumerate beyond the cap")

    p = sub.add_parser("verify", parents=[common], formatter_class=fmt, help="check theorems over a range")
    which = p.add_mutually_exclusive_group(required=True)
    which.add_argument("--theorem", help=f"one of {', '.join(identities.SLUGS)}")
    which.add_argument("--all", action="store_true", help="every theorem over the default grid")
    p.add_argument("--max-n", type=int, default=DEFAULT_MAX_N, help="largest weight n")
    p.add_argument("--mode", type=str.upper, choices=[m.value for m in Mode], default="FAST",
                   help="fast closed forms, enumeration, or both compared")
    p.add_argument("--b", type=_int_list, default=list(identities.DEFAULT_B), help="color counts b")
    p.add_argument("--rs", type=_pair, action="append", default=None,
                   help="(r,s) color pair, repeatable (default 1,1 2,1 1,2)")
    p.add_argument("--cap", type=int, default=partitions.DEFAULT_CAP, help="largest n checked by enumeration")
    p.add_argument("--json", action="store_true", help="same as --format json")
    p.add_argument("--timing", default=None, help="write elapsed times to this JSON sidecar file")
    return parser


def parse_config(argv) -> tuple[RunConfig, bool]:
    args = build_parser().parse_args(argv)
    cfg = RunConfig(command=args.command, format=args.format, output=args.output)
    if args.command in ("count", "stats", "verify"):
        cfg.max_n = args.max_n
        if cfg.max_n < 0:
            raise UsageError(f"--max-n must be >= 0, got {cfg.max_n}")
    if args.command in ("count", "stats", "enumerate"):
        cfg.spec = args.spec
    if args.command == "stats":
        cfg.kind, cfg.k = args.kind, args.k
        if any(k < 1 for k in cfg.k):
            raise UsageError("--k values must be >= 1")
    elif args.command == "enumerate":
        cfg.n, cfg.count_only, cfg.cap, cfg.force = args.n, args.count_only, args.cap, args.force
        if cfg.n < 0:
            raise UsageError(f"--n must be >= 0, got {cfg.n}")
    elif args.command == "verify":
        cfg.theorem, cfg.all, cfg.mode, cfg.cap, cfg.timing = args.theorem, args.all, args.mode, args.cap, args.timing
        cfg.b = args.b
        if args.rs is not None:
            cfg.rs = args.rs
        if args.json:
            cfg.format = "json"
        if cfg.theorem is not None:
            try:
                identities.theorem_from_name(cfg.theorem)
            except ValueError as exc:
                raise UsageError(str(exc)) from None
    if cfg.spec is not None:
        _spec(cfg, 0)  # reject bad selectors before computing anything
    return cfg, args.print_config


def _spec(cfg: RunConfig, N: int) -> series.FactorSpec:
    try:
        return series.parse_spec(cfg.spec, N)
    except series.SeriesError as exc:
        raise UsageError(str(exc)) from None


# -- commands ----------------------------------------------------------------

_KIND_ALIASES = {
    "h": StatKind.H_UNIFORM,
    "fo": StatKind.F_ODD,
    "go": StatKind.G_ODD,
    "fd": StatKind.F_DISTINCT,
    "fgen": StatKind.F_GENERAL,
    "obar": StatKind.OBAR_M,
    "oover": StatKind.O_OVERLINED_M,
    "tbar": StatKind.TBAR_M,
    "fbar1": StatKind.FBAR_1,
    "gbar1": StatKind.GBAR_1,
    "gbar3": StatKind.GBAR_3,
}
_F_BY_FAMILY = {"uniform": StatKind.F_UNIFORM, "kcolors": StatKind.F_KCOLORS, "odd": StatKind.F_ODD,
                "distinct": StatKind.F_DISTINCT, "overpartition": StatKind.F_UNIFORM,
                "oddoverlined": StatKind.F_UNIFORM}
_G_BY_FAMILY = {"uniform": StatKind.G_UNIFORM, "kcolors": StatKind.G_KCOLORS, "odd": StatKind.G_ODD,
                "overpartition": StatKind.G_UNIFORM, "oddoverlined": StatKind.G_UNIFORM}


def resolve_kind(name: str, spec: series.FactorSpec) -> StatKind:
    key = name.strip()
    if key.lower() == "f":
        return _F_BY_FAMILY.get(spec.name, StatKind.F_GENERAL)
    if key.lower() == "g":
        if spec.name not in _G_BY_FAMILY:
            raise UsageError(f"G has no closed form for {spec.label}; valid specs: {', '.join(_G_BY_FAMILY)}")
        return _G_BY_FAMILY[spec.name]
    if key.lower() in _KIND_ALIASES:
        return _KIND_ALIASES[key.lower()]
    try:
        return StatKind(key.upper())
    except ValueError:
        raise UsageError(f"unknown statistic {name!r}") from None


def cmd_count(cfg: RunConfig) -> tuple[str, int]:
    s = series.expand(_spec(cfg, cfg.max_n), cfg.max_n)
    fmt = cfg.format or "text"
    if fmt == "json":
        return s.dumps() + "\n", EXIT_OK
    if fmt == "csv":
        return "n,value\n" + "".join(f"{n},{c}\n" for n, c in enumerate(s.coeffs)), EXIT_OK
    return "".join(f"{n} {c}\n" for n, c in enumerate(s.coeffs)), EXIT_OK


def cmd_stats(cfg: RunConfig) -> tuple[str, int]:
    spec = _spec(cfg, cfg.max_n)
    kind = resolve_kind(cfg.kind, spec)
    try:
        table = stats.build_table(kind, spec, cfg.k, cfg.max_n)
    except stats.KindMismatchError as exc:
        raise UsageError(str(exc)) from None
    fmt = cfg.format or "csv"
    if fmt == "json":
        return table.dumps() + "\n", EXIT_OK
    if fmt == "csv":
        return table.to_csv(), EXIT_OK
    lines = [f"{table.kind.value} {spec.label}"] + [f"k={k} n={n} {v}" for k, n, v in table.rows()]
    return "\n".join(lines) + "\n", EXIT_OK


def cmd_enumerate(cfg: RunConfig, out) -> int:
    if cfg.n > cfg.cap and not cfg.force:
        raise CapRefusal(f"n={cfg.n} exceeds the enumeration cap {cfg.cap}; pass --force or raise --cap")
    spec = _spec(cfg, cfg.n)
    if cfg.count_only:
        out.write(f"{sum(1 for _ in partitions.enumerate_partitions(cfg.n, spec))}\n")
        return EXIT_OK
    text = (cfg.format or "json") == "text"
    for pi in partitions.enumerate_partitions(cfg.n, spec):
        out.write((partitions.format_partition(pi, spec) if text else pi.dumps()) + "\n")
    return EXIT_OK


def cmd_verify(cfg: RunConfig) -> tuple[str, int, list]:
    mode = Mode(cfg.mode)
    if mode is Mode.ORACLE and cfg.max_n > cfg.cap:
        raise CapRefusal(f"max_n={cfg.max_n} exceeds the enumeration cap {cfg.cap} in ORACLE mode")
    if cfg.all:
        reports = identities.verify_all(cfg.max_n, cfg.b, [tuple(p) for p in cfg.rs], mode, cfg.cap)
    else:
        tid = identities.theorem_from_name(cfg.theorem)
        th = identities.THEOREMS[tid]
        params = th.default_params(cfg.b, [tuple(p) for p in cfg.rs])
        try:
            reports = [identities.verify(tid, params, cfg.max_n, mode, cfg.cap)]
        except identities.EmptyRangeError as exc:
            reports = [identities.IdentityReport(tid, params, (1, cfg.max_n), th.k_text, mode, error=str(exc))]
    ok = all(r.passed for r in reports)
    if (cfg.format or "text") == "json":
        text = identities.dumps_reports(reports) + "\n"
    elif cfg.format == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["theorem", "params", "max_n", "mode", "checked", "failures", "passed", "error"])
        for r in reports:
            params = ";".join(str(identities._param_json(p)) for p in r.params if p is not None)
            w.writerow([r.theorem.value, params, r.range_n[1], r.mode.value, r.checked, r.failure_count,
                        r.passed, r.error or ""])
        text = buf.getvalue()
    else:
        lines = [r.summary() for r in reports]
        for r in reports:
            for f in r.failures[:5]:
                lines.append(f"  counterexample {r.theorem.value}: {json.dumps(f)}")
        lines.append("ALL PASS" if ok else "FAILED")
        text = "\n".join(lines) + "\n"
    return text, EXIT_OK if ok else EXIT_FAIL, reports


def _emit(cfg: RunConfig, text: str) -> None:
    if cfg.output:
        with open(cfg.output, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def main(argv=None) -> int:
    try:
        cfg, print_config = parse_config(argv)
        if print_config:
            sys.stdout.write(cfg.to_json() + "\n")
            return EXIT_OK
        if cfg.command == "count":
            text, code = cmd_count(cfg)
        elif cfg.command == "stats":
            text, code = cmd_stats(cfg)
        elif cfg.command == "enumerate":
            if cfg.output:
                with open(cfg.output, "w") as fh:
                    return cmd_enumerate(cfg, fh)
            return cmd_enumerate(cfg, sys.stdout)
        else:
            text, code, reports = cmd_verify(cfg)
            if cfg.timing:
                with open(cfg.timing, "w") as fh:
                    json.dump({r.theorem.value: round(r.elapsed, 6) for r in reports}, fh, indent=1)
        _emit(cfg, text)
        return code
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (CapRefusal, partitions.OracleCapError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CAP
    except (series.SeriesError, ValueError, IndexError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
