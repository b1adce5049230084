"""Theorem sweeps.

Each theorem is a set of equations whose two sides are integer (or, for
mutations, rational) combinations of statistics.  A side is evaluated
either by the closed forms in :mod:`prefab.stats` (FAST) or by brute-force
enumeration (ORACLE); BOTH runs the fast sweep and also compares the two
evaluators wherever the enumeration cap allows.
"""
from __future__ import annotations

import enum
import json
import time
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Iterable, NamedTuple, Sequence

from . import partitions, series
from .series import FactorSpec
from .stats import StatEngine, StatKind

MAX_FAILURES = 32
DEFAULT_B = (1, 2, 3)
DEFAULT_RS = ((1, 1), (2, 1), (1, 2))


class Mode(str, enum.Enum):
    FAST = "FAST"
    ORACLE = "ORACLE"
    BOTH = "BOTH"


class TheoremId(str, enum.Enum):
    SEF_CLASSIC = "SEF_CLASSIC"
    SEF_BCOLORED = "SEF_BCOLORED"
    ANDREWS_MERCA_H = "ANDREWS_MERCA_H"
    ODD_SUM = "ODD_SUM"
    DISTINCT_DIFF = "DISTINCT_DIFF"
    KCOLORS = "KCOLORS"
    OVERPARTITION_COMBINED = "OVERPARTITION_COMBINED"
    OVERLINE_1_3 = "OVERLINE_1_3"
    EULER_ODD_DISTINCT = "EULER_ODD_DISTINCT"


SLUGS = {
    "sef": TheoremId.SEF_CLASSIC,
    "sef-bcolored": TheoremId.SEF_BCOLORED,
    "andrews-merca": TheoremId.ANDREWS_MERCA_H,
    "odd-sum": TheoremId.ODD_SUM,
    "distinct-diff": TheoremId.DISTINCT_DIFF,
    "kcolors": TheoremId.KCOLORS,
    "overpartition": TheoremId.OVERPARTITION_COMBINED,
    "overline13": TheoremId.OVERLINE_1_3,
    "euler": TheoremId.EULER_ODD_DISTINCT,
}


def theorem_from_name(name: str) -> TheoremId:
    key = name.strip()
    if key.lower() in SLUGS:
        return SLUGS[key.lower()]
    try:
        return TheoremId(key.upper())
    except ValueError:
        raise ValueError(f"unknown theorem {name!r}; expected one of {', '.join(SLUGS)}") from None


class EmptyRangeError(ValueError):
    pass


class Term(NamedTuple):
    """``coef * stat(spec; k, n)``; ``kind=None`` means the coefficient h(n)."""

    coef: int | Fraction
    kind: StatKind | None
    spec: FactorSpec
    k: int
    n: int


class Equation(NamedTuple):
    label: str
    lhs: tuple[Term, ...]
    rhs: tuple[Term, ...]


def _t(kind, spec, k, n, coef=1) -> Term:
    return Term(coef, kind, spec, k, n)


# -- theorem table -----------------------------------------------------------

def _all_k(n: int) -> Iterable[int]:
    return range(1, n + 1)


def _odd_k(n: int) -> Iterable[int]:
    return range(1, n + 1, 2)


def _k_one(n: int) -> Iterable[int]:
    return (1,)


@dataclass(frozen=True)
class Theorem:
    id: TheoremId
    statement: str
    default_params: Callable[[Sequence[int], Sequence[tuple[int, int]]], list]
    k_domain: Callable[[int], Iterable[int]]
    k_text: str
    specs: Callable[[object, int], dict[str, FactorSpec]]
    equations: Callable[[dict, object, int, int], list[Equation]]


def _sef_eqs(S, b, k, n):
    u = S["h"]
    return [Equation("F=G", (_t(StatKind.F_UNIFORM, u, k, n),), (_t(StatKind.G_UNIFORM, u, k, n),))]


def _sef_step_eqs(S, b, k, n):
    # b_k read off the product on the left, uniform b on the right
    u = S["h"]
    return [Equation("F=G", (_t(StatKind.F_GENERAL, u, k, n),), (_t(StatKind.G_UNIFORM, u, k, n),))]


def _am_eqs(S, b, k, n):
    u = S["h"]
    return [Equation("kF=H(n)-H(n-k)", (_t(StatKind.F_UNIFORM, u, k, n, k),),
                     (_t(StatKind.H_UNIFORM, u, k, n), _t(StatKind.H_UNIFORM, u, k, n - k, -1)))]


def _odd_sum_eqs(S, b, k, n):
    o = S["odd"]
    return [Equation("F°=G°(n)+G°(n-k)", (_t(StatKind.F_ODD, o, k, n),),
                     (_t(StatKind.G_ODD, o, k, n), _t(StatKind.G_ODD, o, k, n - k)))]


def _distinct_diff_eqs(S, b, k, n):
    d, o = S["distinct"], S["odd"]
    return [Equation("Fd=G°(n)-G°(n-k)", (_t(StatKind.F_DISTINCT, d, k, n),),
                     (_t(StatKind.G_ODD, o, k, n), _t(StatKind.G_ODD, o, k, n - k, -1)))]


def _kcolors_eqs(S, _, k, n):
    pl = S["h"]
    return [Equation("F=k(G(n)-G(n-k))", (_t(StatKind.F_KCOLORS, pl, k, n),),
                     (_t(StatKind.G_KCOLORS, pl, k, n, k), _t(StatKind.G_KCOLORS, pl, k, n - k, -k)))]


def _overpartition_eqs(S, rs, k, n):
    ov, oo = S["overpartition"], S["oddoverlined"]
    eqs = [
        Equation("F=G", (_t(StatKind.F_UNIFORM, ov, k, n),), (_t(StatKind.G_UNIFORM, ov, k, n),)),
        Equation("F=G (odd-overlined)", (_t(StatKind.F_UNIFORM, oo, k, n),),
                 (_t(StatKind.G_UNIFORM, oo, k, n),)),
        Equation("Fd=G°(n)-G°(n-k)", (_t(StatKind.F_DISTINCT, ov, k, n),),
                 (_t(StatKind.G_ODD, oo, k, n), _t(StatKind.G_ODD, oo, k, n - k, -1))),
    ]
    if k % 2 == 1:
        eqs.append(Equation("F°=G°(n)+G°(n-k)", (_t(StatKind.F_ODD, oo, k, n),),
                            (_t(StatKind.G_ODD, oo, k, n), _t(StatKind.G_ODD, oo, k, n - k))))
    return eqs


def _overline_eqs(S, _, k, n):
    ov = S["overpartition"]
    return [Equation("Fbar1=Gbar1-Gbar3", (_t(StatKind.FBAR_1, ov, 1, n),),
                     (_t(StatKind.GBAR_1, ov, 1, n), _t(StatKind.GBAR_3, ov, 3, n, -1)))]


def _euler_eqs(S, b, k, n):
    return [Equation("odd=distinct", (_t(None, S["odd"], 0, n),), (_t(None, S["distinct"], 0, n),))]


def _b_specs(b, N):
    return {"h": series.uniform(b, N)}


def _odd_distinct_specs(b, N):
    return {"odd": series.odd(b, N), "distinct": series.distinct(b, N)}


def _rs_specs(rs, N):
    r, s = rs
    return {"overpartition": series.overpartition(r, s, N), "oddoverlined": series.odd_overlined(r, s, N)}


THEOREMS: dict[TheoremId, Theorem] = {
    t.id: t for t in [
        Theorem(TheoremId.SEF_CLASSIC, "F_k(n) = G_k(n), ordinary partitions",
                lambda bs, rss: [1], _all_k, "1..n", _b_specs, _sef_step_eqs),
        Theorem(TheoremId.SEF_BCOLORED, "F_k(n) = G_k(n), b-colored partitions",
                lambda bs, rss: list(bs), _all_k, "1..n", _b_specs, _sef_eqs),
        Theorem(TheoremId.ANDREWS_MERCA_H, "k F_k(n) = H_k(n) - H_k(n-k), b-colored partitions",
                lambda bs, rss: list(bs), _all_k, "1..n", _b_specs, _am_eqs),
        Theorem(TheoremId.ODD_SUM, "F°_k(n) = G°_k(n) + G°_k(n-k), odd k, b-colored odd parts",
                lambda bs, rss: list(bs), _odd_k, "odd 1..n", _odd_distinct_specs, _odd_sum_eqs),
        Theorem(TheoremId.DISTINCT_DIFF, "F^d_k(n) = G°_k(n) - G°_k(n-k), b-colored distinct vs odd parts",
                lambda bs, rss: list(bs), _all_k, "1..n", _odd_distinct_specs, _distinct_diff_eqs),
        Theorem(TheoremId.KCOLORS, "F_k(n) = k (G_k(n) - G_k(n-k)), part k in k colors",
                lambda bs, rss: [None], _all_k, "1..n", lambda _, N: {"h": series.kcolors(N)}, _kcolors_eqs),
        Theorem(TheoremId.OVERPARTITION_COMBINED,
                "F=G, F^d = G°(n)-G°(n-k), F° = G°(n)+G°(n-k) (odd k), (r,s)-colored overpartitions",
                lambda bs, rss: [tuple(x) for x in rss], _all_k, "1..n", _rs_specs, _overpartition_eqs),
        Theorem(TheoremId.OVERLINE_1_3, "Fbar_1(n) = Gbar_1(n) - Gbar_3(n), overpartitions",
                lambda bs, rss: [None], _k_one, "1",
                lambda _, N: {"overpartition": series.overpartition(1, 1, N)}, _overline_eqs),
        Theorem(TheoremId.EULER_ODD_DISTINCT, "odd(b) and distinct(b) products agree coefficientwise",
                lambda bs, rss: list(bs), _k_one, "n/a", _odd_distinct_specs, _euler_eqs),
    ]
}


# -- evaluation --------------------------------------------------------------

def _eval_fast(terms: Sequence[Term], engine: StatEngine):
    total = 0
    for t in terms:
        if t.kind is None:
            v = series.coefficient(engine.series(t.spec), t.n)
        else:
            v = engine.value(t.kind, t.spec, t.k, t.n)
        total += t.coef * v
    return total


def _eval_oracle(terms: Sequence[Term], cap: int | None):
    total = 0
    for t in terms:
        if t.kind is None:
            v = partitions.oracle_count(t.n, t.spec, cap)
        else:
            v = partitions.oracle_stat(t.n, t.spec, t.kind, t.k, cap)
        total += t.coef * v
    return total


def _num(x) -> str:
    return str(x)


def _param_json(p):
    if p is None:
        return None
    if isinstance(p, tuple):
        return list(p)
    return p


@dataclass
class IdentityReport:
    theorem: TheoremId
    params: list
    range_n: tuple[int, int]
    range_k: str
    mode: Mode
    checked: int = 0
    failures: list[dict] = field(default_factory=list)
    failure_count: int = 0
    series: dict[str, str] = field(default_factory=dict)
    oracle_max_n: int | None = None
    mutation: str | None = None
    error: str | None = None
    elapsed: float = 0.0

    @property
    def passed(self) -> bool:
        return self.error is None and self.failure_count == 0 and self.checked > 0

    def add_failure(self, **entry) -> None:
        self.failure_count += 1
        if len(self.failures) < MAX_FAILURES:
            self.failures.append(entry)

    def to_json(self, include_elapsed: bool = True) -> dict:
        out = {
            "theorem": self.theorem.value,
            "params": [_param_json(p) for p in self.params],
            "range_n": list(self.range_n),
            "range_k": self.range_k,
            "mode": self.mode.value,
            "checked": self.checked,
            "passed": self.passed,
            "failure_count": self.failure_count,
            "failures": self.failures,
            "series": self.series,
            "oracle_max_n": self.oracle_max_n,
            "mutation": self.mutation,
            "error": self.error,
        }
        if include_elapsed:
            out["elapsed"] = round(self.elapsed, 6)
        return out

    def summary(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        params = ",".join(str(_param_json(p)) for p in self.params if p is not None) or "-"
        line = (f"{status} {self.theorem.value} params={params} n={self.range_n[0]}..{self.range_n[1]} "
                f"k={self.range_k} mode={self.mode.value} checked={self.checked} failures={self.failure_count}")
        if self.error:
            line += f" error={self.error}"
        return line


def dumps_reports(reports: Sequence[IdentityReport], include_elapsed: bool = False) -> str:
    return json.dumps([r.to_json(include_elapsed) for r in reports], indent=1)


def verify(theorem: TheoremId | str, params: Sequence | None = None, max_n: int = 100,
           mode: Mode | str = Mode.FAST, cap: int | None = partitions.DEFAULT_CAP,
           engine: StatEngine | None = None,
           equations: Callable[[dict, object, int, int], list[Equation]] | None = None,
           mutation: str | None = None) -> IdentityReport:
    """Sweep one theorem over ``1 <= n <= max_n`` and its admissible k."""
    tid = theorem if isinstance(theorem, TheoremId) else theorem_from_name(theorem)
    th = THEOREMS[tid]
    mode = Mode(mode.upper() if isinstance(mode, str) else mode)
    if params is None:
        params = th.default_params(DEFAULT_B, DEFAULT_RS)
    params = list(params)
    if max_n < 1 or not params:
        raise EmptyRangeError(f"{tid.value}: empty range (max_n={max_n}); nothing to check")
    if mode is Mode.ORACLE and cap is not None and max_n > cap:
        raise partitions.OracleCapError(
            f"{tid.value}: max_n={max_n} exceeds the enumeration cap {cap} in ORACLE mode")
    # each (k, n) is visited about once per sweep, so the memo would only add overhead
    engine = engine or StatEngine(memoize=False)
    equations = equations or th.equations
    oracle_top = max_n if mode is Mode.ORACLE else (min(max_n, cap) if cap is not None else max_n)

    report = IdentityReport(tid, params, (1, max_n), th.k_text, mode, mutation=mutation,
                            oracle_max_n=None if mode is Mode.FAST else oracle_top)
    start = time.perf_counter()
    for p in params:
        specs = th.specs(p, max_n)
        for role, spec in specs.items():
            report.series[role if p is None else f"{role}@{_param_json(p)}"] = spec.label
        for n in range(1, max_n + 1):
            use_oracle = mode is not Mode.FAST and n <= oracle_top
            for k in th.k_domain(n):
                report.checked += 1
                for eq in equations(specs, p, k, n):
                    if mode is Mode.ORACLE:
                        lhs, rhs = _eval_oracle(eq.lhs, cap), _eval_oracle(eq.rhs, cap)
                    else:
                        lhs, rhs = _eval_fast(eq.lhs, engine), _eval_fast(eq.rhs, engine)
                    if lhs != rhs:
                        report.add_failure(params=_param_json(p), equation=eq.label, k=k, n=n,
                                           lhs=_num(lhs), rhs=_num(rhs))
                    if mode is Mode.BOTH and use_oracle:
                        for side, terms, fast in (("lhs", eq.lhs, lhs), ("rhs", eq.rhs, rhs)):
                            slow = _eval_oracle(terms, cap)
                            if slow != fast:
                                report.add_failure(params=_param_json(p), equation=f"{eq.label} [{side} fast-vs-oracle]",
                                                   k=k, n=n, lhs=_num(fast), rhs=_num(slow))
    report.elapsed = time.perf_counter() - start
    return report


def verify_all(max_n: int, b_range: Sequence[int] = DEFAULT_B,
               rs_range: Sequence[tuple[int, int]] = DEFAULT_RS,
               mode: Mode | str = Mode.FAST, cap: int | None = partitions.DEFAULT_CAP,
               engine: StatEngine | None = None) -> list[IdentityReport]:
    """Every theorem over its default grid; errors land in the report, not raised."""
    engine = engine or StatEngine(memoize=False)
    mode = Mode(mode.upper() if isinstance(mode, str) else mode)
    reports = []
    for tid, th in THEOREMS.items():
        params = th.default_params(b_range, rs_range)
        try:
            reports.append(verify(tid, params, max_n, mode, cap, engine))
        except Exception as exc:  # noqa: BLE001 - reported per theorem
            reports.append(IdentityReport(tid, params, (1, max_n), th.k_text, mode,
                                          error=f"{type(exc).__name__}: {exc}"))
    return reports


# -- mutations ---------------------------------------------------------------

@dataclass(frozen=True)
class Mutation:
    name: str
    theorem: TheoremId
    params: tuple
    description: str
    equations: Callable[[dict, object, int, int], list[Equation]]


def _m_odd_b_dropped(S, b, k, n):
    o = S["odd"]
    return [Equation("F° without b", (_t(StatKind.F_ODD, o, k, n, Fraction(1, b)),),
                     (_t(StatKind.G_ODD, o, k, n), _t(StatKind.G_ODD, o, k, n - k)))]


def _m_h_shift(S, b, k, n):
    u = S["h"]
    return [Equation("kF=H(n)-H(n-1)", (_t(StatKind.F_UNIFORM, u, k, n, k),),
                     (_t(StatKind.H_UNIFORM, u, k, n), _t(StatKind.H_UNIFORM, u, k, n - 1, -1)))]


def _m_euler_colors(S, b, k, n):
    N = S["odd"].size
    return [Equation("odd(1)=distinct(2)", (_t(None, series.odd(1, N), 0, n),),
                     (_t(None, series.distinct(2, N), 0, n),))]


def _m_sef_shift(S, b, k, n):
    u = S["h"]
    return [Equation("F(n)=G(n-1)", (_t(StatKind.F_GENERAL, u, k, n),), (_t(StatKind.G_UNIFORM, u, k, n - 1),))]


def _m_sef_b_dropped(S, b, k, n):
    u = S["h"]
    return [Equation("F=G/b", (_t(StatKind.F_UNIFORM, u, k, n),), (_t(StatKind.G_UNIFORM, u, k, n, Fraction(1, b)),))]


def _m_distinct_sign(S, b, k, n):
    d, o = S["distinct"], S["odd"]
    return [Equation("Fd=G°(n)+G°(n-k)", (_t(StatKind.F_DISTINCT, d, k, n),),
                     (_t(StatKind.G_ODD, o, k, n), _t(StatKind.G_ODD, o, k, n - k)))]


def _m_kcolors_no_k(S, _, k, n):
    pl = S["h"]
    return [Equation("F=G(n)-G(n-k)", (_t(StatKind.F_KCOLORS, pl, k, n),),
                     (_t(StatKind.G_KCOLORS, pl, k, n), _t(StatKind.G_KCOLORS, pl, k, n - k, -1)))]


def _m_overpartition_sign(S, rs, k, n):
    ov, oo = S["overpartition"], S["oddoverlined"]
    return [Equation("Fd=G°(n)+G°(n-k)", (_t(StatKind.F_DISTINCT, ov, k, n),),
                     (_t(StatKind.G_ODD, oo, k, n), _t(StatKind.G_ODD, oo, k, n - k)))]


def _m_overline_half(S, _, k, n):
    ov = S["overpartition"]
    return [Equation("Fbar1/2=Gbar1-Gbar3", (_t(StatKind.FBAR_1, ov, 1, n, Fraction(1, 2)),),
                     (_t(StatKind.GBAR_1, ov, 1, n), _t(StatKind.GBAR_3, ov, 3, n, -1)))]


MUTATIONS: dict[str, Mutation] = {
    m.name: m for m in [
        Mutation("odd-b-dropped", TheoremId.ODD_SUM, (2,),
                 "odd-part frequency summed without the color factor b", _m_odd_b_dropped),
        Mutation("h-wrong-shift", TheoremId.ANDREWS_MERCA_H, (1,),
                 "H_k(n) - H_k(n-1) instead of H_k(n) - H_k(n-k)", _m_h_shift),
        Mutation("euler-odd1-vs-distinct2", TheoremId.EULER_ODD_DISTINCT, (1,),
                 "odd(1) compared with distinct(2)", _m_euler_colors),
        Mutation("sef-shift", TheoremId.SEF_CLASSIC, (1,),
                 "G evaluated at n-1", _m_sef_shift),
        Mutation("sef-b-dropped", TheoremId.SEF_BCOLORED, (2,),
                 "G without the color factor b", _m_sef_b_dropped),
        Mutation("distinct-sign", TheoremId.DISTINCT_DIFF, (1,),
                 "G°(n) + G°(n-k) instead of the difference", _m_distinct_sign),
        Mutation("kcolors-no-k", TheoremId.KCOLORS, (None,),
                 "k(G(n) - G(n-k)) without the factor k", _m_kcolors_no_k),
        Mutation("overpartition-sign", TheoremId.OVERPARTITION_COMBINED, ((1, 1),),
                 "overlined frequency against G°(n) + G°(n-k)", _m_overpartition_sign),
        Mutation("overline-half", TheoremId.OVERLINE_1_3, (None,),
                 "Fbar_1 without its factor 2", _m_overline_half),
    ]
}


def mutation_smoke(theorem: TheoremId | str, max_n: int = 10, name: str | None = None) -> IdentityReport:
    """Run a deliberately broken variant of ``theorem``; a sound checker must fail it."""
    tid = theorem if isinstance(theorem, TheoremId) else theorem_from_name(theorem)
    candidates = [m for m in MUTATIONS.values() if m.theorem is tid and (name is None or m.name == name)]
    if not candidates:
        raise ValueError(f"no mutation registered for {tid.value}" + (f" named {name!r}" if name else ""))
    m = candidates[0]
    return verify(tid, list(m.params), max_n, Mode.FAST, equations=m.equations, mutation=m.name)
