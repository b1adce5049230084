"""Frequency and repetition statistics computed from coefficient series.

Every function here reads only a :class:`~prefab.series.CoeffSeries` ``h``
(with ``h(m) = 0`` for ``m < 0``); nothing is enumerated.  The infinite sums
all run over ``j = 1, 2, ...`` and stop as soon as the shifted index goes
negative.
"""
from __future__ import annotations

import csv
import enum
import functools
import io
import json
from dataclasses import dataclass, field

from .series import CoeffSeries, FactorSpec, Kind, TruncationError, expand


class StatKind(str, enum.Enum):
    F_UNIFORM = "F_UNIFORM"
    G_UNIFORM = "G_UNIFORM"
    H_UNIFORM = "H_UNIFORM"
    F_ODD = "F_ODD"
    G_ODD = "G_ODD"
    F_DISTINCT = "F_DISTINCT"
    F_KCOLORS = "F_KCOLORS"
    G_KCOLORS = "G_KCOLORS"
    OBAR_M = "OBAR_M"
    O_OVERLINED_M = "O_OVERLINED_M"
    TBAR_M = "TBAR_M"
    FBAR_1 = "FBAR_1"
    GBAR_1 = "GBAR_1"
    GBAR_3 = "GBAR_3"
    F_GENERAL = "F_GENERAL"


# kinds whose index is fixed rather than swept
FIXED_INDEX = {StatKind.FBAR_1: 1, StatKind.GBAR_1: 1, StatKind.GBAR_3: 3}

_OVERLINE = {StatKind.OBAR_M, StatKind.O_OVERLINED_M, StatKind.TBAR_M,
             StatKind.FBAR_1, StatKind.GBAR_1, StatKind.GBAR_3}

APPLICABLE: dict[StatKind, frozenset[str]] = {
    StatKind.F_GENERAL: frozenset({"uniform", "kcolors", "odd", "overpartition", "oddoverlined", "custom"}),
    StatKind.F_UNIFORM: frozenset({"uniform", "overpartition", "oddoverlined"}),
    StatKind.G_UNIFORM: frozenset({"uniform", "overpartition", "oddoverlined"}),
    StatKind.H_UNIFORM: frozenset({"uniform"}),
    StatKind.F_ODD: frozenset({"odd", "oddoverlined"}),
    StatKind.G_ODD: frozenset({"odd", "oddoverlined"}),
    StatKind.F_DISTINCT: frozenset({"distinct", "overpartition"}),
    StatKind.F_KCOLORS: frozenset({"kcolors"}),
    StatKind.G_KCOLORS: frozenset({"kcolors"}),
    **{kind: frozenset({"overpartition"}) for kind in _OVERLINE},
}


class KindMismatchError(ValueError):
    pass


def _check(h: CoeffSeries, k: int, n: int) -> None:
    if k < 1:
        raise ValueError(f"index must be >= 1, got {k}")
    if n > h.truncation:
        raise TruncationError(f"n={n} beyond series truncation {h.truncation}")


def f_general(h: CoeffSeries, bk: int, k: int, n: int) -> int:
    """Total number of k's over all colored partitions of n (k in bk colors)."""
    _check(h, k, n)
    c = h.coeffs
    total = 0
    j = 1
    while n - j * k >= 0:
        total += c[n - j * k]
        j += 1
    return bk * total


def f_step(h: CoeffSeries, bk: int, k: int, n: int) -> int:
    """Same value as :func:`f_general`, via F(n) = F(n-k) + bk*h(n-k)."""
    _check(h, k, n)
    acc = 0
    m = n % k + k  # F vanishes below k, so the walk starts one step above the residue
    while m <= n:
        acc += bk * h.coeffs[m - k]
        m += k
    return acc


def g_uniform(h: CoeffSeries, b: int, k: int, n: int) -> int:
    _check(h, k, n)
    c = h.coeffs
    total = 0
    j = 1
    while n - j * k >= 0:
        total += c[n - j * k]
        j += 1
    return b * total


def h_uniform(h: CoeffSeries, b: int, k: int, n: int) -> int:
    """Sum of parts divisible by k, each colored part counted once."""
    _check(h, k, n)
    c = h.coeffs
    total = 0
    j = 1
    while n - j * k >= 0:
        total += j * c[n - j * k]
        j += 1
    return b * k * total


def f_odd(h: CoeffSeries, b: int, k: int, n: int) -> int:
    _check(h, k, n)
    c = h.coeffs
    if k % 2 == 0:
        return 0
    total = 0
    j = 1
    while n - j * k >= 0:
        total += c[n - j * k]
        j += 1
    return b * total


def g_odd(h: CoeffSeries, b: int, k: int, n: int) -> int:
    """Only odd multiples of k contribute; valid for every k >= 1."""
    _check(h, k, n)
    c = h.coeffs
    total = 0
    j = 1
    while n - j * k >= 0:
        total += c[n - j * k]
        j += 2
    return b * total


def f_distinct(h: CoeffSeries, b: int, k: int, n: int) -> int:
    _check(h, k, n)
    c = h.coeffs
    total = 0
    sign = 1
    j = 1
    while n - j * k >= 0:
        total += sign * c[n - j * k]
        sign = -sign
        j += 1
    return b * total


def f_kcolors(h: CoeffSeries, k: int, n: int) -> int:
    return f_general(h, k, k, n)


def g_kcolors(h: CoeffSeries, k: int, n: int) -> int:
    _check(h, k, n)
    c = h.coeffs
    total = 0
    j = 1
    while n - j * k >= 0:
        total += j * c[n - j * k]
        j += 1
    return total


def o_bar_m(hbar: CoeffSeries, m: int, n: int) -> int:
    """Overpartitions of n containing m or m-bar."""
    _check(hbar, m, n)
    c = hbar.coeffs
    total = 0
    sign = 1
    j = 1
    while n - j * m >= 0:
        total += sign * c[n - j * m]
        sign = -sign
        j += 1
    return 2 * total


def o_overlined_m(hbar: CoeffSeries, m: int, n: int) -> int:
    """Overpartitions of n containing m-bar but no plain m.

    p(n-m) - 2p(n-2m) + 2p(n-3m) - ..., with p the overpartition counts.
    """
    _check(hbar, m, n)
    c = hbar.coeffs
    if n - m < 0:
        return 0
    total = c[n - m]
    sign = -1
    j = 2
    while n - j * m >= 0:
        total += 2 * sign * c[n - j * m]
        sign = -sign
        j += 1
    return total


def t_bar_m(hbar: CoeffSeries, m: int, n: int) -> int:
    """Overpartitions of n where m and m-bar together occur at least thrice."""
    _check(hbar, m, n)
    c = hbar.coeffs
    total = 0
    sign = 1
    j = 3
    while n - j * m >= 0:
        total += sign * c[n - j * m]
        sign = -sign
        j += 1
    return 2 * total


def f_bar_1(hbar: CoeffSeries, n: int) -> int:
    _check(hbar, 1, n)
    c = hbar.coeffs
    total = 0
    j = 1
    while n - j >= 0:
        total += c[n - j]
        j += 2
    return 2 * total


def g_bar(hbar: CoeffSeries, r: int, n: int) -> int:
    if r == 1:
        return sum(o_bar_m(hbar, m, n) for m in range(1, n + 1))
    if r == 3:
        return sum(t_bar_m(hbar, m, n) for m in range(1, n + 1))
    raise ValueError(f"closed form only for repetition threshold 1 or 3, got {r}")


def _ordinary_colors(spec: FactorSpec) -> int:
    if spec.name in ("uniform", "overpartition", "oddoverlined"):
        return spec.params[0]
    raise KindMismatchError(f"{spec.label} has no uniform color count")


def check_applicable(kind: StatKind, spec: FactorSpec) -> None:
    if not isinstance(kind, StatKind):
        kind = StatKind(kind)
    if not _applicable(kind, spec.name, spec.params):
        valid = ", ".join(sorted(APPLICABLE[kind]))
        if kind in _OVERLINE:
            valid = "overpartition:1,1"
        raise KindMismatchError(f"{kind.value} does not apply to {spec.label}; valid specs: {valid}")


@functools.lru_cache(maxsize=None)
def _applicable(kind: StatKind, name: str, params: tuple) -> bool:
    ok = name in APPLICABLE[kind]
    if ok and kind in _OVERLINE:
        ok = params == (1, 1)
    return ok


_DISPATCH = {
    StatKind.F_GENERAL: lambda s, h, k, n: f_general(h, s.multiplicity(k, Kind.REPEATABLE), k, n),
    StatKind.F_UNIFORM: lambda s, h, k, n: f_general(h, _ordinary_colors(s), k, n),
    StatKind.G_UNIFORM: lambda s, h, k, n: g_uniform(h, _ordinary_colors(s), k, n),
    StatKind.H_UNIFORM: lambda s, h, k, n: h_uniform(h, s.params[0], k, n),
    # odd(b) and distinct(b) carry b last; so do oddoverlined(r,s) and overpartition(r,s)
    StatKind.F_ODD: lambda s, h, k, n: f_odd(h, s.params[-1], k, n),
    StatKind.G_ODD: lambda s, h, k, n: g_odd(h, s.params[-1], k, n),
    StatKind.F_DISTINCT: lambda s, h, k, n: f_distinct(h, s.params[-1], k, n),
    StatKind.F_KCOLORS: lambda s, h, k, n: f_kcolors(h, k, n),
    StatKind.G_KCOLORS: lambda s, h, k, n: g_kcolors(h, k, n),
    StatKind.OBAR_M: lambda s, h, k, n: o_bar_m(h, k, n),
    StatKind.O_OVERLINED_M: lambda s, h, k, n: o_overlined_m(h, k, n),
    StatKind.TBAR_M: lambda s, h, k, n: t_bar_m(h, k, n),
    StatKind.FBAR_1: lambda s, h, k, n: f_bar_1(h, n),
    StatKind.GBAR_1: lambda s, h, k, n: g_bar(h, 1, n),
    StatKind.GBAR_3: lambda s, h, k, n: g_bar(h, 3, n),
}


def compute(kind: StatKind, spec: FactorSpec, h: CoeffSeries, k: int, n: int) -> int:
    """Evaluate one statistic of ``spec`` whose product expands to ``h``."""
    if not isinstance(kind, StatKind):
        kind = StatKind(kind)
    check_applicable(kind, spec)
    return _DISPATCH[kind](spec, h, k, n)


class StatEngine:
    """Series cache plus an optional memo keyed by (kind, spec label, k, n).

    Results never depend on ``memoize``; it only saves repeated sums during
    identity sweeps.
    """

    def __init__(self, memoize: bool = True):
        self.memoize = memoize
        self._series: dict[str, CoeffSeries] = {}
        self._memo: dict[tuple, int] = {}

    def series(self, spec: FactorSpec, N: int | None = None) -> CoeffSeries:
        N = spec.size if N is None else N
        if N is None:
            raise ValueError("custom specs need an explicit truncation")
        s = self._series.get(spec.label)
        if s is None or s.truncation < N:
            s = expand(spec, N)
            self._series[spec.label] = s
        return s

    def value(self, kind: StatKind, spec: FactorSpec, k: int, n: int) -> int:
        if n < 0:
            return 0
        if self.memoize:
            key = (kind, spec.label, k, n)
            hit = self._memo.get(key)
            if hit is not None:
                return hit
        h = self._series.get(spec.label) or self.series(spec)
        v = compute(kind, spec, h, k, n)
        if self.memoize:
            self._memo[key] = v
        return v


@dataclass
class StatTable:
    kind: StatKind
    spec: FactorSpec
    max_n: int
    values: dict[tuple[int, int], int] = field(default_factory=dict)

    def rows(self):
        for (k, n) in sorted(self.values):
            yield k, n, self.values[(k, n)]

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["kind", "spec", "k", "n", "value"])
        for k, n, v in self.rows():
            w.writerow([self.kind.value, self.spec.label, k, n, str(v)])
        return buf.getvalue()

    def to_json(self) -> dict:
        return {
            "kind": self.kind.value,
            "spec": self.spec.label,
            "max_n": self.max_n,
            "values": [{"k": k, "n": n, "value": str(v)} for k, n, v in self.rows()],
        }

    def dumps(self) -> str:
        return json.dumps(self.to_json(), indent=1)


def build_table(kind: StatKind, spec: FactorSpec, ks, max_n: int,
                engine: StatEngine | None = None) -> StatTable:
    kind = StatKind(kind)
    check_applicable(kind, spec)
    if max_n < 0:
        raise ValueError(f"max_n must be >= 0, got {max_n}")
    engine = engine or StatEngine()
    engine.series(spec, max_n)
    if kind in FIXED_INDEX:
        ks = [FIXED_INDEX[kind]]
    table = StatTable(kind, spec, max_n)
    for k in ks:
        for n in range(max_n + 1):
            table.values[(k, n)] = engine.value(kind, spec, k, n)
    return table
