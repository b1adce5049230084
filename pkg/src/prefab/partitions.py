"""Colored partitions as concrete objects, and exhaustive enumeration.

Enumeration is the independent oracle: every statistic in
:mod:`prefab.stats` can be recomputed here by walking all partitions of a
small weight and summing a per-partition count.
"""
from __future__ import annotations

import enum
import functools
import itertools
import json
from collections import Counter
from dataclasses import dataclass
from typing import Iterator, NamedTuple

from .series import FactorSpec, Kind, SeriesError
from .stats import StatKind

DEFAULT_CAP = 20

_KIND_ORDER = {Kind.REPEATABLE: 0, Kind.DISTINCT: 1}


class OracleCapError(RuntimeError):
    pass


class Merge(str, enum.Enum):
    BY_COLORED_PART = "BY_COLORED_PART"
    BY_VALUE = "BY_VALUE"


class ColoredPart(NamedTuple):
    value: int
    color: int
    kind: Kind = Kind.REPEATABLE

    def sort_key(self):
        return (-self.value, _KIND_ORDER[self.kind], self.color)


@dataclass(frozen=True)
class ColoredPartition:
    """Entries are ``(ColoredPart, frequency)`` pairs in canonical order."""

    entries: tuple[tuple[ColoredPart, int], ...] = ()

    @classmethod
    def of(cls, counts) -> "ColoredPartition":
        """Build from a mapping or iterable of ``(part, frequency)`` pairs."""
        items = counts.items() if hasattr(counts, "items") else counts
        merged: Counter = Counter()
        for part, f in items:
            part = ColoredPart(part[0], part[1], Kind(part[2]))
            if part.value < 1 or part.color < 1:
                raise ValueError(f"bad colored part {part}")
            merged[part] += f
        for part, f in merged.items():
            if f < 1:
                raise ValueError(f"frequency of {part} must be >= 1")
            if part.kind is Kind.DISTINCT and f != 1:
                raise ValueError(f"distinct part {part} repeated {f} times")
        return cls(tuple(sorted(merged.items(), key=lambda e: e[0].sort_key())))

    @classmethod
    def plain(cls, *parts: int) -> "ColoredPartition":
        """An ordinary one-color partition, e.g. ``plain(4, 3, 3, 2)``."""
        return cls.of(Counter(ColoredPart(p, 1) for p in parts))

    @property
    def weight(self) -> int:
        return sum(p.value * f for p, f in self.entries)

    def parts(self) -> Iterator[ColoredPart]:
        for p, f in self.entries:
            for _ in range(f):
                yield p

    def stats(self) -> "PartitionStats":
        by_value: Counter = Counter()
        for p, f in self.entries:
            by_value[p.value] += f
        return PartitionStats(dict(by_value), dict(self.entries), self.weight)

    def to_row(self) -> list:
        return [[p.value, p.color, p.kind.value, f] for p, f in self.entries]

    def dumps(self) -> str:
        return json.dumps(self.to_row())


@dataclass(frozen=True)
class PartitionStats:
    freq_by_value: dict[int, int]
    freq_by_colored_part: dict[ColoredPart, int]
    weight: int


def frequency(pi: ColoredPartition, k: int) -> int:
    if k < 1:
        raise ValueError(f"k must be >= 1, got {k}")
    return sum(f for p, f in pi.entries if p.value == k)


def parts_repeated_at_least(pi: ColoredPartition, k: int,
                            merge: Merge = Merge.BY_COLORED_PART) -> int:
    if k < 1:
        raise ValueError(f"k must be >= 1, got {k}")
    if Merge(merge) is Merge.BY_COLORED_PART:
        return sum(1 for _, f in pi.entries if f >= k)
    return sum(1 for f in pi.stats().freq_by_value.values() if f >= k)


def sum_parts_divisible_by(pi: ColoredPartition, k: int) -> int:
    if k < 1:
        raise ValueError(f"k must be >= 1, got {k}")
    return sum(p.value for p, _ in pi.entries if p.value % k == 0)


# -- text form ---------------------------------------------------------------

def format_part(part: ColoredPart, spec: FactorSpec | None = None) -> str:
    sep = "_" if part.kind is Kind.REPEATABLE else "~"
    if spec is not None and spec.multiplicity(part.value, part.kind) == 1:
        return str(part.value) if part.kind is Kind.REPEATABLE else f"{part.value}~"
    return f"{part.value}{sep}{part.color}"


def format_partition(pi: ColoredPartition, spec: FactorSpec | None = None) -> str:
    if not pi.entries:
        return "()"
    return "+".join(format_part(p, spec) for p in pi.parts())


def parse_partition(text: str) -> ColoredPartition:
    """Inverse of :func:`format_partition`; a missing color means color 1."""
    text = text.strip()
    if text in ("", "()"):
        return ColoredPartition()
    counts: Counter = Counter()
    for tok in text.split("+"):
        tok = tok.strip()
        kind = Kind.DISTINCT if "~" in tok else Kind.REPEATABLE
        value, _, color = tok.partition("~" if kind is Kind.DISTINCT else "_")
        counts[ColoredPart(int(value), int(color) if color else 1, kind)] += 1
    return ColoredPartition.of(counts)


# -- enumeration -------------------------------------------------------------

@functools.lru_cache(maxsize=None)
def _compositions(t: int, b: int) -> tuple[tuple[int, ...], ...]:
    # weak compositions of t into b parts, first color heaviest first
    if b == 1:
        return ((t,),)
    out = []
    for first in range(t, -1, -1):
        for rest in _compositions(t - first, b - 1):
            out.append((first,) + rest)
    return tuple(out)


def _reachable(factors, n: int) -> list[int]:
    """Bitmask of weights reachable from each suffix of ``factors``."""
    full = (1 << (n + 1)) - 1
    reach = [1]
    for f in reversed(factors):
        prev = reach[-1]
        acc = prev
        top = n // f.part if f.kind is Kind.REPEATABLE else min(f.multiplicity, n // f.part)
        for t in range(1, top + 1):
            acc |= prev << (t * f.part)
        reach.append(acc & full)
    reach.reverse()
    return reach


def enumerate_partitions(n: int, spec: FactorSpec) -> Iterator[ColoredPartition]:
    """Yield every colored partition of weight ``n`` exactly once.

    Factors are visited largest part first, REPEATABLE before DISTINCT; for
    each, a color-frequency vector (or a color subset, for DISTINCT) is
    chosen, larger totals first.
    """
    if n < 0:
        raise SeriesError(f"weight must be >= 0, got {n}")
    if not spec.covers(n):
        raise SeriesError(f"{spec.label} was built for parts <= {spec.size}, cannot enumerate n={n}")
    factors = [f for f in spec.factors if f.part <= n and f.multiplicity > 0]
    reach = _reachable(factors, n)
    entries: list[tuple[ColoredPart, int]] = []

    def rec(i: int, remaining: int):
        if remaining == 0:
            yield ColoredPartition(tuple(entries))
            return
        f = factors[i]
        k, b, kind = f.part, f.multiplicity, f.kind
        nxt = reach[i + 1]
        top = remaining // k if kind is Kind.REPEATABLE else min(b, remaining // k)
        for t in range(top, -1, -1):
            rest = remaining - t * k
            if not (nxt >> rest) & 1:
                continue
            if t == 0:
                yield from rec(i + 1, rest)
                continue
            if kind is Kind.REPEATABLE:
                choices = ([(ColoredPart(k, c + 1, kind), cnt) for c, cnt in enumerate(comp) if cnt]
                           for comp in _compositions(t, b))
            else:
                choices = ([(ColoredPart(k, c, kind), 1) for c in subset]
                           for subset in itertools.combinations(range(1, b + 1), t))
            for added in choices:
                entries.extend(added)
                yield from rec(i + 1, rest)
                del entries[-len(added):]

    if (reach[0] >> n) & 1:
        yield from rec(0, n)


# -- oracle ------------------------------------------------------------------

ORD, ODD, OVER = "ordinary", "odd", "overlined"


def part_class(spec: FactorSpec, part: ColoredPart) -> str:
    """Which component of a product a colored part belongs to.

    DISTINCT parts are overlined.  In odd(b) every part is in the odd class;
    in oddoverlined(r,s) the colors beyond r on odd parts are.
    """
    if part.kind is Kind.DISTINCT:
        return OVER
    if spec.name == "odd":
        return ODD
    if spec.name == "oddoverlined" and part.value % 2 == 1 and part.color > spec.params[0]:
        return ODD
    return ORD


@dataclass(frozen=True)
class OracleTable:
    """All brute-force statistics of one weight ``n``; lookups by (tag, k)."""

    n: int
    count: int
    values: dict[tuple[str, int], int]

    def get(self, tag: str, k: int) -> int:
        return self.values.get((tag, k), 0)


# stat kind -> (oracle tag, fixed index or None)
_ORACLE_TAG = {
    StatKind.F_GENERAL: ("F_rep", None),
    StatKind.F_UNIFORM: ("F_ord", None),
    StatKind.F_KCOLORS: ("F_ord", None),
    StatKind.G_UNIFORM: ("G_ord", None),
    StatKind.G_KCOLORS: ("G_ord", None),
    StatKind.H_UNIFORM: ("H_ord", None),
    StatKind.F_ODD: ("F_odd", None),
    StatKind.G_ODD: ("G_odd", None),
    StatKind.F_DISTINCT: ("F_over", None),
    StatKind.OBAR_M: ("O_bar", None),
    StatKind.O_OVERLINED_M: ("O_overlined", None),
    StatKind.TBAR_M: ("T_bar", None),
    StatKind.FBAR_1: ("F_bar", 1),
    StatKind.GBAR_1: ("G_bar", 1),
    StatKind.GBAR_3: ("G_bar", 3),
}


@functools.lru_cache(maxsize=512)
def _oracle_table(n: int, spec: FactorSpec) -> OracleTable:
    divisors = [[d for d in range(1, v + 1) if v % d == 0] for v in range(n + 1)]
    acc: Counter = Counter()
    # histograms of frequencies; G-type values are their upper tail sums
    g_hist = {"G_ord": [0] * (n + 2), "G_odd": [0] * (n + 2), "G_bar": [0] * (n + 2)}
    count = 0
    classes: dict[ColoredPart, str] = {}
    for pi in enumerate_partitions(n, spec):
        count += 1
        by_value: Counter = Counter()
        plain_values = set()
        over_values = set()
        for part, f in pi.entries:
            v = part.value
            cls = classes.get(part)
            if cls is None:
                cls = classes[part] = part_class(spec, part)
            by_value[v] += f
            if part.kind is Kind.REPEATABLE:
                acc[("F_rep", v)] += f
                plain_values.add(v)
            else:
                over_values.add(v)
            if cls == ORD:
                acc[("F_ord", v)] += f
                g_hist["G_ord"][f] += 1
                for d in divisors[v]:
                    acc[("H_ord", d)] += v
            elif cls == ODD:
                acc[("F_odd", v)] += f
                g_hist["G_odd"][f] += 1
            else:
                acc[("F_over", v)] += f
        for v, f in by_value.items():
            acc[("F_bar", v)] += f
            acc[("O_bar", v)] += 1
            if f >= 3:
                acc[("T_bar", v)] += 1
            if v in over_values and v not in plain_values:
                acc[("O_overlined", v)] += 1
            g_hist["G_bar"][f] += 1
    for tag, hist in g_hist.items():
        tail = 0
        for k in range(n + 1, 0, -1):
            tail += hist[k]
            if tail:
                acc[(tag, k)] = tail
    return OracleTable(n, count, dict(acc))


def oracle_table(n: int, spec: FactorSpec, cap: int | None = DEFAULT_CAP) -> OracleTable:
    if n < 0:
        raise SeriesError(f"weight must be >= 0, got {n}")
    if cap is not None and n > cap:
        raise OracleCapError(f"n={n} exceeds the enumeration cap {cap}; raise the cap to force it")
    return _oracle_table(n, spec)


def oracle_stat(n: int, spec: FactorSpec, stat: StatKind, k: int = 1,
                cap: int | None = DEFAULT_CAP) -> int:
    """Brute-force value of ``stat`` at index ``k`` (ignored for fixed-index kinds)."""
    if n < 0:
        return 0
    tag, fixed = _ORACLE_TAG[StatKind(stat)]
    return oracle_table(n, spec, cap).get(tag, fixed or k)


def oracle_count(n: int, spec: FactorSpec, cap: int | None = DEFAULT_CAP) -> int:
    if n < 0:
        return 0
    return oracle_table(n, spec, cap).count


def oracle_gbar(n: int, spec: FactorSpec, r: int, cap: int | None = DEFAULT_CAP) -> int:
    """Values repeated at least ``r`` times (colors and overlines merged), any r."""
    return oracle_table(n, spec, cap).get("G_bar", r)


def oracle_fbar(n: int, spec: FactorSpec, k: int, cap: int | None = DEFAULT_CAP) -> int:
    """Frequency of value k with plain and overlined parts merged, any k."""
    return oracle_table(n, spec, cap).get("F_bar", k)
