"""Generating products and their truncated coefficient series.

A product is described by a :class:`FactorSpec`: a list of factors, each
either ``1/(1-q^k)^b`` (REPEATABLE) or ``(1+q^k)^b`` (DISTINCT).  Expanding
it up to ``q^N`` gives the number of colored partitions of every weight
``0..N``.  Coefficients are Python ints, so nothing ever overflows.
"""
from __future__ import annotations

import enum
import functools
import json
import math
from dataclasses import dataclass
from typing import Iterable, Sequence


class SeriesError(ValueError):
    pass


class TruncationError(IndexError):
    """Raised when a coefficient beyond the stored truncation is requested."""


class Kind(str, enum.Enum):
    REPEATABLE = "REPEATABLE"
    DISTINCT = "DISTINCT"


_KIND_ORDER = {Kind.REPEATABLE: 0, Kind.DISTINCT: 1}


@dataclass(frozen=True)
class Factor:
    part: int
    multiplicity: int
    kind: Kind = Kind.REPEATABLE

    def __post_init__(self):
        if self.part < 1:
            raise SeriesError(f"factor part must be >= 1, got {self.part}")
        if self.multiplicity < 0:
            raise SeriesError(f"factor multiplicity must be >= 0, got {self.multiplicity}")
        object.__setattr__(self, "kind", Kind(self.kind))

    def sort_key(self):
        return (-self.part, _KIND_ORDER[self.kind])


@dataclass(frozen=True)
class FactorSpec:
    """A finite generating product.

    ``name`` and ``params`` record which built-in family the spec came from
    (``"uniform"``, ``(2,)``) so statistics can pick the right color counts;
    ``size`` is the largest part the family was built with.  Hand-built specs
    use ``name="custom"`` and ``size=None``.
    """

    factors: tuple[Factor, ...]
    label: str
    name: str = "custom"
    params: tuple[int, ...] = ()
    size: int | None = None

    @classmethod
    def build(cls, factors: Iterable[Factor], label: str, name: str = "custom",
              params: Sequence[int] = (), size: int | None = None) -> "FactorSpec":
        merged: dict[tuple[int, Kind], int] = {}
        for f in factors:
            key = (f.part, f.kind)
            merged[key] = merged.get(key, 0) + f.multiplicity
        out = [Factor(p, m, k) for (p, k), m in merged.items() if m > 0]
        out.sort(key=Factor.sort_key)
        return cls(tuple(out), label, name, tuple(params), size)

    @functools.cached_property
    def _multiplicities(self) -> dict[tuple[int, Kind], int]:
        return {(f.part, f.kind): f.multiplicity for f in self.factors}

    def multiplicity(self, part: int, kind: Kind = Kind.REPEATABLE) -> int:
        return self._multiplicities.get((part, kind), 0)

    def covers(self, n: int) -> bool:
        """False when a built-in family was cut off below weight ``n``."""
        return self.size is None or self.size >= n


def _family(factors, label, name, params, N) -> FactorSpec:
    return FactorSpec.build(factors, label, name, params, N)


def _check_n(N: int) -> None:
    if N < 0:
        raise SeriesError(f"truncation must be >= 0, got {N}")


def uniform(b: int, N: int) -> FactorSpec:
    _check_n(N)
    return _family((Factor(k, b) for k in range(1, N + 1)), f"uniform({b})", "uniform", (b,), N)


def kcolors(N: int) -> FactorSpec:
    _check_n(N)
    return _family((Factor(k, k) for k in range(1, N + 1)), "k-colors", "kcolors", (), N)


def odd(b: int, N: int) -> FactorSpec:
    _check_n(N)
    return _family((Factor(k, b) for k in range(1, N + 1, 2)), f"odd({b})", "odd", (b,), N)


def distinct(b: int, N: int) -> FactorSpec:
    _check_n(N)
    return _family((Factor(k, b, Kind.DISTINCT) for k in range(1, N + 1)),
                   f"distinct({b})", "distinct", (b,), N)


def overpartition(r: int, s: int, N: int) -> FactorSpec:
    _check_n(N)
    fs = [Factor(k, r) for k in range(1, N + 1)]
    fs += [Factor(k, s, Kind.DISTINCT) for k in range(1, N + 1)]
    return _family(fs, f"overpartition({r},{s})", "overpartition", (r, s), N)


def odd_overlined(r: int, s: int, N: int) -> FactorSpec:
    """Ordinary parts in ``r`` colors plus odd parts in ``s`` extra colors.

    The two REPEATABLE factors on an odd part merge into one factor of
    multiplicity ``r + s``; colors ``r+1..r+s`` of an odd part form the
    odd ("w") class.
    """
    _check_n(N)
    fs = [Factor(k, r) for k in range(1, N + 1)]
    fs += [Factor(k, s) for k in range(1, N + 1, 2)]
    return _family(fs, f"oddoverlined({r},{s})", "oddoverlined", (r, s), N)


FAMILIES = {
    "uniform": (uniform, 1),
    "kcolors": (kcolors, 0),
    "odd": (odd, 1),
    "distinct": (distinct, 1),
    "overpartition": (overpartition, 2),
    "oddoverlined": (odd_overlined, 2),
}


def parse_spec(text: str, N: int) -> FactorSpec:
    """Parse a selector such as ``uniform:2`` or ``overpartition:1,1``."""
    name, _, rest = text.strip().partition(":")
    name = name.lower().replace("_", "").replace("-", "")
    if name not in FAMILIES:
        raise SeriesError(f"unknown spec {text!r}; expected one of {', '.join(FAMILIES)}")
    ctor, arity = FAMILIES[name]
    try:
        params = [int(x) for x in rest.split(",")] if rest else []
    except ValueError:
        raise SeriesError(f"bad parameters in spec {text!r}") from None
    if not params and arity:
        params = [1] * arity
    if len(params) != arity:
        raise SeriesError(f"spec {name} takes {arity} parameter(s), got {len(params)}")
    if any(p < 0 for p in params):
        raise SeriesError(f"spec parameters must be non-negative: {text!r}")
    return ctor(*params, N)


def selector(spec: FactorSpec) -> str:
    """Inverse of :func:`parse_spec` for built-in families."""
    if spec.name == "custom":
        return spec.label
    if spec.params:
        return f"{spec.name}:{','.join(map(str, spec.params))}"
    return spec.name


@dataclass(frozen=True)
class CoeffSeries:
    truncation: int
    coeffs: tuple[int, ...]
    spec: FactorSpec | None = None

    def __post_init__(self):
        if len(self.coeffs) != self.truncation + 1:
            raise SeriesError("coefficient count does not match truncation")

    def __getitem__(self, n: int) -> int:
        return coefficient(self, n)

    def __len__(self):
        return len(self.coeffs)

    @property
    def label(self) -> str | None:
        return self.spec.label if self.spec is not None else None

    def to_json(self) -> dict:
        return {
            "label": self.label,
            "truncation": self.truncation,
            "coeffs": [str(c) for c in self.coeffs],
        }

    def dumps(self) -> str:
        return json.dumps(self.to_json())

    @classmethod
    def from_json(cls, obj: dict) -> "CoeffSeries":
        return cls(int(obj["truncation"]), tuple(int(c) for c in obj["coeffs"]))


def expand(spec: FactorSpec, N: int) -> CoeffSeries:
    _check_n(N)
    if not spec.covers(N):
        raise SeriesError(f"{spec.label} was built for parts <= {spec.size}, cannot expand to {N}")
    c = [0] * (N + 1)
    c[0] = 1
    for f in spec.factors:
        k, b = f.part, f.multiplicity
        if b == 0 or k > N:
            continue
        if f.kind is Kind.REPEATABLE:
            for _ in range(b):
                for n in range(k, N + 1):
                    c[n] += c[n - k]
        else:
            # (1+q^k)^b = sum_j C(b,j) q^{jk}; descending n keeps reads on old values
            binom = [math.comb(b, j) for j in range(min(b, N // k) + 1)]
            for n in range(N, k - 1, -1):
                acc = c[n]
                for j in range(1, min(b, n // k) + 1):
                    acc += binom[j] * c[n - j * k]
                c[n] = acc
    return CoeffSeries(N, tuple(c), spec)


def coefficient(s: CoeffSeries, n: int) -> int:
    if n < 0:
        return 0
    if n > s.truncation:
        raise TruncationError(f"index {n} beyond truncation {s.truncation}")
    return s.coeffs[n]


def identity_series(N: int) -> CoeffSeries:
    _check_n(N)
    return CoeffSeries(N, (1,) + (0,) * N)


def convolve(a: CoeffSeries, b: CoeffSeries) -> CoeffSeries:
    """Cauchy product, truncated to the smaller of the two truncations."""
    N = min(a.truncation, b.truncation)
    x, y = a.coeffs, b.coeffs
    out = tuple(sum(x[m] * y[n - m] for m in range(n + 1)) for n in range(N + 1))
    spec = None
    if a.spec is not None and b.spec is not None:
        spec = FactorSpec.build(a.spec.factors + b.spec.factors, f"{a.spec.label}*{b.spec.label}")
    return CoeffSeries(N, out, spec)


def convolution_terms(a: CoeffSeries, b: CoeffSeries, n: int) -> list[int]:
    """The summands ``a_m * b_{n-m}`` for ``m = 0..n``."""
    return [coefficient(a, m) * coefficient(b, n - m) for m in range(n + 1)]


def series_equal(a: CoeffSeries, b: CoeffSeries) -> bool:
    if a.truncation != b.truncation:
        raise SeriesError(f"truncation mismatch: {a.truncation} vs {b.truncation}")
    return a.coeffs == b.coeffs
