"""Colored partition ("prefab") counts, statistics and identity sweeps."""
from .series import (CoeffSeries, Factor, FactorSpec, Kind, SeriesError, TruncationError,
                     coefficient, convolve, distinct, expand, kcolors, odd, odd_overlined,
                     overpartition, parse_spec, series_equal, uniform)
from .partitions import (ColoredPart, ColoredPartition, Merge, OracleCapError, enumerate_partitions,
                         frequency, oracle_stat, parts_repeated_at_least, sum_parts_divisible_by)
from .stats import StatKind, StatTable, build_table
from .identities import IdentityReport, Mode, TheoremId, mutation_smoke, verify, verify_all

__version__ = "0.1.0"
