"""Permutation-based consistent hashing, the classic ring and universal cycles."""

from ._permhash import (
    NodeTable,
    PermhashError,
    Ring,
    build_cycle,
    capacity,
    census,
    count_symbols,
    cycle_lookup,
    derive_key,
    first_live,
    first_simple,
    min_key_bits,
    permute,
    remap,
    ring_median_mean,
    ring_spread,
    substitute_removed,
    survival,
    verify_cycle,
)

__all__ = [
    "NodeTable",
    "PermhashError",
    "Ring",
    "build_cycle",
    "capacity",
    "census",
    "count_symbols",
    "cycle_lookup",
    "derive_key",
    "first_live",
    "first_simple",
    "min_key_bits",
    "permute",
    "remap",
    "ring_median_mean",
    "ring_spread",
    "substitute_removed",
    "survival",
    "verify_cycle",
]
