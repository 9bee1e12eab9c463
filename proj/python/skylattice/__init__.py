"""Skyline, skycube and emerging-skycube engine.

The heavy lifting lives in the C++ extension; this package re-exports its
surface: relation loading and splitting, skyline/skycube computation, the
concept-lattice materialization with closure-based query rebuild, and the
emerging-skycube pipeline (merge, abridge, emerging cells with L border,
closed and closed-L reductions).
"""

from ._core import (
    ConfigError,
    DomainError,
    IngestError,
    Materialization,
    MergedRelation,
    Relation,
    ResourceError,
    SubspaceLookupError,
    UsageError,
    abridge,
    detect_invariant_measures,
    emerging,
    full_skycube,
    generate_synthetic,
    load_relation,
    materialization_from_text,
    materialize,
    merge,
    merged_from_text,
    pokemon_csv,
    pokemon_schema_json,
    sample_query,
    skyline,
    skyline_bruteforce,
    split,
)

__all__ = [
    "ConfigError",
    "DomainError",
    "IngestError",
    "Materialization",
    "MergedRelation",
    "Relation",
    "ResourceError",
    "SubspaceLookupError",
    "UsageError",
    "abridge",
    "detect_invariant_measures",
    "emerging",
    "full_skycube",
    "generate_synthetic",
    "load_relation",
    "materialization_from_text",
    "materialize",
    "merge",
    "merged_from_text",
    "pokemon_csv",
    "pokemon_schema_json",
    "sample_query",
    "skyline",
    "skyline_bruteforce",
    "split",
]
