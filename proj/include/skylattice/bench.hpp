#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "skylattice/lattice.hpp"
#include "skylattice/relation.hpp"

namespace sky {

struct GeneratorConfig {
    std::size_t rows = 0;        // n >= 1
    std::size_t criteria = 0;    // d >= 1
    std::size_t cardinality = 0; // k >= 2, values drawn from {0..k-1}
    std::uint64_t seed = 0;
};

/// n rows with d decorrelated criteria, each value uniform over {0..k-1},
/// plus one dimension column carrying the row index. Identical output for
/// identical config and seed.
Relation generate_synthetic(const GeneratorConfig& cfg);

/// A query subspace whose size follows Binomial(d, 1/2) clamped to [1, d],
/// members uniform without replacement.
CriterionSet sample_query(std::size_t criterion_count, std::uint64_t seed);

struct BenchPoint {
    std::size_t n = 0;
    std::size_t d = 0;
    std::size_t k = 0;
    std::uint64_t seed = 0;
    std::size_t full_tuple_count = 0;
    std::size_t materialized_tuple_count = 0;
    std::size_t concept_count = 0;
    double build_full_ms = 0;
    double build_materialized_ms = 0;
    std::size_t query_count = 0;
    double mean_baseline_ms = 0;
    double mean_materialized_ms = 0;
    double median_baseline_ms = 0;
    double median_materialized_ms = 0;
    double mean_candidates = 0;
};

struct BenchReport {
    std::vector<BenchPoint> points;
};

/// Stored-tuple counts of the full skycube versus the materialization, one
/// point per config.
BenchReport bench_size(const std::vector<GeneratorConfig>& sweep);

/// Mean/median latency of the materialized query path versus baseline SFS
/// over sampled subspaces. A query whose two paths disagree aborts the run
/// (DomainError) rather than reporting a latency.
BenchReport bench_query(const GeneratorConfig& cfg, std::size_t queries,
                        std::uint64_t query_seed);

}  // namespace sky
