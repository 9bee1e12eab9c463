#include "skylattice/bench.hpp"

#include <algorithm>
#include <chrono>
#include <random>

namespace sky {

namespace {

std::string criterion_name(std::size_t index) {
    std::string name(1, static_cast<char>('A' + index % 26));
    if (index >= 26) name += std::to_string(index / 26);
    return name;
}

double elapsed_ms(std::chrono::steady_clock::time_point start) {
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start)
        .count();
}

double median(std::vector<double> values) {
    if (values.empty()) return 0;
    std::sort(values.begin(), values.end());
    const std::size_t mid = values.size() / 2;
    if (values.size() % 2) return values[mid];
    return (values[mid - 1] + values[mid]) / 2;
}

}  // namespace

Relation generate_synthetic(const GeneratorConfig& cfg) {
    if (cfg.rows < 1 || cfg.criteria < 1 || cfg.cardinality < 2)
        throw ConfigError("generator needs rows >= 1, criteria >= 1, cardinality >= 2");
    if (cfg.criteria > CriterionSet::kMaxCriteria)
        throw ConfigError("generator caps at 32 criteria");

    std::vector<Criterion> criteria;
    for (std::size_t c = 0; c < cfg.criteria; ++c)
        criteria.push_back({criterion_name(c), Direction::Minimize});
    Schema schema({"Row"}, std::move(criteria));

    // mt19937_64 output is fully specified, so a config+seed pair yields the
    // same relation everywhere. Modulo bias at 64 bits is negligible for the
    // cardinalities in play.
    std::mt19937_64 gen(cfg.seed);
    std::vector<Row> rows;
    rows.reserve(cfg.rows);
    for (std::size_t i = 0; i < cfg.rows; ++i) {
        Row row;
        row.id = static_cast<RowId>(i + 1);
        row.dims.push_back(std::to_string(i + 1));
        row.criteria.reserve(cfg.criteria);
        for (std::size_t c = 0; c < cfg.criteria; ++c)
            row.criteria.push_back(static_cast<double>(gen() % cfg.cardinality));
        rows.push_back(std::move(row));
    }
    return Relation(std::move(schema), std::move(rows));
}

CriterionSet sample_query(std::size_t criterion_count, std::uint64_t seed) {
    if (criterion_count < 1) throw ConfigError("need at least one criterion to sample from");
    std::mt19937_64 gen(seed);

    std::size_t size = 0;
    for (std::size_t i = 0; i < criterion_count; ++i) size += gen() & 1;
    size = std::clamp<std::size_t>(size, 1, criterion_count);

    std::vector<std::size_t> indices(criterion_count);
    for (std::size_t i = 0; i < criterion_count; ++i) indices[i] = i;
    CriterionSet out;
    for (std::size_t i = 0; i < size; ++i) {
        const std::size_t j = i + gen() % (criterion_count - i);
        std::swap(indices[i], indices[j]);
        out = out.with(indices[i]);
    }
    return out;
}

BenchReport bench_size(const std::vector<GeneratorConfig>& sweep) {
    BenchReport report;
    for (const auto& cfg : sweep) {
        BenchPoint point;
        point.n = cfg.rows;
        point.d = cfg.criteria;
        point.k = cfg.cardinality;
        point.seed = cfg.seed;

        const Relation r = generate_synthetic(cfg);

        auto start = std::chrono::steady_clock::now();
        const Skycube cube = full_skycube(r);
        point.build_full_ms = elapsed_ms(start);
        point.full_tuple_count = cube.stored_tuple_count();

        start = std::chrono::steady_clock::now();
        const MaterializedSkycube m = build_skyline_lattice(r);
        point.build_materialized_ms = elapsed_ms(start);
        point.materialized_tuple_count = m.stored_tuple_count();
        point.concept_count = m.concepts().size();

        report.points.push_back(point);
    }
    return report;
}

BenchReport bench_query(const GeneratorConfig& cfg, std::size_t queries,
                        std::uint64_t query_seed) {
    const Relation r = generate_synthetic(cfg);

    BenchPoint point;
    point.n = cfg.rows;
    point.d = cfg.criteria;
    point.k = cfg.cardinality;
    point.seed = cfg.seed;
    point.query_count = queries;

    auto start = std::chrono::steady_clock::now();
    const MaterializedSkycube m = build_skyline_lattice(r);
    point.build_materialized_ms = elapsed_ms(start);
    point.materialized_tuple_count = m.stored_tuple_count();
    point.concept_count = m.concepts().size();

    // Warm both paths once so the measured queries see steady state.
    if (queries > 0) {
        const CriterionSet warm = sample_query(cfg.criteria, query_seed);
        (void)skyline_sfs(r, warm);
        (void)query_skyline(m, r, warm);
    }

    std::vector<double> baseline_ms, materialized_ms;
    double candidates = 0;
    for (std::size_t q = 0; q < queries; ++q) {
        const CriterionSet subspace = sample_query(cfg.criteria, query_seed + 1 + q);

        start = std::chrono::steady_clock::now();
        const Skycuboid baseline = skyline_sfs(r, subspace);
        baseline_ms.push_back(elapsed_ms(start));

        start = std::chrono::steady_clock::now();
        const Skycuboid rebuilt = query_skyline(m, r, subspace);
        materialized_ms.push_back(elapsed_ms(start));

        if (baseline.members != rebuilt.members)
            throw DomainError("materialized query disagrees with the baseline on subspace mask " +
                              std::to_string(subspace.bits()));

        const auto& node = m.concept_at(m.closure_of(subspace));
        std::size_t members = 0;
        for (const auto& cls : node.skyline_classes) members += cls.size();
        candidates += static_cast<double>(members);
    }
    if (queries > 0) {
        double sum = 0;
        for (double v : baseline_ms) sum += v;
        point.mean_baseline_ms = sum / static_cast<double>(queries);
        sum = 0;
        for (double v : materialized_ms) sum += v;
        point.mean_materialized_ms = sum / static_cast<double>(queries);
        point.median_baseline_ms = median(baseline_ms);
        point.median_materialized_ms = median(materialized_ms);
        point.mean_candidates = candidates / static_cast<double>(queries);
    }

    BenchReport report;
    report.points.push_back(point);
    return report;
}

}  // namespace sky
