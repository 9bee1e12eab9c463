#include <cmath>

#include "doctest.h"
#include "skylattice/bench.hpp"

using namespace sky;

TEST_CASE("generator determinism and validation") {
    const GeneratorConfig cfg{1000, 10, 100, 7};
    const Relation a = generate_synthetic(cfg);
    const Relation b = generate_synthetic(cfg);
    REQUIRE(a.size() == 1000);
    CHECK(a.schema().criterion_count() == 10);
    for (std::size_t i = 0; i < a.size(); ++i)
        CHECK(a.rows()[i].criteria == b.rows()[i].criteria);

    CHECK_THROWS_AS(generate_synthetic({0, 3, 10, 1}), ConfigError);
    CHECK_THROWS_AS(generate_synthetic({10, 0, 10, 1}), ConfigError);
    CHECK_THROWS_AS(generate_synthetic({10, 3, 1, 1}), ConfigError);
}

TEST_CASE("generator value frequencies concentrate") {
    const GeneratorConfig cfg{1000, 4, 2, 11};
    const Relation r = generate_synthetic(cfg);
    const double expected = 1000.0 / 2;
    const double sigma = std::sqrt(1000 * 0.5 * 0.5);
    for (std::size_t c = 0; c < 4; ++c) {
        std::size_t zeros = 0;
        for (const Row& row : r.rows()) zeros += row.criteria[c] == 0 ? 1 : 0;
        CHECK(std::abs(double(zeros) - expected) <= 5 * sigma);
    }
}

TEST_CASE("criterion columns are nearly uncorrelated") {
    const GeneratorConfig cfg{10000, 4, 16, 3};
    const Relation r = generate_synthetic(cfg);
    for (std::size_t a = 0; a < 4; ++a) {
        for (std::size_t b = a + 1; b < 4; ++b) {
            double sum_a = 0, sum_b = 0, sum_ab = 0, sum_a2 = 0, sum_b2 = 0;
            for (const Row& row : r.rows()) {
                const double va = row.criteria[a];
                const double vb = row.criteria[b];
                sum_a += va;
                sum_b += vb;
                sum_ab += va * vb;
                sum_a2 += va * va;
                sum_b2 += vb * vb;
            }
            const double n = double(r.size());
            const double cov = sum_ab / n - (sum_a / n) * (sum_b / n);
            const double var_a = sum_a2 / n - (sum_a / n) * (sum_a / n);
            const double var_b = sum_b2 / n - (sum_b / n) * (sum_b / n);
            CHECK(std::abs(cov / std::sqrt(var_a * var_b)) < 0.05);
        }
    }
}

TEST_CASE("query sampler") {
    CHECK(sample_query(1, 42) == CriterionSet::single(0));

    double total = 0;
    for (std::uint64_t s = 0; s < 10000; ++s) {
        const CriterionSet q = sample_query(10, s);
        CHECK_FALSE(q.empty());
        CHECK(q.subset_of(CriterionSet::full(10)));
        total += double(q.size());
    }
    CHECK(std::abs(total / 10000 - 5.0) < 0.2);
}

TEST_CASE("size benchmark counts") {
    const BenchReport report =
        bench_size({{200, 4, 8, 1}, {200, 4, 8, 2}, {1, 3, 5, 1}});
    REQUIRE(report.points.size() == 3);
    for (const auto& p : report.points) {
        CHECK(p.materialized_tuple_count <= p.full_tuple_count);
        CHECK(p.concept_count >= 1);
    }
    // A one-row relation keeps that row in every subspace. The full skycube
    // stores it once per non-empty subspace; the lattice collapses to the
    // single top concept, and every query still answers with the row.
    const auto& tiny = report.points[2];
    CHECK(tiny.full_tuple_count == 7);
    CHECK(tiny.materialized_tuple_count == 1);
    const Relation one = generate_synthetic({1, 3, 5, 1});
    const MaterializedSkycube m = build_skyline_lattice(one);
    for (std::uint32_t mask = 1; mask < 8; ++mask)
        CHECK(query_skyline(m, one, CriterionSet::from_bits(mask)).members ==
              std::vector<RowId>{1});
}

TEST_CASE("query benchmark checks results and counts candidates") {
    const GeneratorConfig cfg{400, 5, 4, 9};
    const BenchReport report = bench_query(cfg, 25, 77);
    const auto& p = report.points.front();
    CHECK(p.query_count == 25);
    CHECK(p.mean_candidates <= double(cfg.rows));
    CHECK(p.mean_candidates > 0);
}
