#include <random>

#include "doctest.h"
#include "skylattice/fixtures.hpp"
#include "skylattice/skyline.hpp"
#include "support.hpp"

using namespace sky;

namespace {

Relation two_point_relation() {
    Schema schema({"Id"}, {{"A", Direction::Minimize}, {"B", Direction::Minimize}});
    std::vector<Row> rows;
    rows.push_back({1, {"1"}, {0, 1}, ""});
    rows.push_back({2, {"2"}, {1, 0}, ""});
    return Relation(std::move(schema), std::move(rows));
}

}  // namespace

TEST_CASE("dominance basics") {
    const Relation r = two_point_relation();
    const CriterionSet a = CriterionSet::single(0);
    const CriterionSet ab = CriterionSet::full(2);

    CHECK(dominates(r, 1, 2, a));
    CHECK_FALSE(dominates(r, 1, 2, ab));
    CHECK_FALSE(dominates(r, 2, 1, ab));
    CHECK_FALSE(dominates(r, 1, 1, ab));
    CHECK_THROWS_AS(dominates(r, 1, 2, CriterionSet::none()), DomainError);

    // The two-point counter-example: losing on A, surviving on AB.
    CHECK(skyline_bruteforce(r, a).members == std::vector<RowId>{1});
    CHECK(skyline_bruteforce(r, ab).members == std::vector<RowId>{1, 2});
}

TEST_CASE("brute-force skyline on the fixtures") {
    const Relation r1 = fixtures::pokemon_side1();
    const Relation r2 = fixtures::pokemon_side2();
    const Schema& schema = r1.schema();

    CHECK(skyline_bruteforce(r1, schema.parse_subspace("RDL")).members ==
          std::vector<RowId>{1, 3, 6});
    CHECK(skyline_bruteforce(r2, schema.parse_subspace("L")).members ==
          std::vector<RowId>{1, 3, 6, 9});
    CHECK(skyline_bruteforce(r1, CriterionSet::none()).members.empty());

    Schema single_schema({"Id"}, {{"A", Direction::Minimize}});
    const Relation single(single_schema, {{1, {"1"}, {42}, ""}});
    CHECK(skyline_bruteforce(single, CriterionSet::single(0)).members ==
          std::vector<RowId>{1});
}

TEST_CASE("sfs score") {
    const Relation r1 = fixtures::pokemon_side1();
    const CriterionSet rdl = r1.schema().all_criteria();
    CHECK(sfs_score(r1, 1, rdl) == doctest::Approx(60));
    CHECK(sfs_score(r1, 5, CriterionSet::single(0)) == doctest::Approx(1));

    Schema max_schema({"Id"}, {{"A", Direction::Maximize}});
    const Relation maxi(max_schema, {{1, {"1"}, {7}, ""}});
    CHECK(sfs_score(maxi, 1, CriterionSet::single(0)) == doctest::Approx(-7));
}

TEST_CASE("sfs skyline on the fixtures") {
    const Relation r1 = fixtures::pokemon_side1();
    const Relation r2 = fixtures::pokemon_side2();
    const Schema& schema = r1.schema();

    CHECK(skyline_sfs(r2, schema.parse_subspace("RDL")).members == std::vector<RowId>{1, 6});
    CHECK(skyline_sfs(r1, schema.parse_subspace("D")).members == std::vector<RowId>{1, 9});

    // Equal rows are mutually non-dominating and both kept.
    Schema pair_schema({"Id"}, {{"A", Direction::Minimize}, {"B", Direction::Minimize}});
    std::vector<Row> rows;
    rows.push_back({1, {"1"}, {2, 2}, ""});
    rows.push_back({2, {"2"}, {2, 2}, ""});
    const Relation ties(pair_schema, std::move(rows));
    CHECK(skyline_sfs(ties, CriterionSet::full(2)).members == std::vector<RowId>{1, 2});
}

TEST_CASE("full skycube matches the fixture lattices") {
    for (int side : {1, 2}) {
        const Relation r = side == 1 ? fixtures::pokemon_side1() : fixtures::pokemon_side2();
        const Skycube cube = full_skycube(r);
        REQUIRE(cube.subspace_count() == 8);
        for (const auto& expected : fixtures::expected_skycube(side)) {
            const CriterionSet c = r.schema().parse_subspace(expected.subspace);
            CHECK(cube.at(c).members == expected.members);
        }
    }

    Schema schema({"Id"}, {{"A", Direction::Minimize}});
    const Relation empty(schema, {});
    const Skycube cube = full_skycube(empty);
    for (const auto& cuboid : cube.all()) CHECK(cuboid.members.empty());

    CHECK_THROWS_AS(full_skycube(fixtures::pokemon_side1(), 2), ResourceError);
}

TEST_CASE("full skycube is oblivious to thread count") {
    std::mt19937_64 gen(5);
    const Relation r = testsupport::random_relation(gen, 80, 5, 6);
    const Skycube lone = full_skycube(r, 20, 1);
    const Skycube pooled = full_skycube(r, 20, 3);
    for (const auto& cuboid : lone.all())
        CHECK(cuboid.members == pooled.at(cuboid.subspace).members);
}

TEST_CASE("sfs equals brute force on random relations") {
    std::mt19937_64 gen(99);
    for (int round = 0; round < 60; ++round) {
        const Relation r = testsupport::random_relation(gen, 200, 6, 8);
        const std::size_t d = r.schema().criterion_count();
        for (std::uint32_t mask = 1; mask < (1u << d); ++mask) {
            const CriterionSet c = CriterionSet::from_bits(mask);
            CHECK(skyline_sfs(r, c).members == skyline_bruteforce(r, c).members);
        }
    }
}

TEST_CASE("sfs sort property") {
    std::mt19937_64 gen(123);
    for (int round = 0; round < 30; ++round) {
        const Relation r = testsupport::random_relation(gen, 40, 4, 5);
        const CriterionSet c =
            testsupport::random_subset(gen, r.schema().criterion_count(), false);
        for (const Row& t : r.rows()) {
            for (const Row& u : r.rows()) {
                if (u.id == t.id) continue;
                if (sfs_score(r, u.id, c) > sfs_score(r, t.id, c))
                    CHECK_FALSE(dominates(r, u.id, t.id, c));
            }
        }
    }
}

TEST_CASE("dominance is a strict partial order") {
    std::mt19937_64 gen(321);
    for (int round = 0; round < 30; ++round) {
        const Relation r = testsupport::random_relation(gen, 25, 4, 3);
        const CriterionSet c =
            testsupport::random_subset(gen, r.schema().criterion_count(), false);
        for (const Row& a : r.rows()) {
            CHECK_FALSE(dominates(r, a.id, a.id, c));
            for (const Row& b : r.rows()) {
                if (dominates(r, a.id, b.id, c)) CHECK_FALSE(dominates(r, b.id, a.id, c));
                for (const Row& d : r.rows())
                    if (dominates(r, a.id, b.id, c) && dominates(r, b.id, d.id, c))
                        CHECK(dominates(r, a.id, d.id, c));
            }
        }
    }
}

TEST_CASE("skyline membership is not monotone") {
    // Adding a criterion can remove a skyline member: tuple 5 survives R
    // alone but not RD on the expert side.
    const Relation r2 = fixtures::pokemon_side2();
    const Schema& schema = r2.schema();
    const auto sky_r = skyline_bruteforce(r2, schema.parse_subspace("R")).members;
    const auto sky_rd = skyline_bruteforce(r2, schema.parse_subspace("RD")).members;
    CHECK(std::count(sky_r.begin(), sky_r.end(), 5) == 1);
    CHECK(std::count(sky_rd.begin(), sky_rd.end(), 5) == 0);
}

TEST_CASE("disagree condition") {
    const Relation r1 = fixtures::pokemon_side1();
    const Schema& schema = r1.schema();
    CHECK_FALSE(disagree_condition(r1, schema.parse_subspace("R")));  // rows 5,6 tie
    CHECK(disagree_condition(r1, schema.parse_subspace("RDL")));      // all distinct
}
