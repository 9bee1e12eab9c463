#include <random>
#include <sstream>

#include "doctest.h"
#include "skylattice/fixtures.hpp"
#include "skylattice/relation.hpp"
#include "support.hpp"

using namespace sky;

TEST_CASE("schema validation") {
    CHECK_THROWS_AS(Schema({"A"}, {}), ConfigError);
    CHECK_THROWS_AS(Schema({"X"}, {{"X", Direction::Minimize}}), ConfigError);
    CHECK_THROWS_AS(Schema({}, {{"A", Direction::Minimize}}, {{"B", "B1", "B2"}}), ConfigError);
    CHECK_THROWS_AS(Schema({}, {{"A", Direction::Minimize}}, {{"A", "X", "X"}}), ConfigError);
    CHECK_NOTHROW(Schema({"D"}, {{"A", Direction::Minimize}}, {{"A", "A1", "A2"}}));
}

TEST_CASE("subspace labels and parsing") {
    const Schema schema = fixtures::pokemon_side_schema();
    const CriterionSet rd = CriterionSet::from_bits(0b011);
    CHECK(schema.subspace_label(rd) == "RD");
    CHECK(schema.subspace_label(CriterionSet::none()) == "-");
    CHECK(schema.parse_subspace("RD") == rd);
    CHECK(schema.parse_subspace("-") == CriterionSet::none());
    CHECK(schema.parse_subspace("Duration") == CriterionSet::single(1));
    CHECK(schema.parse_subspace("Rarity+Loss") == CriterionSet::from_bits(0b101));
    CHECK_THROWS_AS(schema.parse_subspace("RX"), LookupError);

    // Colliding initials fall back to '+'-joined names.
    const Schema clash({}, {{"Cost", Direction::Minimize}, {"Count", Direction::Minimize}});
    CHECK(clash.subspace_label(CriterionSet::full(2)) == "Cost+Count");
    CHECK(clash.parse_subspace("Cost+Count") == CriterionSet::full(2));
    CHECK_THROWS_AS(clash.parse_subspace("CC"), LookupError);
}

TEST_CASE("loading the example relations") {
    // Both side tables, transcribed here independently of the CSV constants.
    struct GoldenRow {
        std::vector<std::string> dims;
        std::vector<double> criteria;
    };
    const std::vector<GoldenRow> golden1 = {
        {{"UU", "A", "D"}, {5, 25, 30}}, {{"OU", "B", "E"}, {4, 65, 50}},
        {{"OU", "B", "F"}, {4, 35, 40}}, {{"OU", "B", "A"}, {4, 85, 40}},
        {{"OU", "C", "A"}, {1, 95, 60}}, {{"OU", "C", "B"}, {1, 35, 50}},
        {{"OU", "D", "B"}, {9, 85, 60}}, {{"OU", "D", "C"}, {9, 85, 70}},
        {{"UU", "E", "D"}, {7, 25, 50}}, {{"UU", "E", "E"}, {7, 65, 30}},
    };
    const std::vector<GoldenRow> golden2 = {
        {{"UU", "A", "D"}, {5, 20, 30}}, {{"OU", "B", "E"}, {4, 60, 45}},
        {{"OU", "B", "F"}, {4, 30, 30}}, {{"OU", "B", "A"}, {4, 80, 50}},
        {{"OU", "C", "A"}, {1, 90, 70}}, {{"OU", "C", "B"}, {1, 30, 30}},
        {{"OU", "D", "B"}, {9, 80, 50}}, {{"OU", "D", "C"}, {9, 90, 70}},
        {{"UU", "E", "D"}, {7, 20, 30}}, {{"UU", "E", "E"}, {7, 60, 45}},
    };

    const Relation r1 = fixtures::pokemon_side1();
    const Relation r2 = fixtures::pokemon_side2();
    REQUIRE(r1.size() == golden1.size());
    REQUIRE(r2.size() == golden2.size());
    CHECK(r1.schema().criterion_count() == 3);
    for (RowId id = 1; id <= 10; ++id) {
        CHECK(r1.row(id).dims == golden1[id - 1].dims);
        CHECK(r1.row(id).criteria == golden1[id - 1].criteria);
        CHECK(r2.row(id).dims == golden2[id - 1].dims);
        CHECK(r2.row(id).criteria == golden2[id - 1].criteria);
    }
}

TEST_CASE("load edge cases") {
    const Schema schema = fixtures::pokemon_side_schema();

    std::istringstream empty("Tier,Player,Opponent,Rarity,Duration,Loss\n");
    CHECK(load_relation(empty, schema).size() == 0);

    std::istringstream bad("Tier,Player,Opponent,Rarity,Duration,Loss\nUU,A,D,5,abc,30\n");
    CHECK_THROWS_WITH_AS(load_relation(bad, schema),
                         doctest::Contains("column Duration"), IngestError);

    std::istringstream missing("Tier,Player,Rarity,Duration,Loss\nUU,A,5,25,30\n");
    CHECK_THROWS_AS(load_relation(missing, schema), ConfigError);
}

TEST_CASE("split by property") {
    const Relation parent = fixtures::pokemon();
    const SplitResult split = split_by_property(parent);
    CHECK(split.dropped == 0);
    REQUIRE(split.side1.size() == 10);
    REQUIRE(split.side2.size() == 10);

    const Relation expect1 = fixtures::pokemon_side1();
    const Relation expect2 = fixtures::pokemon_side2();
    for (RowId id = 1; id <= 10; ++id) {
        CHECK(split.side1.row(id).dims == expect1.row(id).dims);
        CHECK(split.side1.row(id).criteria == expect1.row(id).criteria);
        CHECK(split.side2.row(id).dims == expect2.row(id).dims);
        CHECK(split.side2.row(id).criteria == expect2.row(id).criteria);
    }

    // One-sided split: everything matches the first value.
    std::istringstream one_sided(
        "Tier,Player,Opponent,Rank,Rarity,Duration,Loss\n"
        "UU,A,D,N,5,25,30\n"
        "OU,B,E,N,4,65,50\n");
    const Relation all_n = load_relation(one_sided, fixtures::pokemon_schema());
    const SplitResult s = split_by_property(all_n);
    CHECK(s.side1.size() == 2);
    CHECK(s.side2.size() == 0);
    CHECK(s.dropped == 0);

    // Rows with a third value are dropped and counted.
    std::istringstream with_x(
        "Tier,Player,Opponent,Rank,Rarity,Duration,Loss\n"
        "UU,A,D,N,5,25,30\n"
        "UU,A,D,X,5,25,30\n"
        "OU,B,E,X,4,65,50\n"
        "OU,B,E,E,4,60,45\n");
    const SplitResult sx = split_by_property(load_relation(with_x, fixtures::pokemon_schema()));
    CHECK(sx.side1.size() == 1);
    CHECK(sx.side2.size() == 1);
    CHECK(sx.dropped == 2);

    CHECK_THROWS_AS(split_by_property(fixtures::pokemon_side1()), UsageError);
}

TEST_CASE("split sides partition the kept rows") {
    std::mt19937_64 gen(42);
    for (int round = 0; round < 20; ++round) {
        const Relation base = testsupport::random_relation(gen, 40, 3, 3);
        // Rebuild with a split column derived from the first criterion.
        std::vector<Criterion> criteria = base.schema().criteria();
        Schema schema({"Id"}, criteria, {}, SplitProperty{"Half", "lo", "hi"});
        std::vector<Row> rows;
        for (const Row& row : base.rows()) {
            Row copy = row;
            copy.split_value = row.criteria[0] < 1.5 ? "lo" : "hi";
            rows.push_back(std::move(copy));
        }
        const Relation r(schema, std::move(rows));
        const SplitResult split = split_by_property(r);
        CHECK(split.side1.size() + split.side2.size() + split.dropped == r.size());
        for (const Relation* side : {&split.side1, &split.side2})
            for (std::size_t i = 0; i < side->size(); ++i)
                CHECK(side->rows()[i].id == i + 1);
    }
}

TEST_CASE("projection") {
    const Relation r1 = fixtures::pokemon_side1();
    const Schema& schema = r1.schema();
    CHECK(project(r1, 7, schema.parse_subspace("RD")) == std::vector<double>{9, 85});
    CHECK(project(r1, 3, CriterionSet::none()).empty());

    const Relation r2 = fixtures::pokemon_side2();
    CHECK(project(r2, 9, schema.parse_subspace("DL")) == std::vector<double>{20, 30});
    CHECK_THROWS_AS(project(r1, 99, schema.parse_subspace("R")), LookupError);
}

TEST_CASE("projection consistency on random relations") {
    std::mt19937_64 gen(7);
    for (int round = 0; round < 50; ++round) {
        const Relation r = testsupport::random_relation(gen);
        const std::size_t d = r.schema().criterion_count();
        const CriterionSet c1 = testsupport::random_subset(gen, d);
        const CriterionSet c2 = testsupport::random_subset(gen, d);
        const CriterionSet both = c1 | c2;
        for (const Row& row : r.rows()) {
            const auto full = project(r, row.id, both);
            const auto sub = project(r, row.id, c1);
            // Restrict the union projection to c1's positions.
            std::vector<double> restricted;
            const auto union_indices = both.indices();
            for (std::size_t i = 0; i < union_indices.size(); ++i)
                if (c1.contains(union_indices[i])) restricted.push_back(full[i]);
            CHECK(restricted == sub);
        }
    }
}

TEST_CASE("format_number") {
    CHECK(format_number(45) == "45");
    CHECK(format_number(2.0 / 3 * 3.5) == "2.33333");
    CHECK(format_number(std::numeric_limits<double>::infinity()) == "inf");
    CHECK(format_number(-0.0) == "0");
    CHECK(format_number(1.17) == "1.17");
}

TEST_CASE("schema json round trip") {
    const Schema schema = fixtures::pokemon_schema();
    const Schema parsed = Schema::from_json(schema.to_json());
    CHECK(parsed.compatible_with(schema));
    CHECK(parsed.split().has_value());
    CHECK(parsed.split()->column == "Rank");
    CHECK(parsed.measure_pairs().size() == 2);
    CHECK_THROWS_AS(Schema::from_json("not json"), ConfigError);
    CHECK_THROWS_AS(Schema::from_json("{}"), ConfigError);
}
