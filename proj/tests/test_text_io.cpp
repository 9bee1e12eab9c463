#include <filesystem>
#include <sstream>

#include "doctest.h"
#include "skylattice/fixtures.hpp"
#include "skylattice/text_io.hpp"
#include "support.hpp"

using namespace sky;

TEST_CASE("materialization documents round trip") {
    for (int side : {1, 2}) {
        const Relation r = side == 1 ? fixtures::pokemon_side1() : fixtures::pokemon_side2();
        const MaterializedSkycube m = build_skyline_lattice(r);

        std::ostringstream out;
        write_materialization(out, m);
        std::istringstream in(out.str());
        const MaterializedSkycube loaded = read_materialization(in);

        REQUIRE(loaded.concepts().size() == m.concepts().size());
        CHECK(loaded.row_count() == m.row_count());
        const std::size_t d = r.schema().criterion_count();
        for (std::uint32_t mask = 0; mask < (1u << d); ++mask) {
            const CriterionSet c = CriterionSet::from_bits(mask);
            CHECK(query_skyline_stored(loaded, c).members ==
                  query_skyline(m, r, c).members);
            CHECK(query_skyline_stored(loaded, c).members ==
                  skyline_bruteforce(r, c).members);
        }

        std::ostringstream again;
        write_materialization(again, m);
        CHECK(again.str() == out.str());
    }

    // Random relations: the persisted query path answers like the
    // in-memory one on every subspace.
    std::mt19937_64 gen(77);
    for (int round = 0; round < 15; ++round) {
        const Relation r = testsupport::random_relation(gen, 40, 4, 3);
        const MaterializedSkycube m = build_skyline_lattice(r);
        std::ostringstream out;
        write_materialization(out, m);
        std::istringstream in(out.str());
        const MaterializedSkycube loaded = read_materialization(in);
        const std::size_t d = r.schema().criterion_count();
        for (std::uint32_t mask = 0; mask < (1u << d); ++mask) {
            const CriterionSet c = CriterionSet::from_bits(mask);
            CHECK(query_skyline_stored(loaded, c).members == query_skyline(m, r, c).members);
        }
    }
}

TEST_CASE("merged documents round trip") {
    const Relation r1 = fixtures::pokemon_side1();
    const Relation r2 = fixtures::pokemon_side2();
    const MergedRelation merged = merge_materializations(
        build_skyline_lattice(r1), build_skyline_lattice(r2), r1, r2);

    std::ostringstream out;
    write_merged(out, merged);
    std::istringstream in(out.str());
    const MergedRelation loaded = read_merged(in);

    REQUIRE(loaded.rows.size() == merged.rows.size());
    CHECK(loaded.invariant_measures == merged.invariant_measures);
    CHECK(loaded.measures == merged.measures);
    for (std::size_t i = 0; i < merged.rows.size(); ++i) {
        CHECK(loaded.rows[i].origin_subspace == merged.rows[i].origin_subspace);
        CHECK(loaded.rows[i].dims == merged.rows[i].dims);
        CHECK(loaded.rows[i].invariants == merged.rows[i].invariants);
        CHECK(loaded.rows[i].side1 == merged.rows[i].side1);
        CHECK(loaded.rows[i].side2 == merged.rows[i].side2);
    }

    // Abridging the loaded document matches abridging in memory.
    const MergedRelation a1 = abridge(merged);
    const MergedRelation a2 = abridge(loaded);
    REQUIRE(a1.rows.size() == a2.rows.size());
    for (std::size_t i = 0; i < a1.rows.size(); ++i) {
        CHECK(a1.rows[i].dims == a2.rows[i].dims);
        CHECK(a1.rows[i].side1 == a2.rows[i].side1);
    }
}

TEST_CASE("skycube document is stable and ordered") {
    const Relation r1 = fixtures::pokemon_side1();
    const Skycube cube = full_skycube(r1);
    std::ostringstream a, b;
    write_skycube(a, r1, cube);
    write_skycube(b, r1, cube);
    CHECK(a.str() == b.str());
    CHECK(a.str().rfind(kSkycubeHeader, 0) == 0);
    // The one-criterion subspaces precede the wider ones.
    CHECK(a.str().find("subspace\tR\t") < a.str().find("subspace\tRD\t"));
    CHECK(a.str().find("subspace\tRD\t") < a.str().find("subspace\tRDL\t"));
}

TEST_CASE("emerging document spells ALL and inf") {
    const Relation r1 = fixtures::pokemon_side1();
    const Relation r2 = fixtures::pokemon_side2();
    const MergedRelation merged = merge_materializations(
        build_skyline_lattice(r1), build_skyline_lattice(r2), r1, r2);
    const MergedRelation abridged = abridge(merged);
    const ThresholdSpec thresholds{{{"Duration", {35, 35}}, {"Loss", {45, 45}}}};

    EmergingDocument doc;
    doc.dimensions = abridged.dimensions;
    doc.measures = abridged.measures;
    doc.thresholds = thresholds;
    doc.variant = "skycube";
    doc.cells = emerging_skycube(abridged, thresholds);

    std::ostringstream out;
    write_emerging(out, doc);
    const std::string text = out.str();
    CHECK(text.find("\tALL\t") != std::string::npos);
    CHECK(text.find("\tinf") != std::string::npos);
    CHECK(text.find("cells\t17") != std::string::npos);
}

TEST_CASE("fixture files are written and load back") {
    const auto dir_path =
        std::filesystem::temp_directory_path() / "skylattice_fixture_io_test";
    std::filesystem::remove_all(dir_path);
    const std::string dir = dir_path.string();
    const auto written = fixtures::write_fixture_files(dir);
    CHECK(written.size() >= 15);

    const Relation parent = load_relation_file(
        dir + "/pokemon.csv",
        Schema::from_json(fixtures::pokemon_schema_json()));
    const SplitResult split = split_by_property(parent);
    const Relation side1 = load_relation_file(
        dir + "/pokemon_1.csv", Schema::from_json(fixtures::pokemon_side_schema_json()));
    REQUIRE(split.side1.size() == side1.size());
    for (RowId id = 1; id <= side1.size(); ++id) {
        CHECK(split.side1.row(id).dims == side1.row(id).dims);
        CHECK(split.side1.row(id).criteria == side1.row(id).criteria);
    }
}
