#pragma once

#include <string>
#include <vector>

#include "skylattice/relation.hpp"

namespace sky::fixtures {

// The battle-log example relations and the expected result tables that go
// with them, transcribed once and reused by the CLI `fixtures` command and
// the test suites. Expectations are data, never computed by the engine.

std::string pokemon_csv();          // 20 rows, Rank split N/E
std::string pokemon_side1_csv();    // the 10 novice rows, ids 1..10
std::string pokemon_side2_csv();    // the 10 expert rows, ids 1..10
std::string pokemon_schema_json();       // with the Rank split property
std::string pokemon_side_schema_json();  // for the per-side files

Schema pokemon_schema();
Schema pokemon_side_schema();
Relation pokemon();
Relation pokemon_side1();
Relation pokemon_side2();

/// Expected skycuboid members per subspace label, per side.
struct ExpectedSkycuboid {
    std::string subspace;
    std::vector<RowId> members;
};
const std::vector<ExpectedSkycuboid>& expected_skycube(int side);

/// Expected agree concepts: intension label and partition classes.
struct ExpectedConcept {
    std::string intension;
    std::vector<std::vector<RowId>> classes;
};
const std::vector<ExpectedConcept>& expected_agree_lattice(int side);

/// Expected skyline concepts: subspace label and surviving classes.
const std::vector<ExpectedConcept>& expected_skyline_lattice(int side);

/// Expected merged relation rows: subspace label, dims, then the R, D1, L1,
/// D2, L2 slots with "ALL" for absent values.
struct ExpectedMergedRow {
    std::string subspace;
    std::vector<std::string> dims;
    std::vector<std::string> slots;
};
const std::vector<ExpectedMergedRow>& expected_merged();
const std::vector<ExpectedMergedRow>& expected_abridged();  // slots = D1, L1, D2, L2

/// Expected emerging cells: dims with "ALL", per-measure rates rounded to
/// two decimals ("inf" for infinity).
struct ExpectedCell {
    std::vector<std::string> dims;
    std::vector<std::string> rates;  // Duration, Loss
};
const std::vector<ExpectedCell>& expected_emerging_finite();
const std::vector<ExpectedCell>& expected_emerging_infinite_recorded();
const std::vector<ExpectedCell>& expected_l_border_finite();
const std::vector<ExpectedCell>& expected_closed_finite();
const std::vector<ExpectedCell>& expected_closed_infinite_recorded();
const std::vector<ExpectedCell>& expected_closed_l_finite();
const std::vector<ExpectedCell>& expected_closed_l_infinite_recorded();

/// Expected single-measure per-skycuboid blocks for the Loss measure at
/// thresholds (45, 45): block subspace label plus cells with one rate each.
struct ExpectedMeasuredBlock {
    std::string subspace;
    std::vector<ExpectedCell> cells;
};
const std::vector<ExpectedMeasuredBlock>& expected_loss_measured_blocks();

/// Writes the fixture relations, schema files and golden expectation files
/// into the directory. Returns the list of file names written.
std::vector<std::string> write_fixture_files(const std::string& directory);

}  // namespace sky::fixtures
