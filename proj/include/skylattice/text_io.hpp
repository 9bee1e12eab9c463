#pragma once

#include <iosfwd>
#include <string>

#include "skylattice/emerging.hpp"
#include "skylattice/lattice.hpp"
#include "skylattice/skyline.hpp"

namespace sky {

// Line-oriented text documents with a one-line version header. Data lines
// are tab-separated tokens; ALL and infinity serialize as the literal
// tokens "ALL" and "inf". Output ordering is canonical, so identical inputs
// give byte-identical documents.

inline constexpr const char* kSkycubeHeader = "skylattice skycube v1";
inline constexpr const char* kMaterializationHeader = "skylattice materialization v1";
inline constexpr const char* kMergedHeader = "skylattice merged v1";
inline constexpr const char* kEmergingHeader = "skylattice emerging v1";

void write_skycube(std::ostream& out, const Relation& r, const Skycube& cube);

void write_materialization(std::ostream& out, const MaterializedSkycube& m);
MaterializedSkycube read_materialization(std::istream& in);
MaterializedSkycube read_materialization_file(const std::string& path);

void write_merged(std::ostream& out, const MergedRelation& mr);
MergedRelation read_merged(std::istream& in);
MergedRelation read_merged_file(const std::string& path);

struct EmergingDocument {
    std::vector<std::string> dimensions;
    std::vector<std::string> measures;
    ThresholdSpec thresholds;
    std::string variant;  // "skycube", "l-border", "closed", "closed-l"
    std::vector<EmergingCell> cells;
};
void write_emerging(std::ostream& out, const EmergingDocument& doc);

void write_measured_blocks(std::ostream& out, const MergedRelation& mr,
                           const std::string& measure, double t1, double t2,
                           const std::vector<MeasuredBlock>& blocks);

}  // namespace sky
