#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "skylattice/lattice.hpp"
#include "skylattice/relation.hpp"

namespace sky {

/// A measure slot is either a number or ALL (absent from the row's origin
/// skycuboid).
using Slot = std::optional<double>;

struct MergedRow {
    RowId id = 0;
    CriterionSet origin_subspace;
    std::vector<std::string> dims;
    std::vector<Slot> invariants;  // one slot per invariant measure
    std::vector<Slot> side1;       // one slot per varying measure pair
    std::vector<Slot> side2;
};

/// Two materialized skycubes grouped into a single ALL-padded relation.
struct MergedRelation {
    std::vector<std::string> dimensions;
    std::vector<Criterion> criteria;              // schema echo
    std::vector<std::string> invariant_measures;  // criterion names, schema order
    std::vector<std::string> measures;            // varying pair names, declared order
    std::vector<MergedRow> rows;

    std::optional<std::size_t> measure_index(std::string_view name) const;
};

/// Per-measure thresholds; MinThreshold2 acts as a strict upper bound.
struct ThresholdSpec {
    struct Bounds {
        double t1 = 0;
        double t2 = 0;
    };
    std::map<std::string, Bounds> per_measure;

    static ThresholdSpec uniform(const std::vector<std::string>& measures, double t1, double t2);
    const Bounds& require(const std::string& measure) const;
};

enum class Trend {
    Decline,  // significant in side 1, low in side 2
    Rise,     // low in side 1, significant in side 2
};

/// A generalization over dimension values (ALL = any) with its per-measure
/// aggregates and emergence rates.
struct EmergingCell {
    std::vector<std::optional<std::string>> dims;  // nullopt = ALL
    Trend direction = Trend::Decline;
    std::vector<double> agg1;  // per measure, mean over covered rows (ALL counted 0)
    std::vector<double> agg2;
    std::vector<double> rates;  // 0, finite, or infinity

    bool all_rates_finite() const;
};

using CellDims = std::vector<std::optional<std::string>>;

/// Criteria whose values coincide on every dimension tuple present in both
/// relations. Requires compatible schemas.
std::vector<std::string> detect_invariant_measures(const Relation& r1, const Relation& r2);

/// Groups both materializations' skycuboid members into one relation keyed
/// by (origin subspace, dims): invariant criteria write a shared column,
/// varying criteria write their side's column, everything absent is ALL.
MergedRelation merge_materializations(const MaterializedSkycube& m1,
                                      const MaterializedSkycube& m2, const Relation& r1,
                                      const Relation& r2);

/// Drops invariant-measure columns and every row whose origin subspace is
/// missing one of the varying pair criteria.
MergedRelation abridge(const MergedRelation& mr);

/// True iff on every dimension the cell is ALL or equals the row's value.
bool covers(const CellDims& cell, const MergedRow& row);

enum class Side { One = 1, Two = 2 };

/// Mean of the side's measure over all covered rows, ALL counted as 0.
/// DomainError if the cell covers nothing.
double aggregate(const MergedRelation& mr, const CellDims& cell, const std::string& measure,
                 Side side);

/// 0 when both aggregates are 0, infinity when exactly one is, otherwise
/// the high-to-low ratio max/min.
double emergence_rate(double a1, double a2);

/// Threshold test for one measure. Cells with exactly one zero aggregate
/// are emerging toward the non-zero side regardless of thresholds (their
/// rate is infinite).
std::optional<Trend> is_measured_emerging(double a1, double a2, double t1, double t2);

/// All covering cells that are measured-emerging on every measure with one
/// uniform direction, sorted by dims (ALL first).
std::vector<EmergingCell> emerging_skycube(const MergedRelation& mr,
                                           const ThresholdSpec& thresholds);

/// The most general emerging cells: nothing else in the set generalizes
/// them.
std::vector<EmergingCell> l_border(const std::vector<EmergingCell>& cells);

/// The most specific cell covering the same rows: per dimension the common
/// value when unique, ALL otherwise. Aggregates are unchanged.
CellDims cube_closure(const MergedRelation& mr, const CellDims& cell);

/// Closures of the given cells, deduplicated, aggregates recomputed.
std::vector<EmergingCell> closed_emerging(const MergedRelation& mr,
                                          const std::vector<EmergingCell>& cells);

/// Lossless reduced representation: closed cells plus the L border.
std::vector<EmergingCell> closed_emerging_l(const MergedRelation& mr,
                                            const std::vector<EmergingCell>& cells);

/// Per-skycuboid single-measure grouping over the (non-abridged) merged
/// relation, mirroring the historical presentation: within each origin
/// block, a cell is kept when both aggregates are non-zero and the
/// thresholds hold, or when only side 1 aggregates to zero (rate infinity);
/// the all-ALL apex is excluded.
struct MeasuredBlock {
    CriterionSet origin_subspace;
    std::vector<EmergingCell> cells;  // rates carry the single measure only
};
std::vector<MeasuredBlock> per_block_measured_emerging(const MergedRelation& mr,
                                                       const std::string& measure, double t1,
                                                       double t2);

}  // namespace sky
