#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "skylattice/criterion_set.hpp"
#include "skylattice/errors.hpp"

namespace sky {

using RowId = std::uint32_t;

enum class Direction { Minimize, Maximize };

struct Criterion {
    std::string name;
    Direction direction = Direction::Minimize;
};

/// Pairs a criterion with the two per-side column names it occupies in a
/// merged relation (side 1 / side 2).
struct MeasurePair {
    std::string name;  // must reference a declared criterion
    std::string side1_column;
    std::string side2_column;
};

struct SplitProperty {
    std::string column;
    std::string r1_value;
    std::string r2_value;
};

/// Column layout of a relation: categorical dimensions, preference-directed
/// numeric criteria, optional split property, and the measure pairs consumed
/// by the emerging pipeline.
class Schema {
public:
    Schema(std::vector<std::string> dimensions, std::vector<Criterion> criteria,
           std::vector<MeasurePair> measure_pairs = {},
           std::optional<SplitProperty> split = std::nullopt);

    const std::vector<std::string>& dimensions() const { return dimensions_; }
    const std::vector<Criterion>& criteria() const { return criteria_; }
    const std::vector<MeasurePair>& measure_pairs() const { return measure_pairs_; }
    const std::optional<SplitProperty>& split() const { return split_; }

    std::size_t dimension_count() const { return dimensions_.size(); }
    std::size_t criterion_count() const { return criteria_.size(); }

    std::optional<std::size_t> criterion_index(std::string_view name) const;
    CriterionSet all_criteria() const { return CriterionSet::full(criteria_.size()); }

    /// Canonical textual form of a subspace: concatenated criterion initials
    /// when they are pairwise distinct (e.g. "RD"), otherwise '+'-joined full
    /// names. The empty subspace prints as "-".
    std::string subspace_label(CriterionSet set) const;
    CriterionSet parse_subspace(std::string_view text) const;

    /// Schema without the split property, used for the two halves produced by
    /// split_by_property.
    Schema without_split() const;

    bool compatible_with(const Schema& other) const;

    /// Schema described as a JSON document (see README for the layout).
    static Schema from_json(const std::string& json_text);
    std::string to_json() const;

private:
    std::vector<std::string> dimensions_;
    std::vector<Criterion> criteria_;
    std::vector<MeasurePair> measure_pairs_;
    std::optional<SplitProperty> split_;
    bool initials_unique_ = false;
};

struct Row {
    RowId id = 0;
    std::vector<std::string> dims;
    std::vector<double> criteria;
    std::string split_value;  // empty when the schema has no split property
};

/// Immutable after construction; RowIds are contiguous 1..n and stable for
/// the lifetime of the relation. Safe to share read-only across threads.
class Relation {
public:
    Relation(Schema schema, std::vector<Row> rows);

    const Schema& schema() const { return schema_; }
    const std::vector<Row>& rows() const { return rows_; }
    std::size_t size() const { return rows_.size(); }
    bool empty() const { return rows_.empty(); }

    const Row& row(RowId id) const;

    /// Direction-adjusted criterion value: raw for minimize, negated for
    /// maximize, so "smaller is better" holds uniformly.
    double adjusted_value(const Row& row, std::size_t criterion) const;

private:
    Schema schema_;
    std::vector<Row> rows_;
};

struct SplitResult {
    Relation side1;
    Relation side2;
    std::size_t dropped = 0;  // rows matching neither split value
};

/// Reads a comma-separated stream with a header row. RowIds are assigned
/// 1..n in file order. Columns not named by the schema are ignored.
Relation load_relation(std::istream& source, const Schema& schema);
Relation load_relation_file(const std::string& path, const Schema& schema);

/// Partitions the relation's rows on the split property. RowIds are
/// renumbered 1..n within each side, preserving the original order.
SplitResult split_by_property(const Relation& r);

/// Values of row t on C, in canonical criterion order.
std::vector<double> project(const Relation& r, RowId t, CriterionSet c);

/// Canonical number rendering used in every text document: integral values
/// print without a decimal point, infinities print as "inf".
std::string format_number(double value);

}  // namespace sky
