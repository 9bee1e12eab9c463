#pragma once

#include <cstddef>
#include <vector>

#include "skylattice/relation.hpp"

namespace sky {

/// The skyline of one criterion subspace: the rows not dominated by any
/// other row on that subspace. Members are sorted by RowId.
struct Skycuboid {
    CriterionSet subspace;
    std::vector<RowId> members;
};

/// One skycuboid per subspace of the criterion set, the empty subspace
/// included (empty by convention).
class Skycube {
public:
    explicit Skycube(std::size_t criterion_count);

    std::size_t criterion_count() const { return criterion_count_; }
    std::size_t subspace_count() const { return cuboids_.size(); }

    const Skycuboid& at(CriterionSet subspace) const;
    Skycuboid& at(CriterionSet subspace);
    const std::vector<Skycuboid>& all() const { return cuboids_; }

    /// Total number of stored member tuples across all skycuboids.
    std::size_t stored_tuple_count() const;

private:
    std::size_t criterion_count_;
    std::vector<Skycuboid> cuboids_;  // indexed by subspace bit mask
};

/// Strict dominance: a is at least as preferred as b on every criterion of
/// c and strictly more preferred on at least one. Undefined (DomainError)
/// for the empty subspace.
bool dominates(const Relation& r, RowId a, RowId b, CriterionSet c);

/// Literal implementation of the skyline definition; quadratic, used as the
/// oracle for the SFS path.
Skycuboid skyline_bruteforce(const Relation& r, CriterionSet c);

/// Monotone sort key for SFS: sum of direction-adjusted values on c. If
/// sfs_score(u) > sfs_score(t) then u cannot dominate t.
double sfs_score(const Relation& r, RowId t, CriterionSet c);

/// Sort-filter-skyline: sort ascending by (score, RowId), seed with the
/// first row, admit each later row iff no admitted row dominates it.
Skycuboid skyline_sfs(const Relation& r, CriterionSet c);

/// Every subspace mapped to its SFS skyline; the empty subspace maps to the
/// empty skycuboid. Subspaces may be evaluated concurrently; the result does
/// not depend on evaluation order.
Skycube full_skycube(const Relation& r, std::size_t max_criteria = 20, unsigned threads = 1);

/// Disagree condition: no two rows share a projection on c.
bool disagree_condition(const Relation& r, CriterionSet c);

namespace detail {

/// Compact value table used by the skyline kernels: `width` adjusted values
/// per entry, row-major.
struct ValueTable {
    std::size_t width = 0;
    std::vector<double> values;
    std::vector<RowId> ids;

    std::size_t entry_count() const { return ids.size(); }
    const double* entry(std::size_t i) const { return values.data() + i * width; }
};

ValueTable make_value_table(const Relation& r, CriterionSet c,
                            const std::vector<RowId>* subset = nullptr);

/// Indices (into the table) of the non-dominated entries, computed with the
/// sort-filter pass. Ties on the full projection are mutually non-dominating
/// and all kept.
std::vector<std::size_t> sfs_filter(const ValueTable& table);

}  // namespace detail

}  // namespace sky
