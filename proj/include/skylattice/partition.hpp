#pragma once

#include <cstddef>
#include <vector>

#include "skylattice/relation.hpp"

namespace sky {

/// A family of disjoint non-empty RowId classes. Canonical form: members of
/// each class ascending, classes ordered by their smallest member.
class Partition {
public:
    Partition() = default;

    /// Canonicalizes and validates disjointness; throws DomainError on
    /// duplicate or empty classes.
    static Partition of_classes(std::vector<std::vector<RowId>> classes);

    const std::vector<std::vector<RowId>>& classes() const { return classes_; }
    std::size_t class_count() const { return classes_.size(); }
    bool empty() const { return classes_.empty(); }

    /// Union of all classes, ascending.
    std::vector<RowId> ground() const;

    friend bool operator==(const Partition& a, const Partition& b) {
        return a.classes_ == b.classes_;
    }
    friend bool operator!=(const Partition& a, const Partition& b) { return !(a == b); }

private:
    std::vector<std::vector<RowId>> classes_;
};

/// True iff every class of p is contained in some class of q. Both
/// partitions must cover the same ground set (DomainError otherwise).
bool partition_refines(const Partition& p, const Partition& q);

/// All non-empty pairwise class intersections (the lattice meet).
Partition partition_product(const Partition& p, const Partition& q);

/// Transitive closure of class overlap (the lattice join): classes are the
/// connected components of p's and q's classes glued on shared members.
Partition partition_sum(const Partition& p, const Partition& q);

}  // namespace sky
