#pragma once

#include <cstddef>
#include <cstdint>
#include <set>
#include <span>
#include <unordered_map>
#include <utility>
#include <vector>

#include "skylattice/partition.hpp"
#include "skylattice/relation.hpp"
#include "skylattice/skyline.hpp"

namespace sky {

/// Criteria on which every row of T shares one value. A singleton T agrees
/// on everything (vacuously).
CriterionSet agr(const Relation& r, std::span<const RowId> tuple_ids);

/// All pairwise agree sets of the relation. Requires at least two rows.
std::set<CriterionSet> agree_sets(const Relation& r);

/// Partition of the RowIds by equal projection on c; the empty subspace
/// yields a single class.
Partition g_map(const Relation& r, CriterionSet c);

/// Intersection over classes of their agree sets; singleton classes
/// contribute the full criterion set.
CriterionSet f_map(const Relation& r, const Partition& p);

/// Closure f∘g: the smallest agree-closed superset of c. A set contained in
/// no agree set closes to the full criterion set.
CriterionSet closure_h(const Relation& r, CriterionSet c);

/// Closure g∘f on partitions.
Partition closure_hprime(const Relation& r, const Partition& p);

/// A closed criterion set paired with its partition: c = f(pi) and
/// pi = g(c). Construction verifies both directions.
struct AgreeConcept {
    CriterionSet intension;
    Partition extension;
};

struct AgreeLattice {
    std::vector<AgreeConcept> concepts;                    // sorted by intension
    std::vector<std::pair<std::size_t, std::size_t>> cover_edges;  // (child, parent) indices
};

/// One concept per closed intension (the intersection closure of the agree
/// sets plus the full criterion set as top), with Hasse cover edges by
/// intension inclusion.
AgreeLattice build_agree_lattice(const Relation& r);

/// Lattice meet: intensions intersect, extensions sum then close.
AgreeConcept agree_meet(const Relation& r, const AgreeConcept& a, const AgreeConcept& b);
/// Lattice join: intensions union then close, extensions multiply.
AgreeConcept agree_join(const Relation& r, const AgreeConcept& a, const AgreeConcept& b);

/// Classes of p (which must equal g_map(r, c)) whose rows are non-dominated
/// on c; computed over one representative per class. The empty subspace
/// keeps nothing.
std::vector<std::vector<RowId>> pi_s(const Relation& r, CriterionSet c, const Partition& p);

/// An agree concept with its partition restricted to the non-dominated
/// classes. class_values holds each class's shared projection on the
/// subspace, which is all a rebuild needs.
struct SkylineConcept {
    CriterionSet subspace;
    std::vector<std::vector<RowId>> skyline_classes;
    std::vector<RowId> representatives;               // smallest member per class
    std::vector<std::vector<double>> class_values;    // raw values on subspace, per class
};

/// The skyline concept lattice, stored as the skycube's lossless partial
/// materialization. Immutable once built; queries are read-only.
class MaterializedSkycube {
public:
    MaterializedSkycube(std::vector<Criterion> criteria, std::size_t row_count,
                        std::vector<SkylineConcept> concepts);

    const std::vector<Criterion>& criteria() const { return criteria_; }
    std::size_t criterion_count() const { return criteria_.size(); }
    std::size_t row_count() const { return row_count_; }

    const std::vector<SkylineConcept>& concepts() const { return concepts_; }
    bool is_stored(CriterionSet c) const;
    const SkylineConcept& concept_at(CriterionSet closed) const;

    /// h(c) answered from the stored closed intensions: the intersection of
    /// every stored superset (the full set when only the top qualifies).
    CriterionSet closure_of(CriterionSet c) const;

    /// Hasse cover edges between stored intensions, (child, parent).
    std::vector<std::pair<std::size_t, std::size_t>> cover_edges() const;

    /// Total number of stored member tuples across all concepts.
    std::size_t stored_tuple_count() const;

private:
    std::vector<Criterion> criteria_;
    std::size_t row_count_ = 0;
    std::vector<SkylineConcept> concepts_;  // sorted by subspace
    std::unordered_map<std::uint32_t, std::size_t> index_;
};

/// Builds the materialization: for every closed intension, the agree
/// partition restricted by pi_s, plus the closure index.
MaterializedSkycube build_skyline_lattice(const Relation& r, std::size_t max_criteria = 20,
                                          unsigned threads = 1);

/// Answers any subspace skyline from the materialization. Stored subspaces
/// are returned directly; a pruned subspace is rebuilt from the concept at
/// its closure, which contains it. Equals skyline_sfs(r, c) exactly.
Skycuboid query_skyline(const MaterializedSkycube& m, const Relation& r, CriterionSet c);

/// Rebuild path that only touches the materialization's stored values (used
/// by the query-from-file CLI; identical answers to query_skyline).
Skycuboid query_skyline_stored(const MaterializedSkycube& m, CriterionSet c);

}  // namespace sky
