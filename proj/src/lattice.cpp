#include "skylattice/lattice.hpp"

#include <algorithm>
#include <atomic>
#include <map>
#include <thread>

namespace sky {

namespace {

constexpr std::size_t kLatticeCriteriaCap = 20;

/// Dense per-criterion value codes; two rows share a code iff they share the
/// raw value. Lets every lattice pass work on integers.
struct CodeMatrix {
    std::size_t n = 0;
    std::size_t d = 0;
    std::vector<std::vector<std::uint32_t>> codes;  // [criterion][row]

    static CodeMatrix build(const Relation& r) {
        CodeMatrix cm;
        cm.n = r.size();
        cm.d = r.schema().criterion_count();
        cm.codes.assign(cm.d, std::vector<std::uint32_t>(cm.n));
        std::map<double, std::uint32_t> seen;
        for (std::size_t c = 0; c < cm.d; ++c) {
            seen.clear();
            for (std::size_t i = 0; i < cm.n; ++i) {
                const double v = r.rows()[i].criteria[c];
                auto [it, inserted] = seen.emplace(v, static_cast<std::uint32_t>(seen.size()));
                cm.codes[c][i] = it->second;
            }
        }
        return cm;
    }
};

struct MaskPartition {
    std::size_t class_count = 0;
    std::vector<std::uint32_t> class_of;  // per row, ids assigned by first occurrence
};

/// Open-addressing map from (class id, value code) pairs to dense new ids;
/// the hot path of partition refinement.
class PairRemap {
public:
    void reset(std::size_t expected) {
        std::size_t cap = 16;
        while (cap < expected * 2) cap <<= 1;
        slots_.assign(cap, kEmpty);
        ids_.resize(cap);
        mask_ = cap - 1;
        next_ = 0;
    }

    std::uint32_t id_for(std::uint64_t key) {
        std::size_t at = static_cast<std::size_t>(key * 0x9E3779B97F4A7C15ull >> 32) & mask_;
        while (true) {
            if (slots_[at] == kEmpty) {
                slots_[at] = key;
                ids_[at] = next_;
                return next_++;
            }
            if (slots_[at] == key) return ids_[at];
            at = (at + 1) & mask_;
        }
    }

    std::uint32_t size() const { return next_; }

private:
    static constexpr std::uint64_t kEmpty = ~std::uint64_t{0};
    std::vector<std::uint64_t> slots_;
    std::vector<std::uint32_t> ids_;
    std::size_t mask_ = 0;
    std::uint32_t next_ = 0;
};

void refine(const std::vector<std::uint32_t>& in_ids, const std::vector<std::uint32_t>& codes,
            PairRemap& remap, std::vector<std::uint32_t>& out_ids, std::size_t& out_count) {
    const std::size_t n = in_ids.size();
    remap.reset(n);
    out_ids.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        const std::uint64_t key = (static_cast<std::uint64_t>(in_ids[i]) << 32) | codes[i];
        out_ids[i] = remap.id_for(key);
    }
    out_count = remap.size();
}

MaskPartition partition_for(const CodeMatrix& cm, CriterionSet mask) {
    MaskPartition mp;
    mp.class_of.assign(cm.n, 0);
    mp.class_count = cm.n == 0 ? 0 : 1;
    PairRemap remap;
    std::vector<std::uint32_t> next_ids;
    for (std::size_t c : mask.indices()) {
        refine(mp.class_of, cm.codes[c], remap, next_ids, mp.class_count);
        mp.class_of.swap(next_ids);
    }
    return mp;
}

/// Closed iff no criterion outside the mask is constant on every class.
bool mask_is_closed(const CodeMatrix& cm, CriterionSet mask, std::size_t class_count,
                    const std::vector<std::uint32_t>& class_of,
                    std::vector<std::uint32_t>& scratch) {
    if (class_count == cm.n) return mask == CriterionSet::full(cm.d);
    for (std::size_t c = 0; c < cm.d; ++c) {
        if (mask.contains(c)) continue;
        scratch.assign(class_count, UINT32_MAX);
        bool constant = true;
        const auto& col = cm.codes[c];
        for (std::size_t i = 0; i < cm.n; ++i) {
            auto& slot = scratch[class_of[i]];
            if (slot == UINT32_MAX)
                slot = col[i];
            else if (slot != col[i]) {
                constant = false;
                break;
            }
        }
        if (constant) return false;
    }
    return true;
}

/// All agree-closed criterion subsets, found by one depth-first sweep of
/// the subset tree with a single refinement step per node. A level's id
/// buffer is only rewritten after the previous subtree returned, so one
/// buffer per level suffices.
struct ClosedMaskSweep {
    const CodeMatrix& cm;
    std::vector<std::vector<std::uint32_t>> level_ids;
    std::vector<std::size_t> level_count;
    PairRemap remap;
    std::vector<std::uint32_t> scratch;
    std::vector<std::uint32_t> closed;

    explicit ClosedMaskSweep(const CodeMatrix& matrix)
        : cm(matrix), level_ids(matrix.d + 1), level_count(matrix.d + 1, 0) {
        level_ids[0].assign(cm.n, 0);
        level_count[0] = cm.n == 0 ? 0 : 1;
    }

    void walk(std::uint32_t mask, std::size_t next_criterion, std::size_t level) {
        if (mask_is_closed(cm, CriterionSet::from_bits(mask), level_count[level],
                           level_ids[level], scratch))
            closed.push_back(mask);
        for (std::size_t c = next_criterion; c < cm.d; ++c) {
            refine(level_ids[level], cm.codes[c], remap, level_ids[level + 1],
                   level_count[level + 1]);
            walk(mask | (std::uint32_t{1} << c), c + 1, level + 1);
        }
    }
};

std::vector<std::uint32_t> enumerate_closed_masks(const CodeMatrix& cm) {
    ClosedMaskSweep sweep(cm);
    sweep.walk(0, 0, 0);
    std::sort(sweep.closed.begin(), sweep.closed.end());
    return sweep.closed;
}

std::vector<std::vector<RowId>> classes_from(const MaskPartition& mp) {
    std::vector<std::vector<RowId>> classes(mp.class_count);
    for (std::size_t i = 0; i < mp.class_of.size(); ++i)
        classes[mp.class_of[i]].push_back(static_cast<RowId>(i + 1));
    return classes;  // members ascending by construction
}

void check_cap(const Relation& r) {
    if (r.schema().criterion_count() > kLatticeCriteriaCap)
        throw ResourceError("lattice construction caps at " +
                            std::to_string(kLatticeCriteriaCap) + " criteria");
}

}  // namespace

CriterionSet agr(const Relation& r, std::span<const RowId> tuple_ids) {
    if (tuple_ids.empty()) throw DomainError("agree set of an empty tuple set is undefined");
    const std::size_t d = r.schema().criterion_count();
    CriterionSet out = CriterionSet::full(d);
    const Row& first = r.row(tuple_ids.front());
    for (std::size_t i = 1; i < tuple_ids.size(); ++i) {
        const Row& other = r.row(tuple_ids[i]);
        for (std::size_t c = 0; c < d; ++c)
            if (other.criteria[c] != first.criteria[c]) out = out.without(c);
        if (out.empty()) break;
    }
    return out;
}

std::set<CriterionSet> agree_sets(const Relation& r) {
    if (r.size() < 2) throw DomainError("agree sets need at least two rows");
    const std::size_t d = r.schema().criterion_count();
    std::set<CriterionSet> out;
    for (std::size_t i = 0; i < r.size(); ++i) {
        for (std::size_t j = i + 1; j < r.size(); ++j) {
            CriterionSet s;
            for (std::size_t c = 0; c < d; ++c)
                if (r.rows()[i].criteria[c] == r.rows()[j].criteria[c]) s = s.with(c);
            out.insert(s);
        }
    }
    return out;
}

Partition g_map(const Relation& r, CriterionSet c) {
    if (!c.subset_of(r.schema().all_criteria()))
        throw DomainError("subspace is not part of the schema");
    std::map<std::vector<double>, std::vector<RowId>> groups;
    for (const Row& row : r.rows()) {
        std::vector<double> key;
        key.reserve(c.size());
        for (std::size_t i : c.indices()) key.push_back(row.criteria[i]);
        groups[std::move(key)].push_back(row.id);
    }
    std::vector<std::vector<RowId>> classes;
    classes.reserve(groups.size());
    for (auto& [_, members] : groups) classes.push_back(std::move(members));
    return Partition::of_classes(std::move(classes));
}

CriterionSet f_map(const Relation& r, const Partition& p) {
    std::vector<RowId> expected(r.size());
    for (std::size_t i = 0; i < r.size(); ++i) expected[i] = static_cast<RowId>(i + 1);
    if (p.ground() != expected)
        throw DomainError("partition does not cover the relation's RowIds");
    CriterionSet out = CriterionSet::full(r.schema().criterion_count());
    for (const auto& cls : p.classes()) {
        out = out & agr(r, cls);
        if (out.empty()) break;
    }
    return out;
}

CriterionSet closure_h(const Relation& r, CriterionSet c) {
    return f_map(r, g_map(r, c));
}

Partition closure_hprime(const Relation& r, const Partition& p) {
    return g_map(r, f_map(r, p));
}

AgreeLattice build_agree_lattice(const Relation& r) {
    check_cap(r);
    const std::size_t d = r.schema().criterion_count();
    AgreeLattice lattice;

    if (r.empty()) {
        lattice.concepts.push_back({CriterionSet::full(d), Partition{}});
        return lattice;
    }

    const CodeMatrix cm = CodeMatrix::build(r);
    for (std::uint32_t mask : enumerate_closed_masks(cm)) {
        const auto set = CriterionSet::from_bits(mask);
        const MaskPartition mp = partition_for(cm, set);
        lattice.concepts.push_back({set, Partition::of_classes(classes_from(mp))});
    }
    std::sort(lattice.concepts.begin(), lattice.concepts.end(),
              [](const AgreeConcept& a, const AgreeConcept& b) { return a.intension < b.intension; });

    const auto& cs = lattice.concepts;
    for (std::size_t i = 0; i < cs.size(); ++i) {
        for (std::size_t j = 0; j < cs.size(); ++j) {
            if (i == j) continue;
            if (!(cs[i].intension.subset_of(cs[j].intension)) || cs[i].intension == cs[j].intension)
                continue;
            bool covered = true;
            for (std::size_t k = 0; k < cs.size() && covered; ++k) {
                if (k == i || k == j) continue;
                if (cs[i].intension.subset_of(cs[k].intension) &&
                    cs[k].intension.subset_of(cs[j].intension) &&
                    cs[k].intension != cs[i].intension && cs[k].intension != cs[j].intension)
                    covered = false;
            }
            if (covered) lattice.cover_edges.emplace_back(i, j);
        }
    }
    return lattice;
}

namespace {

void verify_concept(const Relation& r, const AgreeConcept& c, const char* what) {
    if (g_map(r, c.intension) != c.extension || f_map(r, c.extension) != c.intension)
        throw DomainError(std::string(what) + " operand is not an agree concept");
}

}  // namespace

AgreeConcept agree_meet(const Relation& r, const AgreeConcept& a, const AgreeConcept& b) {
    verify_concept(r, a, "meet");
    verify_concept(r, b, "meet");
    return {a.intension & b.intension,
            closure_hprime(r, partition_sum(a.extension, b.extension))};
}

AgreeConcept agree_join(const Relation& r, const AgreeConcept& a, const AgreeConcept& b) {
    verify_concept(r, a, "join");
    verify_concept(r, b, "join");
    return {closure_h(r, a.intension | b.intension),
            partition_product(a.extension, b.extension)};
}

std::vector<std::vector<RowId>> pi_s(const Relation& r, CriterionSet c, const Partition& p) {
    if (p != g_map(r, c))
        throw DomainError("partition is not the agree partition of the subspace");
    if (c.empty()) return {};

    std::vector<RowId> reps;
    reps.reserve(p.class_count());
    for (const auto& cls : p.classes()) reps.push_back(cls.front());
    const auto table = detail::make_value_table(r, c, &reps);
    const auto admitted = detail::sfs_filter(table);

    std::vector<bool> keep(p.class_count(), false);
    std::unordered_map<RowId, std::size_t> class_of_rep;
    for (std::size_t i = 0; i < reps.size(); ++i) class_of_rep[reps[i]] = i;
    for (std::size_t idx : admitted) keep[class_of_rep.at(table.ids[idx])] = true;

    std::vector<std::vector<RowId>> out;
    for (std::size_t i = 0; i < p.class_count(); ++i)
        if (keep[i]) out.push_back(p.classes()[i]);
    return out;
}

MaterializedSkycube::MaterializedSkycube(std::vector<Criterion> criteria, std::size_t row_count,
                                         std::vector<SkylineConcept> concepts)
    : criteria_(std::move(criteria)), row_count_(row_count), concepts_(std::move(concepts)) {
    if (criteria_.empty()) throw DomainError("materialization needs at least one criterion");
    std::sort(concepts_.begin(), concepts_.end(),
              [](const SkylineConcept& a, const SkylineConcept& b) { return a.subspace < b.subspace; });
    for (std::size_t i = 0; i < concepts_.size(); ++i) {
        if (!index_.emplace(concepts_[i].subspace.bits(), i).second)
            throw DomainError("duplicate concept subspace in materialization");
    }
    if (!index_.count(CriterionSet::full(criteria_.size()).bits()))
        throw DomainError("materialization is missing the top concept");
}

bool MaterializedSkycube::is_stored(CriterionSet c) const { return index_.count(c.bits()) != 0; }

const SkylineConcept& MaterializedSkycube::concept_at(CriterionSet closed) const {
    auto it = index_.find(closed.bits());
    if (it == index_.end()) throw LookupError("subspace is not a stored concept");
    return concepts_[it->second];
}

CriterionSet MaterializedSkycube::closure_of(CriterionSet c) const {
    const CriterionSet top = CriterionSet::full(criteria_.size());
    if (!c.subset_of(top)) throw DomainError("subspace is not part of the materialization");
    CriterionSet acc = top;
    for (const auto& node : concepts_)
        if (c.subset_of(node.subspace)) acc = acc & node.subspace;
    return acc;
}

std::vector<std::pair<std::size_t, std::size_t>> MaterializedSkycube::cover_edges() const {
    std::vector<std::pair<std::size_t, std::size_t>> edges;
    for (std::size_t i = 0; i < concepts_.size(); ++i) {
        for (std::size_t j = 0; j < concepts_.size(); ++j) {
            if (i == j) continue;
            const auto& a = concepts_[i].subspace;
            const auto& b = concepts_[j].subspace;
            if (!a.subset_of(b) || a == b) continue;
            bool covered = true;
            for (std::size_t k = 0; k < concepts_.size() && covered; ++k) {
                if (k == i || k == j) continue;
                const auto& m = concepts_[k].subspace;
                if (a.subset_of(m) && m.subset_of(b) && m != a && m != b) covered = false;
            }
            if (covered) edges.emplace_back(i, j);
        }
    }
    return edges;
}

std::size_t MaterializedSkycube::stored_tuple_count() const {
    std::size_t total = 0;
    for (const auto& node : concepts_)
        for (const auto& cls : node.skyline_classes) total += cls.size();
    return total;
}

namespace {

SkylineConcept make_skyline_concept(const Relation& r, CriterionSet set,
                                    std::vector<std::vector<RowId>> classes) {
    SkylineConcept node;
    node.subspace = set;
    if (set.empty()) return node;  // the empty skyline by convention

    std::vector<RowId> reps;
    reps.reserve(classes.size());
    for (const auto& cls : classes) reps.push_back(cls.front());
    const auto table = detail::make_value_table(r, set, &reps);
    const auto admitted = detail::sfs_filter(table);

    std::vector<bool> keep(classes.size(), false);
    std::unordered_map<RowId, std::size_t> class_of_rep;
    for (std::size_t i = 0; i < reps.size(); ++i) class_of_rep[reps[i]] = i;
    for (std::size_t idx : admitted) keep[class_of_rep.at(table.ids[idx])] = true;

    const auto indices = set.indices();
    for (std::size_t i = 0; i < classes.size(); ++i) {
        if (!keep[i]) continue;
        const Row& rep = r.row(classes[i].front());
        std::vector<double> values;
        values.reserve(indices.size());
        for (std::size_t c : indices) values.push_back(rep.criteria[c]);
        node.representatives.push_back(classes[i].front());
        node.class_values.push_back(std::move(values));
        node.skyline_classes.push_back(std::move(classes[i]));
    }
    return node;
}

}  // namespace

MaterializedSkycube build_skyline_lattice(const Relation& r, std::size_t max_criteria,
                                          unsigned threads) {
    check_cap(r);
    const std::size_t d = r.schema().criterion_count();
    if (d > max_criteria)
        throw ResourceError("criterion count " + std::to_string(d) +
                            " exceeds the enumeration cap of " + std::to_string(max_criteria));

    if (r.empty()) {
        std::vector<SkylineConcept> top(1);
        top[0].subspace = CriterionSet::full(d);
        return MaterializedSkycube(r.schema().criteria(), 0, std::move(top));
    }

    const CodeMatrix cm = CodeMatrix::build(r);
    const std::vector<std::uint32_t> closed_masks = enumerate_closed_masks(cm);

    std::vector<SkylineConcept> concepts(closed_masks.size());
    auto build_one = [&](std::size_t i) {
        const auto set = CriterionSet::from_bits(closed_masks[i]);
        concepts[i] = make_skyline_concept(r, set, classes_from(partition_for(cm, set)));
    };
    if (threads <= 1 || closed_masks.size() < 4) {
        for (std::size_t i = 0; i < closed_masks.size(); ++i) build_one(i);
    } else {
        std::atomic<std::size_t> next{0};
        auto worker = [&] {
            for (std::size_t i = next.fetch_add(1); i < closed_masks.size(); i = next.fetch_add(1))
                build_one(i);
        };
        std::vector<std::thread> pool;
        for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
        for (auto& t : pool) t.join();
    }
    return MaterializedSkycube(r.schema().criteria(), r.size(), std::move(concepts));
}

namespace {

Skycuboid rebuild_from_concept(const MaterializedSkycube& m, CriterionSet c) {
    Skycuboid out;
    out.subspace = c;
    if (c.empty()) return out;

    const CriterionSet closed = m.closure_of(c);
    const SkylineConcept& node = m.concept_at(closed);
    if (closed == c) {
        for (const auto& cls : node.skyline_classes)
            out.members.insert(out.members.end(), cls.begin(), cls.end());
        std::sort(out.members.begin(), out.members.end());
        return out;
    }

    // Position of each queried criterion inside the stored node's value
    // vectors. The agree partition of c equals the one stored at its
    // closure, so the stored classes are exactly the candidate classes.
    const auto closed_indices = closed.indices();
    const auto query_indices = c.indices();
    std::vector<std::size_t> positions;
    for (std::size_t want : query_indices)
        positions.push_back(static_cast<std::size_t>(
            std::find(closed_indices.begin(), closed_indices.end(), want) -
            closed_indices.begin()));

    detail::ValueTable table;
    table.width = positions.size();
    table.ids.reserve(node.representatives.size());
    table.values.reserve(node.representatives.size() * table.width);
    for (std::size_t i = 0; i < node.skyline_classes.size(); ++i) {
        table.ids.push_back(node.representatives[i]);
        for (std::size_t p = 0; p < positions.size(); ++p) {
            const double raw = node.class_values[i][positions[p]];
            const bool minimize =
                m.criteria()[query_indices[p]].direction == Direction::Minimize;
            table.values.push_back(minimize ? raw : -raw);
        }
    }
    std::unordered_map<RowId, std::size_t> class_of_rep;
    for (std::size_t i = 0; i < node.representatives.size(); ++i)
        class_of_rep[node.representatives[i]] = i;
    for (std::size_t idx : detail::sfs_filter(table)) {
        const auto& cls = node.skyline_classes[class_of_rep.at(table.ids[idx])];
        out.members.insert(out.members.end(), cls.begin(), cls.end());
    }
    std::sort(out.members.begin(), out.members.end());
    return out;
}

}  // namespace

Skycuboid query_skyline(const MaterializedSkycube& m, const Relation& r, CriterionSet c) {
    if (r.size() != m.row_count())
        throw DomainError("materialization was built over a different relation");
    if (!c.subset_of(r.schema().all_criteria()))
        throw DomainError("subspace is not part of the schema");
    return rebuild_from_concept(m, c);
}

Skycuboid query_skyline_stored(const MaterializedSkycube& m, CriterionSet c) {
    return rebuild_from_concept(m, c);
}

}  // namespace sky
