#include "skylattice/skyline.hpp"

#include <algorithm>
#include <atomic>
#include <numeric>
#include <thread>

namespace sky {

namespace detail {

ValueTable make_value_table(const Relation& r, CriterionSet c, const std::vector<RowId>* subset) {
    ValueTable table;
    table.width = c.size();
    const auto idx = c.indices();
    auto push = [&](const Row& row) {
        table.ids.push_back(row.id);
        for (std::size_t i : idx) table.values.push_back(r.adjusted_value(row, i));
    };
    if (subset) {
        table.ids.reserve(subset->size());
        table.values.reserve(subset->size() * table.width);
        for (RowId id : *subset) push(r.row(id));
    } else {
        table.ids.reserve(r.size());
        table.values.reserve(r.size() * table.width);
        for (const Row& row : r.rows()) push(row);
    }
    return table;
}

namespace {

// a dominates b: a <= b everywhere, a < b somewhere.
inline bool entry_dominates(const double* a, const double* b, std::size_t width) {
    bool strict = false;
    for (std::size_t i = 0; i < width; ++i) {
        if (a[i] > b[i]) return false;
        if (a[i] < b[i]) strict = true;
    }
    return strict;
}

}  // namespace

std::vector<std::size_t> sfs_filter(const ValueTable& table) {
    const std::size_t n = table.entry_count();
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::vector<double> score(n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        const double* v = table.entry(i);
        for (std::size_t j = 0; j < table.width; ++j) score[i] += v[j];
    }
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        if (score[a] != score[b]) return score[a] < score[b];
        return table.ids[a] < table.ids[b];
    });

    std::vector<std::size_t> admitted;
    for (std::size_t i : order) {
        const double* v = table.entry(i);
        bool dominated = false;
        for (std::size_t j : admitted) {
            if (entry_dominates(table.entry(j), v, table.width)) {
                dominated = true;
                break;
            }
        }
        if (!dominated) admitted.push_back(i);
    }
    return admitted;
}

}  // namespace detail

Skycube::Skycube(std::size_t criterion_count) : criterion_count_(criterion_count) {
    if (criterion_count > CriterionSet::kMaxCriteria)
        throw ResourceError("criterion count exceeds supported maximum of 32");
    cuboids_.resize(std::size_t{1} << criterion_count);
    for (std::size_t mask = 0; mask < cuboids_.size(); ++mask)
        cuboids_[mask].subspace = CriterionSet::from_bits(static_cast<std::uint32_t>(mask));
}

const Skycuboid& Skycube::at(CriterionSet subspace) const {
    if (subspace.bits() >= cuboids_.size())
        throw LookupError("subspace is not part of this skycube");
    return cuboids_[subspace.bits()];
}

Skycuboid& Skycube::at(CriterionSet subspace) {
    if (subspace.bits() >= cuboids_.size())
        throw LookupError("subspace is not part of this skycube");
    return cuboids_[subspace.bits()];
}

std::size_t Skycube::stored_tuple_count() const {
    std::size_t total = 0;
    for (const auto& cuboid : cuboids_) total += cuboid.members.size();
    return total;
}

bool dominates(const Relation& r, RowId a, RowId b, CriterionSet c) {
    if (c.empty()) throw DomainError("dominance is undefined on the empty subspace");
    if (!c.subset_of(r.schema().all_criteria()))
        throw DomainError("subspace is not part of the schema");
    const Row& ra = r.row(a);
    const Row& rb = r.row(b);
    bool strict = false;
    for (std::size_t i : c.indices()) {
        const double va = r.adjusted_value(ra, i);
        const double vb = r.adjusted_value(rb, i);
        if (va > vb) return false;
        if (va < vb) strict = true;
    }
    return strict;
}

Skycuboid skyline_bruteforce(const Relation& r, CriterionSet c) {
    Skycuboid out;
    out.subspace = c;
    if (c.empty()) return out;
    for (const Row& t : r.rows()) {
        bool dominated = false;
        for (const Row& u : r.rows()) {
            if (u.id != t.id && dominates(r, u.id, t.id, c)) {
                dominated = true;
                break;
            }
        }
        if (!dominated) out.members.push_back(t.id);
    }
    return out;
}

double sfs_score(const Relation& r, RowId t, CriterionSet c) {
    const Row& row = r.row(t);
    double sum = 0;
    for (std::size_t i : c.indices()) sum += r.adjusted_value(row, i);
    return sum;
}

Skycuboid skyline_sfs(const Relation& r, CriterionSet c) {
    Skycuboid out;
    out.subspace = c;
    if (c.empty() || r.empty()) return out;
    if (!c.subset_of(r.schema().all_criteria()))
        throw DomainError("subspace is not part of the schema");
    const auto table = detail::make_value_table(r, c);
    for (std::size_t i : detail::sfs_filter(table)) out.members.push_back(table.ids[i]);
    std::sort(out.members.begin(), out.members.end());
    return out;
}

Skycube full_skycube(const Relation& r, std::size_t max_criteria, unsigned threads) {
    const std::size_t d = r.schema().criterion_count();
    if (d > max_criteria)
        throw ResourceError("criterion count " + std::to_string(d) +
                            " exceeds the enumeration cap of " + std::to_string(max_criteria));
    Skycube cube(d);
    const std::size_t total = std::size_t{1} << d;
    if (threads <= 1 || total < 4) {
        for (std::size_t mask = 1; mask < total; ++mask)
            cube.at(CriterionSet::from_bits(static_cast<std::uint32_t>(mask))) =
                skyline_sfs(r, CriterionSet::from_bits(static_cast<std::uint32_t>(mask)));
        return cube;
    }
    std::atomic<std::size_t> next{1};
    std::vector<Skycuboid> results(total);
    auto worker = [&] {
        for (std::size_t mask = next.fetch_add(1); mask < total; mask = next.fetch_add(1))
            results[mask] = skyline_sfs(r, CriterionSet::from_bits(static_cast<std::uint32_t>(mask)));
    };
    std::vector<std::thread> pool;
    for (unsigned i = 0; i < threads; ++i) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
    for (std::size_t mask = 1; mask < total; ++mask)
        cube.at(CriterionSet::from_bits(static_cast<std::uint32_t>(mask))) = std::move(results[mask]);
    return cube;
}

bool disagree_condition(const Relation& r, CriterionSet c) {
    const auto table = detail::make_value_table(r, c);
    std::vector<std::size_t> order(table.entry_count());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        return std::lexicographical_compare(table.entry(a), table.entry(a) + table.width,
                                            table.entry(b), table.entry(b) + table.width);
    });
    for (std::size_t i = 1; i < order.size(); ++i)
        if (std::equal(table.entry(order[i - 1]), table.entry(order[i - 1]) + table.width,
                       table.entry(order[i])))
            return false;
    return true;
}

}  // namespace sky
