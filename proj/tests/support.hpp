#pragma once

// Shared test utilities: deterministic random generators and the
// independent reference implementations the engine is checked against.

#include <algorithm>
#include <cmath>
#include <map>
#include <optional>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "skylattice/emerging.hpp"
#include "skylattice/lattice.hpp"
#include "skylattice/partition.hpp"
#include "skylattice/relation.hpp"
#include "skylattice/skyline.hpp"

namespace testsupport {

using namespace sky;

/// Random relation with integer criterion values from a small domain, so
/// agreements (shared values) are frequent.
inline Relation random_relation(std::mt19937_64& gen, std::size_t max_rows = 60,
                                std::size_t max_criteria = 5, std::size_t domain = 4) {
    const std::size_t n = 1 + gen() % max_rows;
    const std::size_t d = 1 + gen() % max_criteria;
    std::vector<Criterion> criteria;
    for (std::size_t c = 0; c < d; ++c) {
        const bool minimize = (gen() & 1) != 0;
        criteria.push_back({std::string(1, static_cast<char>('A' + c)),
                            minimize ? Direction::Minimize : Direction::Maximize});
    }
    Schema schema({"Id"}, std::move(criteria));
    std::vector<Row> rows;
    for (std::size_t i = 0; i < n; ++i) {
        Row row;
        row.id = static_cast<RowId>(i + 1);
        row.dims.push_back(std::to_string(i + 1));
        for (std::size_t c = 0; c < d; ++c)
            row.criteria.push_back(static_cast<double>(gen() % domain));
        rows.push_back(std::move(row));
    }
    return Relation(std::move(schema), std::move(rows));
}

inline CriterionSet random_subset(std::mt19937_64& gen, std::size_t d, bool allow_empty = true) {
    while (true) {
        const auto bits = static_cast<std::uint32_t>(gen() & ((1u << d) - 1));
        if (bits == 0 && !allow_empty) continue;
        return CriterionSet::from_bits(bits);
    }
}

/// Random partition of 1..n by assigning each id to one of `buckets` bins.
inline Partition random_partition(std::mt19937_64& gen, std::size_t n) {
    const std::size_t buckets = 1 + gen() % n;
    std::map<std::size_t, std::vector<RowId>> bins;
    for (std::size_t i = 1; i <= n; ++i) bins[gen() % buckets].push_back(static_cast<RowId>(i));
    std::vector<std::vector<RowId>> classes;
    for (auto& [_, members] : bins) classes.push_back(std::move(members));
    return Partition::of_classes(std::move(classes));
}

/// Reference partition sum: the fixpoint sequence built from R(e, F), the
/// union of the family's sets containing e.
inline Partition partition_sum_reference(const Partition& p, const Partition& q) {
    using ClassSet = std::set<RowId>;
    std::set<ClassSet> family;
    for (const auto& cls : p.classes()) family.insert(ClassSet(cls.begin(), cls.end()));
    for (const auto& cls : q.classes()) family.insert(ClassSet(cls.begin(), cls.end()));

    auto max_by_inclusion = [](const std::set<ClassSet>& sets) {
        std::set<ClassSet> out;
        for (const auto& s : sets) {
            bool maximal = true;
            for (const auto& t : sets)
                if (s != t && std::includes(t.begin(), t.end(), s.begin(), s.end())) {
                    maximal = false;
                    break;
                }
            if (maximal) out.insert(s);
        }
        return out;
    };

    const auto ground = p.ground();
    std::set<ClassSet> current = max_by_inclusion(family);
    while (true) {
        std::set<ClassSet> next_sets;
        for (RowId e : ground) {
            ClassSet joined;  // R(e, current)
            for (const auto& s : current)
                if (s.count(e)) joined.insert(s.begin(), s.end());
            next_sets.insert(std::move(joined));
        }
        next_sets = max_by_inclusion(next_sets);
        if (next_sets == current) break;
        current = std::move(next_sets);
    }
    std::vector<std::vector<RowId>> classes;
    for (const auto& s : current) classes.emplace_back(s.begin(), s.end());
    return Partition::of_classes(std::move(classes));
}

/// Literal closure oracle: intersect every agree superset of c; the full
/// criterion set when none exists.
inline CriterionSet closure_oracle(const Relation& r, CriterionSet c) {
    const CriterionSet full = r.schema().all_criteria();
    if (r.size() < 2) return full;
    CriterionSet acc = full;
    for (CriterionSet agree : agree_sets(r))
        if (c.subset_of(agree)) acc = acc & agree;
    return acc;
}

// ---------------------------------------------------------------------------
// Emerging-cell brute-force oracle. Enumerates the whole generalization
// lattice from the per-dimension value sets and applies the definitions
// literally, independent of the engine's enumeration and aggregation code.

struct OracleCell {
    CellDims dims;
    Trend direction;
    std::vector<double> rates;
};

inline bool oracle_covers(const CellDims& cell, const MergedRow& row) {
    for (std::size_t i = 0; i < cell.size(); ++i)
        if (cell[i].has_value() && *cell[i] != row.dims[i]) return false;
    return true;
}

inline std::vector<OracleCell> emerging_oracle(const MergedRelation& mr,
                                               const ThresholdSpec& thresholds) {
    const std::size_t dim_count = mr.dimensions.size();
    std::vector<std::vector<std::optional<std::string>>> choices(dim_count);
    for (std::size_t i = 0; i < dim_count; ++i) {
        std::set<std::string> values;
        for (const auto& row : mr.rows) values.insert(row.dims[i]);
        choices[i].push_back(std::nullopt);
        for (const auto& v : values) choices[i].push_back(v);
    }

    std::vector<OracleCell> out;
    std::vector<std::size_t> pick(dim_count, 0);
    while (true) {
        CellDims cell(dim_count);
        for (std::size_t i = 0; i < dim_count; ++i) cell[i] = choices[i][pick[i]];

        std::vector<const MergedRow*> covered;
        for (const auto& row : mr.rows)
            if (oracle_covers(cell, row)) covered.push_back(&row);

        if (!covered.empty()) {
            bool emerging = !mr.measures.empty();
            std::optional<Trend> direction;
            std::vector<double> rates;
            for (std::size_t j = 0; j < mr.measures.size() && emerging; ++j) {
                double a1 = 0, a2 = 0;
                for (const MergedRow* row : covered) {
                    a1 += row->side1[j].value_or(0.0);
                    a2 += row->side2[j].value_or(0.0);
                }
                a1 /= static_cast<double>(covered.size());
                a2 /= static_cast<double>(covered.size());
                const auto& b = thresholds.require(mr.measures[j]);
                std::optional<Trend> trend;
                if (a1 == 0 && a2 != 0)
                    trend = Trend::Rise;
                else if (a2 == 0 && a1 != 0)
                    trend = Trend::Decline;
                else if (a1 != 0 && a2 != 0) {
                    if (a1 >= b.t1 && a2 < b.t2)
                        trend = Trend::Decline;
                    else if (a1 < b.t1 && a2 >= b.t2)
                        trend = Trend::Rise;
                }
                if (!trend || (direction && *direction != *trend)) {
                    emerging = false;
                    break;
                }
                direction = trend;
                if (a1 == 0 || a2 == 0)
                    rates.push_back(std::numeric_limits<double>::infinity());
                else
                    rates.push_back(std::max(a1, a2) / std::min(a1, a2));
            }
            if (emerging) out.push_back({cell, *direction, std::move(rates)});
        }

        std::size_t at = 0;
        while (at < dim_count && ++pick[at] == choices[at].size()) pick[at++] = 0;
        if (at == dim_count) break;
    }
    return out;
}

/// A random merged relation with random ALL patterns, for oracle checks.
inline MergedRelation random_merged(std::mt19937_64& gen) {
    MergedRelation mr;
    const std::size_t dim_count = 1 + gen() % 3;
    for (std::size_t i = 0; i < dim_count; ++i) mr.dimensions.push_back("D" + std::to_string(i));
    const std::size_t measure_count = 1 + gen() % 2;
    for (std::size_t j = 0; j < measure_count; ++j) {
        const std::string name = "M" + std::to_string(j);
        mr.criteria.push_back({name, Direction::Minimize});
        mr.measures.push_back(name);
    }
    const std::size_t rows = 1 + gen() % 8;
    std::set<std::vector<std::string>> seen;
    for (std::size_t i = 0; i < rows; ++i) {
        MergedRow row;
        for (std::size_t dpos = 0; dpos < dim_count; ++dpos)
            row.dims.push_back(std::string(1, static_cast<char>('a' + gen() % 3)));
        if (!seen.insert(row.dims).second) continue;  // keep (subspace, dims) keys unique
        row.id = static_cast<RowId>(mr.rows.size() + 1);
        row.origin_subspace = CriterionSet::full(measure_count);
        for (std::size_t j = 0; j < measure_count; ++j) {
            row.side1.push_back(gen() % 3 == 0 ? Slot{} : Slot{double(gen() % 50)});
            row.side2.push_back(gen() % 3 == 0 ? Slot{} : Slot{double(gen() % 50)});
        }
        mr.rows.push_back(std::move(row));
    }
    if (mr.rows.empty()) {
        MergedRow row;
        row.id = 1;
        row.origin_subspace = CriterionSet::full(measure_count);
        row.dims.assign(dim_count, "a");
        row.side1.assign(measure_count, Slot{1.0});
        row.side2.assign(measure_count, Slot{2.0});
        mr.rows.push_back(std::move(row));
    }
    return mr;
}

inline double round2(double v) {
    return std::isinf(v) ? v : std::round(v * 100.0) / 100.0;
}

inline std::string cell_key(const CellDims& dims) {
    std::string out;
    for (const auto& d : dims) {
        out += d ? *d : std::string("ALL");
        out += '|';
    }
    return out;
}

inline std::string cell_key(const std::vector<std::string>& dims) {
    std::string out;
    for (const auto& d : dims) {
        out += d;
        out += '|';
    }
    return out;
}

}  // namespace testsupport
