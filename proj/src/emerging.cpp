#include "skylattice/emerging.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <set>

namespace sky {

namespace {

// ALL sorts before any concrete value; then plain string order, left to
// right.
bool cell_dims_less(const CellDims& a, const CellDims& b) {
    for (std::size_t i = 0; i < a.size() && i < b.size(); ++i) {
        const bool a_all = !a[i].has_value();
        const bool b_all = !b[i].has_value();
        if (a_all != b_all) return a_all;
        if (!a_all && *a[i] != *b[i]) return *a[i] < *b[i];
    }
    return a.size() < b.size();
}

bool subspace_block_less(CriterionSet a, CriterionSet b) {
    if (a.size() != b.size()) return a.size() > b.size();  // wide subspaces first
    return a.bits() < b.bits();
}

void sort_cells(std::vector<EmergingCell>& cells) {
    std::sort(cells.begin(), cells.end(),
              [](const EmergingCell& x, const EmergingCell& y) {
                  return cell_dims_less(x.dims, y.dims);
              });
}

void validate_thresholds(const MergedRelation& mr, const ThresholdSpec& thresholds) {
    for (const auto& measure : mr.measures) {
        auto it = thresholds.per_measure.find(measure);
        if (it == thresholds.per_measure.end())
            throw ConfigError("no thresholds configured for measure '" + measure + "'");
        const auto& b = it->second;
        if (!(std::isfinite(b.t1) && std::isfinite(b.t2) && b.t1 >= 0 && b.t2 >= 0))
            throw ConfigError("thresholds for '" + measure + "' must be finite and non-negative");
    }
}

/// All distinct generalizations (with ALL) of the given rows' dims.
std::set<CellDims, bool (*)(const CellDims&, const CellDims&)> covering_cells(
    const std::vector<const MergedRow*>& rows, bool include_apex) {
    std::set<CellDims, bool (*)(const CellDims&, const CellDims&)> cells(cell_dims_less);
    for (const MergedRow* row : rows) {
        const std::size_t d = row->dims.size();
        if (d > 20) throw ResourceError("cell enumeration caps at 20 dimensions");
        for (std::size_t mask = 0; mask < (std::size_t{1} << d); ++mask) {
            if (!include_apex && mask == 0) continue;
            CellDims cell(d);
            for (std::size_t i = 0; i < d; ++i)
                if (mask >> i & 1) cell[i] = row->dims[i];
            cells.insert(std::move(cell));
        }
    }
    return cells;
}

struct SideAggregates {
    double a1 = 0;
    double a2 = 0;
};

std::vector<SideAggregates> aggregate_covered(const MergedRelation& mr,
                                              const std::vector<const MergedRow*>& rows,
                                              const CellDims& cell) {
    std::size_t count = 0;
    std::vector<SideAggregates> sums(mr.measures.size());
    for (const MergedRow* row : rows) {
        if (!covers(cell, *row)) continue;
        ++count;
        for (std::size_t j = 0; j < mr.measures.size(); ++j) {
            sums[j].a1 += row->side1[j].value_or(0.0);
            sums[j].a2 += row->side2[j].value_or(0.0);
        }
    }
    if (count == 0) throw DomainError("cell covers no merged rows");
    for (auto& s : sums) {
        s.a1 /= static_cast<double>(count);
        s.a2 /= static_cast<double>(count);
    }
    return sums;
}

}  // namespace

std::optional<std::size_t> MergedRelation::measure_index(std::string_view name) const {
    for (std::size_t i = 0; i < measures.size(); ++i)
        if (measures[i] == name) return i;
    return std::nullopt;
}

ThresholdSpec ThresholdSpec::uniform(const std::vector<std::string>& measures, double t1,
                                     double t2) {
    ThresholdSpec spec;
    for (const auto& m : measures) spec.per_measure[m] = {t1, t2};
    return spec;
}

const ThresholdSpec::Bounds& ThresholdSpec::require(const std::string& measure) const {
    auto it = per_measure.find(measure);
    if (it == per_measure.end())
        throw ConfigError("no thresholds configured for measure '" + measure + "'");
    return it->second;
}

bool EmergingCell::all_rates_finite() const {
    return std::all_of(rates.begin(), rates.end(), [](double r) { return std::isfinite(r); });
}

std::vector<std::string> detect_invariant_measures(const Relation& r1, const Relation& r2) {
    if (!r1.schema().compatible_with(r2.schema()))
        throw DomainError("relations are not unicompatible");
    const std::size_t d = r1.schema().criterion_count();

    std::map<std::vector<std::string>, std::vector<const Row*>> by_dims1, by_dims2;
    for (const Row& row : r1.rows()) by_dims1[row.dims].push_back(&row);
    for (const Row& row : r2.rows()) by_dims2[row.dims].push_back(&row);

    std::vector<bool> invariant(d, true);
    for (const auto& [dims, rows1] : by_dims1) {
        auto it = by_dims2.find(dims);
        if (it == by_dims2.end()) continue;
        for (std::size_t c = 0; c < d; ++c) {
            if (!invariant[c]) continue;
            const double v = rows1.front()->criteria[c];
            for (const Row* row : rows1)
                if (row->criteria[c] != v) invariant[c] = false;
            for (const Row* row : it->second)
                if (row->criteria[c] != v) invariant[c] = false;
        }
    }
    std::vector<std::string> out;
    for (std::size_t c = 0; c < d; ++c)
        if (invariant[c]) out.push_back(r1.schema().criteria()[c].name);
    return out;
}

MergedRelation merge_materializations(const MaterializedSkycube& m1,
                                      const MaterializedSkycube& m2, const Relation& r1,
                                      const Relation& r2) {
    if (!r1.schema().compatible_with(r2.schema()))
        throw DomainError("relations are not unicompatible");
    const Schema& schema = r1.schema();

    MergedRelation mr;
    mr.dimensions = schema.dimensions();
    mr.criteria = schema.criteria();
    mr.invariant_measures = detect_invariant_measures(r1, r2);
    auto is_invariant = [&](const std::string& name) {
        return std::find(mr.invariant_measures.begin(), mr.invariant_measures.end(), name) !=
               mr.invariant_measures.end();
    };
    std::vector<std::size_t> varying_index;  // criterion index per varying measure
    for (const auto& pair : schema.measure_pairs()) {
        if (is_invariant(pair.name)) continue;
        mr.measures.push_back(pair.name);
        varying_index.push_back(*schema.criterion_index(pair.name));
    }
    std::vector<std::size_t> invariant_index;
    for (const auto& name : mr.invariant_measures)
        invariant_index.push_back(*schema.criterion_index(name));

    struct Pending {
        MergedRow row;
        RowId min_source = 0;
    };
    std::map<std::pair<std::uint32_t, std::vector<std::string>>, Pending> keyed;

    auto fold_in = [&](const MaterializedSkycube& m, const Relation& r, int side) {
        for (const auto& node : m.concepts()) {
            const CriterionSet subspace = node.subspace;
            for (const auto& cls : node.skyline_classes) {
                for (RowId member : cls) {
                    const Row& row = r.row(member);
                    auto key = std::make_pair(subspace.bits(), row.dims);
                    auto [it, inserted] = keyed.try_emplace(std::move(key));
                    Pending& pending = it->second;
                    if (inserted) {
                        pending.row.origin_subspace = subspace;
                        pending.row.dims = row.dims;
                        pending.row.invariants.assign(invariant_index.size(), std::nullopt);
                        pending.row.side1.assign(varying_index.size(), std::nullopt);
                        pending.row.side2.assign(varying_index.size(), std::nullopt);
                        pending.min_source = member;
                    }
                    pending.min_source = std::min(pending.min_source, member);
                    auto assign = [&](Slot& slot, double value, const std::string& name) {
                        if (slot && *slot != value)
                            throw DomainError("conflicting values for measure '" + name +
                                              "' while merging subspace rows");
                        slot = value;
                    };
                    for (std::size_t j = 0; j < invariant_index.size(); ++j)
                        if (subspace.contains(invariant_index[j]))
                            assign(pending.row.invariants[j], row.criteria[invariant_index[j]],
                                   mr.invariant_measures[j]);
                    auto& sides = side == 1 ? pending.row.side1 : pending.row.side2;
                    for (std::size_t j = 0; j < varying_index.size(); ++j)
                        if (subspace.contains(varying_index[j]))
                            assign(sides[j], row.criteria[varying_index[j]], mr.measures[j]);
                }
            }
        }
    };
    fold_in(m1, r1, 1);
    fold_in(m2, r2, 2);

    std::vector<Pending> pending;
    pending.reserve(keyed.size());
    for (auto& [_, p] : keyed) {
        const bool has_value =
            std::any_of(p.row.invariants.begin(), p.row.invariants.end(),
                        [](const Slot& s) { return s.has_value(); }) ||
            std::any_of(p.row.side1.begin(), p.row.side1.end(),
                        [](const Slot& s) { return s.has_value(); }) ||
            std::any_of(p.row.side2.begin(), p.row.side2.end(),
                        [](const Slot& s) { return s.has_value(); });
        if (has_value) pending.push_back(std::move(p));
    }
    std::sort(pending.begin(), pending.end(), [](const Pending& a, const Pending& b) {
        if (a.row.origin_subspace != b.row.origin_subspace)
            return subspace_block_less(a.row.origin_subspace, b.row.origin_subspace);
        if (a.min_source != b.min_source) return a.min_source < b.min_source;
        return a.row.dims < b.row.dims;
    });
    mr.rows.reserve(pending.size());
    for (std::size_t i = 0; i < pending.size(); ++i) {
        pending[i].row.id = static_cast<RowId>(i + 1);
        mr.rows.push_back(std::move(pending[i].row));
    }
    return mr;
}

MergedRelation abridge(const MergedRelation& mr) {
    MergedRelation out;
    out.dimensions = mr.dimensions;
    out.criteria = mr.criteria;
    out.measures = mr.measures;

    CriterionSet required;
    for (const auto& measure : mr.measures) {
        for (std::size_t c = 0; c < mr.criteria.size(); ++c)
            if (mr.criteria[c].name == measure) required = required.with(c);
    }
    for (const MergedRow& row : mr.rows) {
        if (!required.subset_of(row.origin_subspace)) continue;
        MergedRow copy = row;
        copy.id = static_cast<RowId>(out.rows.size() + 1);
        copy.invariants.clear();
        out.rows.push_back(std::move(copy));
    }
    return out;
}

bool covers(const CellDims& cell, const MergedRow& row) {
    if (cell.size() != row.dims.size())
        throw DomainError("cell and row have different dimension counts");
    for (std::size_t i = 0; i < cell.size(); ++i)
        if (cell[i] && *cell[i] != row.dims[i]) return false;
    return true;
}

double aggregate(const MergedRelation& mr, const CellDims& cell, const std::string& measure,
                 Side side) {
    const auto index = mr.measure_index(measure);
    if (!index) throw LookupError("unknown measure '" + measure + "'");
    double sum = 0;
    std::size_t count = 0;
    for (const MergedRow& row : mr.rows) {
        if (!covers(cell, row)) continue;
        ++count;
        const auto& slot = side == Side::One ? row.side1[*index] : row.side2[*index];
        sum += slot.value_or(0.0);
    }
    if (count == 0) throw DomainError("cell covers no merged rows");
    return sum / static_cast<double>(count);
}

double emergence_rate(double a1, double a2) {
    if (a1 < 0 || a2 < 0) throw DomainError("aggregates must be non-negative");
    if (a1 == 0 && a2 == 0) return 0;
    if (a1 == 0 || a2 == 0) return std::numeric_limits<double>::infinity();
    return std::max(a1, a2) / std::min(a1, a2);
}

std::optional<Trend> is_measured_emerging(double a1, double a2, double t1, double t2) {
    if (a1 == 0 && a2 == 0) return std::nullopt;
    // One zero aggregate means an infinite rate toward the non-zero side,
    // thresholds notwithstanding.
    if (a1 == 0) return Trend::Rise;
    if (a2 == 0) return Trend::Decline;
    if (a1 >= t1 && a2 < t2) return Trend::Decline;
    if (a1 < t1 && a2 >= t2) return Trend::Rise;
    return std::nullopt;
}

std::vector<EmergingCell> emerging_skycube(const MergedRelation& mr,
                                           const ThresholdSpec& thresholds) {
    validate_thresholds(mr, thresholds);
    std::vector<const MergedRow*> rows;
    rows.reserve(mr.rows.size());
    for (const MergedRow& row : mr.rows) rows.push_back(&row);

    std::vector<EmergingCell> out;
    for (const CellDims& dims : covering_cells(rows, /*include_apex=*/true)) {
        const auto aggs = aggregate_covered(mr, rows, dims);
        EmergingCell cell;
        cell.dims = dims;
        bool emerging = !mr.measures.empty();
        std::optional<Trend> direction;
        for (std::size_t j = 0; j < mr.measures.size(); ++j) {
            const auto& bounds = thresholds.require(mr.measures[j]);
            const auto trend = is_measured_emerging(aggs[j].a1, aggs[j].a2, bounds.t1, bounds.t2);
            if (!trend || (direction && *direction != *trend)) {
                emerging = false;
                break;
            }
            direction = trend;
            cell.agg1.push_back(aggs[j].a1);
            cell.agg2.push_back(aggs[j].a2);
            cell.rates.push_back(emergence_rate(aggs[j].a1, aggs[j].a2));
        }
        if (!emerging) continue;
        cell.direction = *direction;
        out.push_back(std::move(cell));
    }
    return out;  // set iteration already yields canonical order
}

namespace {

/// s specializes g: on every dimension g is ALL or equal to s.
bool specializes(const CellDims& s, const CellDims& g) {
    for (std::size_t i = 0; i < s.size(); ++i) {
        if (!g[i]) continue;
        if (!s[i] || *s[i] != *g[i]) return false;
    }
    return true;
}

}  // namespace

std::vector<EmergingCell> l_border(const std::vector<EmergingCell>& cells) {
    std::vector<EmergingCell> out;
    for (const auto& cell : cells) {
        bool minimal = true;
        for (const auto& other : cells) {
            if (&other == &cell || other.dims == cell.dims) continue;
            if (specializes(cell.dims, other.dims)) {
                minimal = false;
                break;
            }
        }
        if (minimal) out.push_back(cell);
    }
    sort_cells(out);
    return out;
}

CellDims cube_closure(const MergedRelation& mr, const CellDims& cell) {
    std::vector<const MergedRow*> covered;
    for (const MergedRow& row : mr.rows)
        if (covers(cell, row)) covered.push_back(&row);
    if (covered.empty()) throw DomainError("cell covers no merged rows");

    CellDims closed(cell.size());
    for (std::size_t i = 0; i < cell.size(); ++i) {
        const std::string& first = covered.front()->dims[i];
        const bool unique = std::all_of(covered.begin(), covered.end(),
                                        [&](const MergedRow* r) { return r->dims[i] == first; });
        if (unique) closed[i] = first;
    }
    return closed;
}

namespace {

EmergingCell remeasure(const MergedRelation& mr, const CellDims& dims, Trend direction) {
    std::vector<const MergedRow*> rows;
    rows.reserve(mr.rows.size());
    for (const MergedRow& row : mr.rows) rows.push_back(&row);
    const auto aggs = aggregate_covered(mr, rows, dims);
    EmergingCell cell;
    cell.dims = dims;
    cell.direction = direction;
    for (const auto& a : aggs) {
        cell.agg1.push_back(a.a1);
        cell.agg2.push_back(a.a2);
        cell.rates.push_back(emergence_rate(a.a1, a.a2));
    }
    return cell;
}

}  // namespace

std::vector<EmergingCell> closed_emerging(const MergedRelation& mr,
                                          const std::vector<EmergingCell>& cells) {
    std::set<CellDims, bool (*)(const CellDims&, const CellDims&)> seen(cell_dims_less);
    std::vector<EmergingCell> out;
    for (const auto& cell : cells) {
        CellDims closed = cube_closure(mr, cell.dims);
        if (!seen.insert(closed).second) continue;
        out.push_back(remeasure(mr, closed, cell.direction));
    }
    sort_cells(out);
    return out;
}

std::vector<EmergingCell> closed_emerging_l(const MergedRelation& mr,
                                            const std::vector<EmergingCell>& cells) {
    std::vector<EmergingCell> out = closed_emerging(mr, cells);
    std::set<CellDims, bool (*)(const CellDims&, const CellDims&)> seen(cell_dims_less);
    for (const auto& cell : out) seen.insert(cell.dims);
    for (const auto& cell : l_border(cells))
        if (seen.insert(cell.dims).second) out.push_back(cell);
    sort_cells(out);
    return out;
}

std::vector<MeasuredBlock> per_block_measured_emerging(const MergedRelation& mr,
                                                       const std::string& measure, double t1,
                                                       double t2) {
    const auto index = mr.measure_index(measure);
    if (!index) throw LookupError("unknown measure '" + measure + "'");
    if (!(std::isfinite(t1) && std::isfinite(t2) && t1 >= 0 && t2 >= 0))
        throw ConfigError("thresholds must be finite and non-negative");

    std::vector<CriterionSet> block_order;
    std::map<std::uint32_t, std::vector<const MergedRow*>> blocks;
    for (const MergedRow& row : mr.rows) {
        auto [it, inserted] = blocks.try_emplace(row.origin_subspace.bits());
        if (inserted) block_order.push_back(row.origin_subspace);
        it->second.push_back(&row);
    }
    std::sort(block_order.begin(), block_order.end(), subspace_block_less);

    std::vector<MeasuredBlock> out;
    for (CriterionSet subspace : block_order) {
        const auto& rows = blocks.at(subspace.bits());
        MeasuredBlock block;
        block.origin_subspace = subspace;
        for (const CellDims& dims : covering_cells(rows, /*include_apex=*/false)) {
            double a1 = 0, a2 = 0;
            std::size_t count = 0;
            for (const MergedRow* row : rows) {
                if (!covers(dims, *row)) continue;
                ++count;
                a1 += row->side1[*index].value_or(0.0);
                a2 += row->side2[*index].value_or(0.0);
            }
            a1 /= static_cast<double>(count);
            a2 /= static_cast<double>(count);

            // Historical presentation: a zero side-1 aggregate reads as an
            // infinite rate; a zero side-2 aggregate reads as rate 0 and is
            // never emerging, and the threshold test only applies to cells
            // with two non-zero aggregates.
            std::optional<Trend> trend;
            if (a1 == 0 && a2 != 0)
                trend = Trend::Rise;
            else if (a1 != 0 && a2 != 0) {
                if (a1 >= t1 && a2 < t2)
                    trend = Trend::Decline;
                else if (a1 < t1 && a2 >= t2)
                    trend = Trend::Rise;
            }
            if (!trend) continue;
            EmergingCell cell;
            cell.dims = dims;
            cell.direction = *trend;
            cell.agg1.push_back(a1);
            cell.agg2.push_back(a2);
            cell.rates.push_back(emergence_rate(a1, a2));
            block.cells.push_back(std::move(cell));
        }
        if (!block.cells.empty()) out.push_back(std::move(block));
    }
    return out;
}

}  // namespace sky
