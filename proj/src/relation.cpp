#include "skylattice/relation.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <sstream>
#include <unordered_map>
#include <unordered_set>

#include "json.hpp"

namespace sky {

Schema::Schema(std::vector<std::string> dimensions, std::vector<Criterion> criteria,
               std::vector<MeasurePair> measure_pairs, std::optional<SplitProperty> split)
    : dimensions_(std::move(dimensions)),
      criteria_(std::move(criteria)),
      measure_pairs_(std::move(measure_pairs)),
      split_(std::move(split)) {
    if (criteria_.empty()) throw ConfigError("schema needs at least one criterion");
    if (criteria_.size() > CriterionSet::kMaxCriteria)
        throw ConfigError("schema exceeds the supported criterion count of 32");

    std::unordered_set<std::string> names;
    auto claim = [&](const std::string& name, const char* what) {
        if (name.empty()) throw ConfigError(std::string(what) + " with empty name");
        if (!names.insert(name).second)
            throw ConfigError("duplicate attribute name '" + name + "'");
    };
    for (const auto& d : dimensions_) claim(d, "dimension");
    for (const auto& c : criteria_) claim(c.name, "criterion");
    if (split_) claim(split_->column, "split property");

    std::unordered_set<char> initials;
    initials_unique_ = true;
    for (const auto& c : criteria_)
        if (!initials.insert(c.name.front()).second) initials_unique_ = false;

    std::unordered_set<std::string> pair_names;
    for (const auto& p : measure_pairs_) {
        if (!criterion_index(p.name))
            throw ConfigError("measure pair '" + p.name + "' does not name a criterion");
        if (!pair_names.insert(p.name).second)
            throw ConfigError("duplicate measure pair '" + p.name + "'");
        if (p.side1_column.empty() || p.side2_column.empty() || p.side1_column == p.side2_column)
            throw ConfigError("measure pair '" + p.name + "' needs two distinct column names");
    }
}

std::optional<std::size_t> Schema::criterion_index(std::string_view name) const {
    for (std::size_t i = 0; i < criteria_.size(); ++i)
        if (criteria_[i].name == name) return i;
    return std::nullopt;
}

std::string Schema::subspace_label(CriterionSet set) const {
    if (!set.subset_of(all_criteria()))
        throw DomainError("subspace references criteria outside the schema");
    if (set.empty()) return "-";
    std::string out;
    bool first = true;
    for (std::size_t i : set.indices()) {
        if (initials_unique_) {
            out += criteria_[i].name.front();
        } else {
            if (!first) out += '+';
            out += criteria_[i].name;
        }
        first = false;
    }
    return out;
}

CriterionSet Schema::parse_subspace(std::string_view text) const {
    if (text.empty() || text == "-") return CriterionSet::none();
    CriterionSet out;
    if (text.find('+') != std::string_view::npos) {
        std::size_t start = 0;
        while (start <= text.size()) {
            std::size_t end = text.find('+', start);
            if (end == std::string_view::npos) end = text.size();
            auto idx = criterion_index(text.substr(start, end - start));
            if (!idx)
                throw LookupError("unknown criterion '" + std::string(text.substr(start, end - start)) + "'");
            out = out.with(*idx);
            start = end + 1;
            if (end == text.size()) break;
        }
        return out;
    }
    // Try a full criterion name first, then a run of initials.
    if (auto idx = criterion_index(text)) return CriterionSet::single(*idx);
    if (!initials_unique_)
        throw LookupError("criterion initials are ambiguous; use full names joined with '+'");
    for (char ch : text) {
        bool found = false;
        for (std::size_t i = 0; i < criteria_.size(); ++i) {
            if (criteria_[i].name.front() == ch) {
                out = out.with(i);
                found = true;
                break;
            }
        }
        if (!found) throw LookupError(std::string("no criterion with initial '") + ch + "'");
    }
    return out;
}

Schema Schema::without_split() const {
    return Schema(dimensions_, criteria_, measure_pairs_, std::nullopt);
}

bool Schema::compatible_with(const Schema& other) const {
    if (dimensions_ != other.dimensions_) return false;
    if (criteria_.size() != other.criteria_.size()) return false;
    for (std::size_t i = 0; i < criteria_.size(); ++i)
        if (criteria_[i].name != other.criteria_[i].name ||
            criteria_[i].direction != other.criteria_[i].direction)
            return false;
    if (measure_pairs_.size() != other.measure_pairs_.size()) return false;
    for (std::size_t i = 0; i < measure_pairs_.size(); ++i)
        if (measure_pairs_[i].name != other.measure_pairs_[i].name) return false;
    return true;
}

Schema Schema::from_json(const std::string& json_text) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(json_text);
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError(std::string("schema is not valid JSON: ") + e.what());
    }
    try {
        std::vector<std::string> dims;
        for (const auto& d : doc.value("dimensions", nlohmann::json::array()))
            dims.push_back(d.get<std::string>());
        std::vector<Criterion> criteria;
        for (const auto& c : doc.at("criteria")) {
            Criterion crit;
            crit.name = c.at("name").get<std::string>();
            const std::string dir = c.value("direction", "min");
            if (dir == "min" || dir == "minimize")
                crit.direction = Direction::Minimize;
            else if (dir == "max" || dir == "maximize")
                crit.direction = Direction::Maximize;
            else
                throw ConfigError("criterion '" + crit.name + "' has unknown direction '" + dir + "'");
            criteria.push_back(std::move(crit));
        }
        std::vector<MeasurePair> pairs;
        for (const auto& p : doc.value("measures", nlohmann::json::array()))
            pairs.push_back({p.at("name").get<std::string>(), p.at("side1").get<std::string>(),
                             p.at("side2").get<std::string>()});
        std::optional<SplitProperty> split;
        if (doc.contains("split")) {
            const auto& s = doc.at("split");
            split = SplitProperty{s.at("column").get<std::string>(), s.at("r1").get<std::string>(),
                                  s.at("r2").get<std::string>()};
        }
        return Schema(std::move(dims), std::move(criteria), std::move(pairs), std::move(split));
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError(std::string("schema JSON is missing required fields: ") + e.what());
    }
}

std::string Schema::to_json() const {
    nlohmann::json doc;
    doc["dimensions"] = dimensions_;
    doc["criteria"] = nlohmann::json::array();
    for (const auto& c : criteria_)
        doc["criteria"].push_back(
            {{"name", c.name}, {"direction", c.direction == Direction::Minimize ? "min" : "max"}});
    if (!measure_pairs_.empty()) {
        doc["measures"] = nlohmann::json::array();
        for (const auto& p : measure_pairs_)
            doc["measures"].push_back(
                {{"name", p.name}, {"side1", p.side1_column}, {"side2", p.side2_column}});
    }
    if (split_)
        doc["split"] = {{"column", split_->column}, {"r1", split_->r1_value}, {"r2", split_->r2_value}};
    return doc.dump(2) + "\n";
}

Relation::Relation(Schema schema, std::vector<Row> rows)
    : schema_(std::move(schema)), rows_(std::move(rows)) {
    for (std::size_t i = 0; i < rows_.size(); ++i) {
        if (rows_[i].id != static_cast<RowId>(i + 1))
            throw DomainError("RowIds must be contiguous 1..n");
        if (rows_[i].dims.size() != schema_.dimension_count() ||
            rows_[i].criteria.size() != schema_.criterion_count())
            throw DomainError("row " + std::to_string(i + 1) + " does not match the schema");
    }
}

const Row& Relation::row(RowId id) const {
    if (id == 0 || id > rows_.size())
        throw LookupError("unknown RowId " + std::to_string(id));
    return rows_[id - 1];
}

double Relation::adjusted_value(const Row& row, std::size_t criterion) const {
    const double v = row.criteria[criterion];
    return schema_.criteria()[criterion].direction == Direction::Minimize ? v : -v;
}

namespace {

std::vector<std::string> split_csv_line(const std::string& line, std::size_t line_no) {
    std::vector<std::string> fields;
    std::string field;
    bool quoted = false;
    for (std::size_t i = 0; i < line.size(); ++i) {
        const char ch = line[i];
        if (quoted) {
            if (ch == '"') {
                if (i + 1 < line.size() && line[i + 1] == '"') {
                    field += '"';
                    ++i;
                } else {
                    quoted = false;
                }
            } else {
                field += ch;
            }
        } else if (ch == '"' && field.empty()) {
            quoted = true;
        } else if (ch == ',') {
            fields.push_back(std::move(field));
            field.clear();
        } else {
            field += ch;
        }
    }
    if (quoted)
        throw IngestError("line " + std::to_string(line_no) + ": unterminated quoted field");
    fields.push_back(std::move(field));
    return fields;
}

std::string trim(const std::string& s) {
    std::size_t a = 0, b = s.size();
    while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
    while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
    return s.substr(a, b - a);
}

double parse_numeric_cell(const std::string& cell, std::size_t row_no, const std::string& column) {
    const std::string t = trim(cell);
    if (!t.empty()) {
        char* end = nullptr;
        const double v = std::strtod(t.c_str(), &end);
        if (end == t.c_str() + t.size() && std::isfinite(v)) return v;
    }
    throw IngestError("row " + std::to_string(row_no) + ", column " + column +
                      ": cannot parse '" + cell + "' as a number");
}

}  // namespace

Relation load_relation(std::istream& source, const Schema& schema) {
    std::string line;
    if (!std::getline(source, line))
        throw IngestError("input is empty, expected a header row");
    if (!line.empty() && line.back() == '\r') line.pop_back();
    const auto header = split_csv_line(line, 1);

    std::unordered_map<std::string, std::size_t> column_of;
    for (std::size_t i = 0; i < header.size(); ++i) column_of[trim(header[i])] = i;

    auto require_column = [&](const std::string& name) {
        auto it = column_of.find(name);
        if (it == column_of.end())
            throw ConfigError("input is missing configured column '" + name + "'");
        return it->second;
    };

    std::vector<std::size_t> dim_cols;
    for (const auto& d : schema.dimensions()) dim_cols.push_back(require_column(d));
    std::vector<std::size_t> crit_cols;
    for (const auto& c : schema.criteria()) crit_cols.push_back(require_column(c.name));
    std::size_t split_col = 0;
    if (schema.split()) split_col = require_column(schema.split()->column);

    std::vector<Row> rows;
    std::size_t line_no = 1;
    while (std::getline(source, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        const auto fields = split_csv_line(line, line_no);
        if (fields.size() < header.size())
            throw IngestError("line " + std::to_string(line_no) + ": expected " +
                              std::to_string(header.size()) + " fields, got " +
                              std::to_string(fields.size()));
        Row row;
        row.id = static_cast<RowId>(rows.size() + 1);
        for (std::size_t c : dim_cols) row.dims.push_back(trim(fields[c]));
        for (std::size_t i = 0; i < crit_cols.size(); ++i)
            row.criteria.push_back(
                parse_numeric_cell(fields[crit_cols[i]], row.id, schema.criteria()[i].name));
        if (schema.split()) row.split_value = trim(fields[split_col]);
        rows.push_back(std::move(row));
    }
    return Relation(schema, std::move(rows));
}

Relation load_relation_file(const std::string& path, const Schema& schema) {
    std::ifstream in(path);
    if (!in) throw IngestError("cannot open '" + path + "'");
    return load_relation(in, schema);
}

SplitResult split_by_property(const Relation& r) {
    const auto& split = r.schema().split();
    if (!split) throw UsageError("relation schema declares no split property");

    const Schema side_schema = r.schema().without_split();
    std::vector<Row> rows1, rows2;
    std::size_t dropped = 0;
    for (const auto& row : r.rows()) {
        std::vector<Row>* target = nullptr;
        if (row.split_value == split->r1_value)
            target = &rows1;
        else if (row.split_value == split->r2_value)
            target = &rows2;
        else {
            ++dropped;
            continue;
        }
        Row copy;
        copy.id = static_cast<RowId>(target->size() + 1);
        copy.dims = row.dims;
        copy.criteria = row.criteria;
        target->push_back(std::move(copy));
    }
    return SplitResult{Relation(side_schema, std::move(rows1)),
                       Relation(side_schema, std::move(rows2)), dropped};
}

std::vector<double> project(const Relation& r, RowId t, CriterionSet c) {
    if (!c.subset_of(r.schema().all_criteria()))
        throw DomainError("projection subspace is not part of the schema");
    const Row& row = r.row(t);
    std::vector<double> out;
    out.reserve(c.size());
    for (std::size_t i : c.indices()) out.push_back(row.criteria[i]);
    return out;
}

std::string format_number(double value) {
    if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
    if (std::isnan(value)) return "nan";
    if (value == 0) return "0";  // normalizes -0
    double integral;
    if (std::modf(value, &integral) == 0.0 && std::abs(value) < 1e15) {
        char buf[32];
        std::snprintf(buf, sizeof buf, "%.0f", value);
        return buf;
    }
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.6g", value);
    return buf;
}

}  // namespace sky
