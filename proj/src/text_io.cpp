#include "skylattice/text_io.hpp"

#include <algorithm>
#include <fstream>
#include <limits>
#include <ostream>
#include <sstream>

namespace sky {

namespace {

constexpr char kSep = '\t';

std::vector<std::string> split_tabs(const std::string& line) {
    std::vector<std::string> out;
    std::string field;
    for (char ch : line) {
        if (ch == kSep) {
            out.push_back(std::move(field));
            field.clear();
        } else {
            field += ch;
        }
    }
    out.push_back(std::move(field));
    return out;
}

struct LineReader {
    std::istream& in;
    std::size_t line_no = 0;

    std::vector<std::string> next(const char* context) {
        std::string line;
        while (std::getline(in, line)) {
            ++line_no;
            if (!line.empty() && line.back() == '\r') line.pop_back();
            if (line.empty()) continue;
            return split_tabs(line);
        }
        throw IngestError(std::string("unexpected end of document while reading ") + context);
    }

    [[noreturn]] void fail(const std::string& what) {
        throw IngestError("line " + std::to_string(line_no) + ": " + what);
    }
};

std::size_t parse_count(LineReader& reader, const std::vector<std::string>& fields,
                        const char* keyword) {
    if (fields.size() < 2 || fields[0] != keyword)
        reader.fail(std::string("expected '") + keyword + "' line");
    return static_cast<std::size_t>(std::stoull(fields[1]));
}

double parse_value(LineReader& reader, const std::string& token) {
    if (token == "inf") return std::numeric_limits<double>::infinity();
    try {
        std::size_t used = 0;
        const double v = std::stod(token, &used);
        if (used == token.size()) return v;
    } catch (...) {
    }
    reader.fail("cannot parse number '" + token + "'");
}

Slot parse_slot(LineReader& reader, const std::string& token) {
    if (token == "ALL") return std::nullopt;
    return parse_value(reader, token);
}

void write_criteria(std::ostream& out, const std::vector<Criterion>& criteria) {
    out << "criteria" << kSep << criteria.size() << '\n';
    for (const auto& c : criteria)
        out << "criterion" << kSep << c.name << kSep
            << (c.direction == Direction::Minimize ? "min" : "max") << '\n';
}

std::vector<Criterion> read_criteria(LineReader& reader) {
    const std::size_t count = parse_count(reader, reader.next("criteria"), "criteria");
    std::vector<Criterion> criteria;
    for (std::size_t i = 0; i < count; ++i) {
        const auto fields = reader.next("criterion");
        if (fields.size() != 3 || fields[0] != "criterion") reader.fail("expected criterion line");
        Criterion c;
        c.name = fields[1];
        if (fields[2] == "min")
            c.direction = Direction::Minimize;
        else if (fields[2] == "max")
            c.direction = Direction::Maximize;
        else
            reader.fail("unknown direction '" + fields[2] + "'");
        criteria.push_back(std::move(c));
    }
    return criteria;
}

Schema label_schema(const std::vector<std::string>& dimensions,
                    const std::vector<Criterion>& criteria) {
    return Schema(dimensions, criteria);
}

}  // namespace

void write_skycube(std::ostream& out, const Relation& r, const Skycube& cube) {
    const Schema& schema = r.schema();
    out << kSkycubeHeader << '\n';
    out << "rows" << kSep << r.size() << '\n';
    write_criteria(out, schema.criteria());
    out << "subspaces" << kSep << cube.subspace_count() << '\n';

    std::vector<CriterionSet> order;
    for (const auto& cuboid : cube.all()) order.push_back(cuboid.subspace);
    std::sort(order.begin(), order.end());
    for (CriterionSet subspace : order) {
        const Skycuboid& cuboid = cube.at(subspace);
        out << "subspace" << kSep << schema.subspace_label(subspace) << kSep
            << cuboid.members.size() << '\n';
        for (RowId id : cuboid.members) {
            out << "member" << kSep << id;
            for (double v : project(r, id, subspace)) out << kSep << format_number(v);
            out << '\n';
        }
    }
}

void write_materialization(std::ostream& out, const MaterializedSkycube& m) {
    const Schema schema({}, m.criteria());
    out << kMaterializationHeader << '\n';
    out << "rows" << kSep << m.row_count() << '\n';
    write_criteria(out, m.criteria());
    out << "concepts" << kSep << m.concepts().size() << '\n';
    for (const auto& node : m.concepts()) {
        out << "concept" << kSep << schema.subspace_label(node.subspace) << kSep
            << node.skyline_classes.size() << '\n';
        for (std::size_t i = 0; i < node.skyline_classes.size(); ++i) {
            out << "class";
            for (double v : node.class_values[i]) out << kSep << format_number(v);
            out << kSep << ":";
            for (RowId id : node.skyline_classes[i]) out << kSep << id;
            out << '\n';
        }
    }
    const auto edges = m.cover_edges();
    out << "edges" << kSep << edges.size() << '\n';
    for (const auto& [child, parent] : edges)
        out << "edge" << kSep << schema.subspace_label(m.concepts()[child].subspace) << kSep
            << schema.subspace_label(m.concepts()[parent].subspace) << '\n';
}

MaterializedSkycube read_materialization(std::istream& in) {
    LineReader reader{in};
    auto header = reader.next("header");
    if (header.size() != 1 || header[0] != kMaterializationHeader)
        reader.fail("not a materialization document");
    const std::size_t rows = parse_count(reader, reader.next("rows"), "rows");
    const auto criteria = read_criteria(reader);
    const Schema schema = label_schema({}, criteria);

    const std::size_t concept_count = parse_count(reader, reader.next("concepts"), "concepts");
    std::vector<SkylineConcept> concepts;
    for (std::size_t i = 0; i < concept_count; ++i) {
        const auto fields = reader.next("concept");
        if (fields.size() != 3 || fields[0] != "concept") reader.fail("expected concept line");
        SkylineConcept node;
        node.subspace = schema.parse_subspace(fields[1]);
        const std::size_t class_count = static_cast<std::size_t>(std::stoull(fields[2]));
        const std::size_t width = node.subspace.size();
        for (std::size_t k = 0; k < class_count; ++k) {
            const auto cf = reader.next("class");
            if (cf.empty() || cf[0] != "class" || cf.size() < width + 2 ||
                cf[width + 1] != ":")
                reader.fail("expected class line with " + std::to_string(width) + " values");
            std::vector<double> values;
            for (std::size_t v = 0; v < width; ++v)
                values.push_back(parse_value(reader, cf[1 + v]));
            std::vector<RowId> members;
            for (std::size_t f = width + 2; f < cf.size(); ++f)
                members.push_back(static_cast<RowId>(std::stoul(cf[f])));
            if (members.empty()) reader.fail("class without members");
            node.class_values.push_back(std::move(values));
            node.representatives.push_back(members.front());
            node.skyline_classes.push_back(std::move(members));
        }
        concepts.push_back(std::move(node));
    }
    // The trailing edge list restates what the intensions imply; skip it.
    return MaterializedSkycube(criteria, rows, std::move(concepts));
}

MaterializedSkycube read_materialization_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IngestError("cannot open '" + path + "'");
    return read_materialization(in);
}

namespace {

void write_slot(std::ostream& out, const Slot& slot) {
    out << kSep;
    if (slot)
        out << format_number(*slot);
    else
        out << "ALL";
}

}  // namespace

void write_merged(std::ostream& out, const MergedRelation& mr) {
    const Schema schema = label_schema(mr.dimensions, mr.criteria);
    out << kMergedHeader << '\n';
    out << "dimensions" << kSep << mr.dimensions.size();
    for (const auto& d : mr.dimensions) out << kSep << d;
    out << '\n';
    write_criteria(out, mr.criteria);
    out << "invariants" << kSep << mr.invariant_measures.size();
    for (const auto& name : mr.invariant_measures) out << kSep << name;
    out << '\n';
    out << "measures" << kSep << mr.measures.size();
    for (const auto& name : mr.measures) out << kSep << name;
    out << '\n';
    out << "rows" << kSep << mr.rows.size() << '\n';
    for (const MergedRow& row : mr.rows) {
        out << "row" << kSep << row.id << kSep << schema.subspace_label(row.origin_subspace);
        for (const auto& d : row.dims) out << kSep << d;
        for (const auto& slot : row.invariants) write_slot(out, slot);
        for (const auto& slot : row.side1) write_slot(out, slot);
        for (const auto& slot : row.side2) write_slot(out, slot);
        out << '\n';
    }
}

MergedRelation read_merged(std::istream& in) {
    LineReader reader{in};
    auto header = reader.next("header");
    if (header.size() != 1 || header[0] != kMergedHeader)
        reader.fail("not a merged-relation document");

    MergedRelation mr;
    auto dims = reader.next("dimensions");
    const std::size_t dim_count = parse_count(reader, dims, "dimensions");
    if (dims.size() != dim_count + 2) reader.fail("malformed dimensions line");
    for (std::size_t i = 0; i < dim_count; ++i) mr.dimensions.push_back(dims[2 + i]);

    mr.criteria = read_criteria(reader);
    const Schema schema = label_schema(mr.dimensions, mr.criteria);

    auto invariants = reader.next("invariants");
    const std::size_t inv_count = parse_count(reader, invariants, "invariants");
    if (invariants.size() != inv_count + 2) reader.fail("malformed invariants line");
    for (std::size_t i = 0; i < inv_count; ++i) mr.invariant_measures.push_back(invariants[2 + i]);

    auto measures = reader.next("measures");
    const std::size_t measure_count = parse_count(reader, measures, "measures");
    if (measures.size() != measure_count + 2) reader.fail("malformed measures line");
    for (std::size_t i = 0; i < measure_count; ++i) mr.measures.push_back(measures[2 + i]);

    const std::size_t row_count = parse_count(reader, reader.next("rows"), "rows");
    for (std::size_t i = 0; i < row_count; ++i) {
        const auto fields = reader.next("row");
        const std::size_t expected = 3 + dim_count + inv_count + 2 * measure_count;
        if (fields.size() != expected || fields[0] != "row")
            reader.fail("expected row line with " + std::to_string(expected) + " fields");
        MergedRow row;
        row.id = static_cast<RowId>(std::stoul(fields[1]));
        row.origin_subspace = schema.parse_subspace(fields[2]);
        std::size_t at = 3;
        for (std::size_t d = 0; d < dim_count; ++d) row.dims.push_back(fields[at++]);
        for (std::size_t k = 0; k < inv_count; ++k)
            row.invariants.push_back(parse_slot(reader, fields[at++]));
        for (std::size_t k = 0; k < measure_count; ++k)
            row.side1.push_back(parse_slot(reader, fields[at++]));
        for (std::size_t k = 0; k < measure_count; ++k)
            row.side2.push_back(parse_slot(reader, fields[at++]));
        mr.rows.push_back(std::move(row));
    }
    return mr;
}

MergedRelation read_merged_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IngestError("cannot open '" + path + "'");
    return read_merged(in);
}

namespace {

void write_cell(std::ostream& out, const EmergingCell& cell) {
    out << "cell";
    for (const auto& d : cell.dims) {
        out << kSep;
        if (d)
            out << *d;
        else
            out << "ALL";
    }
    out << kSep << (cell.direction == Trend::Decline ? "decline" : "rise");
    out << kSep << (cell.all_rates_finite() ? "finite" : "infinite");
    for (std::size_t j = 0; j < cell.rates.size(); ++j)
        out << kSep << format_number(cell.agg1[j]) << kSep << format_number(cell.agg2[j]) << kSep
            << format_number(cell.rates[j]);
    out << '\n';
}

}  // namespace

void write_emerging(std::ostream& out, const EmergingDocument& doc) {
    out << kEmergingHeader << '\n';
    out << "variant" << kSep << doc.variant << '\n';
    out << "dimensions" << kSep << doc.dimensions.size();
    for (const auto& d : doc.dimensions) out << kSep << d;
    out << '\n';
    out << "measures" << kSep << doc.measures.size();
    for (const auto& m : doc.measures) out << kSep << m;
    out << '\n';
    out << "thresholds";
    for (const auto& m : doc.measures) {
        const auto& b = doc.thresholds.require(m);
        out << kSep << m << kSep << format_number(b.t1) << kSep << format_number(b.t2);
    }
    out << '\n';
    out << "cells" << kSep << doc.cells.size() << '\n';
    for (const auto& cell : doc.cells) write_cell(out, cell);
}

void write_measured_blocks(std::ostream& out, const MergedRelation& mr,
                           const std::string& measure, double t1, double t2,
                           const std::vector<MeasuredBlock>& blocks) {
    const Schema schema = label_schema(mr.dimensions, mr.criteria);
    out << kEmergingHeader << '\n';
    out << "variant" << kSep << "per-block" << '\n';
    out << "dimensions" << kSep << mr.dimensions.size();
    for (const auto& d : mr.dimensions) out << kSep << d;
    out << '\n';
    out << "measure" << kSep << measure << kSep << format_number(t1) << kSep << format_number(t2)
        << '\n';
    out << "blocks" << kSep << blocks.size() << '\n';
    for (const auto& block : blocks) {
        out << "block" << kSep << schema.subspace_label(block.origin_subspace) << kSep
            << block.cells.size() << '\n';
        for (const auto& cell : block.cells) write_cell(out, cell);
    }
}

}  // namespace sky
