#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "skylattice/bench.hpp"
#include "skylattice/emerging.hpp"
#include "skylattice/fixtures.hpp"
#include "skylattice/lattice.hpp"
#include "skylattice/relation.hpp"
#include "skylattice/skyline.hpp"
#include "skylattice/text_io.hpp"

namespace {

struct OutputTarget {
    std::string path;  // empty = stdout

    void write(const std::string& content) const {
        if (path.empty()) {
            std::cout << content;
            return;
        }
        std::ofstream out(path, std::ios::binary);
        if (!out) throw sky::IngestError("cannot write '" + path + "'");
        out << content;
    }
};

unsigned default_threads() {
    if (const char* env = std::getenv("SKYLATTICE_THREADS")) {
        const long v = std::strtol(env, nullptr, 10);
        if (v >= 1) return static_cast<unsigned>(v);
    }
    return 1;
}

sky::Schema load_schema(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw sky::IngestError("cannot open schema '" + path + "'");
    std::stringstream buf;
    buf << in.rdbuf();
    return sky::Schema::from_json(buf.str());
}

sky::Relation load_input(const std::string& input, const std::string& schema_path, int side) {
    const sky::Schema schema = load_schema(schema_path);
    sky::Relation r = sky::load_relation_file(input, schema);
    if (side == 0) return r;
    auto split = sky::split_by_property(r);
    if (split.dropped > 0)
        std::cerr << "note: " << split.dropped << " row(s) matched neither split value\n";
    return side == 1 ? std::move(split.side1) : std::move(split.side2);
}

std::map<std::string, double> parse_threshold_flags(const std::vector<std::string>& flags,
                                                    const char* which) {
    std::map<std::string, double> out;
    for (const auto& flag : flags) {
        const auto eq = flag.find('=');
        if (eq == std::string::npos || eq == 0 || eq + 1 == flag.size())
            throw sky::UsageError(std::string(which) + " expects MEASURE=VALUE, got '" + flag + "'");
        try {
            out[flag.substr(0, eq)] = std::stod(flag.substr(eq + 1));
        } catch (...) {
            throw sky::UsageError(std::string(which) + ": cannot parse number in '" + flag + "'");
        }
    }
    return out;
}

struct EmergeInputs {
    std::string input, schema, merged, m1, m2, r1, r2;

    sky::MergedRelation resolve(unsigned threads) const {
        if (!merged.empty()) return sky::read_merged_file(merged);
        if (!m1.empty()) {
            if (m2.empty() || r1.empty() || r2.empty() || schema.empty())
                throw sky::UsageError(
                    "two-materialization mode needs --m1 --m2 --r1 --r2 and --schema");
            const sky::Schema side_schema = load_schema(schema).without_split();
            const sky::Relation rel1 = sky::load_relation_file(r1, side_schema);
            const sky::Relation rel2 = sky::load_relation_file(r2, side_schema);
            return sky::merge_materializations(sky::read_materialization_file(m1),
                                               sky::read_materialization_file(m2), rel1, rel2);
        }
        if (input.empty() || schema.empty())
            throw sky::UsageError("provide --input with --schema, or --merged, or --m1/--m2");
        const sky::Relation parent = sky::load_relation_file(input, load_schema(schema));
        auto split = sky::split_by_property(parent);
        if (split.dropped > 0)
            std::cerr << "note: " << split.dropped << " row(s) matched neither split value\n";
        const auto m1_built = sky::build_skyline_lattice(split.side1, 20, threads);
        const auto m2_built = sky::build_skyline_lattice(split.side2, 20, threads);
        return sky::merge_materializations(m1_built, m2_built, split.side1, split.side2);
    }
};

std::string render_query_result(const sky::MaterializedSkycube& m, sky::CriterionSet subspace,
                                const sky::Skycuboid& result) {
    const sky::Schema schema({}, m.criteria());
    std::ostringstream out;
    out << "skylattice query v1\n";
    out << "subspace\t" << schema.subspace_label(subspace) << '\n';
    out << "members\t" << result.members.size() << '\n';
    if (result.members.empty()) return out.str();

    // Projection values come from the stored class at the subspace closure.
    const auto& node = m.concept_at(m.closure_of(subspace));
    const auto closed_indices = node.subspace.indices();
    std::vector<std::size_t> positions;
    for (std::size_t want : subspace.indices())
        positions.push_back(static_cast<std::size_t>(
            std::find(closed_indices.begin(), closed_indices.end(), want) -
            closed_indices.begin()));
    std::map<sky::RowId, std::size_t> class_of;
    for (std::size_t i = 0; i < node.skyline_classes.size(); ++i)
        for (sky::RowId id : node.skyline_classes[i]) class_of[id] = i;
    for (sky::RowId id : result.members) {
        out << "member\t" << id;
        for (std::size_t p : positions)
            out << '\t' << sky::format_number(node.class_values[class_of.at(id)][p]);
        out << '\n';
    }
    return out.str();
}

std::vector<std::size_t> parse_k_list(const std::string& text) {
    std::vector<std::size_t> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ','))
        if (!item.empty()) out.push_back(static_cast<std::size_t>(std::stoull(item)));
    if (out.empty()) throw sky::UsageError("--k expects a comma-separated list of cardinalities");
    return out;
}

int run(int argc, char** argv) {
    CLI::App app{"skyline, skycube and emerging-skycube engine"};
    app.require_subcommand(1);
    unsigned threads = default_threads();
    app.add_option("--threads", threads, "worker threads for subspace evaluation");

    // fixtures
    auto* fixtures_cmd = app.add_subcommand("fixtures", "write the example relations and goldens");
    std::string fixture_case = "pokemon";
    std::string fixture_out;
    fixtures_cmd->add_option("--case", fixture_case, "fixture set name");
    fixtures_cmd->add_option("--out", fixture_out, "output directory")->required();

    // shared input options
    auto add_input_opts = [](CLI::App* cmd, std::string& input, std::string& schema, int& side) {
        cmd->add_option("--input", input, "relation CSV")->required();
        cmd->add_option("--schema", schema, "schema JSON")->required();
        cmd->add_option("--side", side, "split side to keep (1 or 2)")
            ->check(CLI::Range(1, 2));
    };

    auto* skycube_cmd = app.add_subcommand("skycube", "compute the full skycube");
    std::string sc_input, sc_schema, sc_out;
    int sc_side = 0;
    std::size_t sc_cap = 20;
    add_input_opts(skycube_cmd, sc_input, sc_schema, sc_side);
    skycube_cmd->add_option("--out", sc_out, "output file (default stdout)");
    skycube_cmd->add_option("--max-criteria", sc_cap, "enumeration cap");

    auto* mat_cmd = app.add_subcommand("materialize", "build the skyline concept lattice");
    std::string mat_input, mat_schema, mat_out;
    int mat_side = 0;
    add_input_opts(mat_cmd, mat_input, mat_schema, mat_side);
    mat_cmd->add_option("--out", mat_out, "output file (default stdout)");

    auto* query_cmd = app.add_subcommand("query", "answer a subspace skyline query");
    std::string q_mat, q_subspace, q_out;
    query_cmd->add_option("--materialization", q_mat, "materialization document")->required();
    query_cmd->add_option("--subspace", q_subspace, "criterion initials, e.g. RD")->required();
    query_cmd->add_option("--out", q_out, "output file (default stdout)");

    auto* merge_cmd = app.add_subcommand("merge", "merge two materialized skycubes");
    EmergeInputs merge_in;
    std::string merge_out;
    merge_cmd->add_option("--input", merge_in.input, "relation CSV with split property");
    merge_cmd->add_option("--schema", merge_in.schema, "schema JSON");
    merge_cmd->add_option("--m1", merge_in.m1, "side-1 materialization document");
    merge_cmd->add_option("--m2", merge_in.m2, "side-2 materialization document");
    merge_cmd->add_option("--r1", merge_in.r1, "side-1 relation CSV");
    merge_cmd->add_option("--r2", merge_in.r2, "side-2 relation CSV");
    merge_cmd->add_option("--out", merge_out, "output file (default stdout)");

    auto* abridge_cmd = app.add_subcommand("abridge", "abridge a merged relation document");
    std::string ab_merged, ab_out;
    abridge_cmd->add_option("--merged", ab_merged, "merged relation document")->required();
    abridge_cmd->add_option("--out", ab_out, "output file (default stdout)");

    auto* emerge_cmd = app.add_subcommand("emerge", "compute the emerging skycube");
    EmergeInputs emerge_in;
    std::string emerge_out, borders, per_block_measure;
    std::vector<std::string> t1_flags, t2_flags;
    bool closed = false, closed_l = false, per_block = false;
    emerge_cmd->add_option("--input", emerge_in.input, "relation CSV with split property");
    emerge_cmd->add_option("--schema", emerge_in.schema, "schema JSON");
    emerge_cmd->add_option("--merged", emerge_in.merged, "merged relation document");
    emerge_cmd->add_option("--m1", emerge_in.m1, "side-1 materialization document");
    emerge_cmd->add_option("--m2", emerge_in.m2, "side-2 materialization document");
    emerge_cmd->add_option("--r1", emerge_in.r1, "side-1 relation CSV");
    emerge_cmd->add_option("--r2", emerge_in.r2, "side-2 relation CSV");
    emerge_cmd->add_option("--t1", t1_flags, "side-1 threshold, MEASURE=VALUE");
    emerge_cmd->add_option("--t2", t2_flags, "side-2 threshold, MEASURE=VALUE");
    emerge_cmd->add_option("--borders", borders, "emit a border instead (supported: l)");
    emerge_cmd->add_flag("--closed", closed, "emit the closed emerging cells");
    emerge_cmd->add_flag("--closed-l", closed_l, "emit the closed cells plus the L border");
    emerge_cmd->add_flag("--per-block", per_block, "single-measure grouping per origin skycuboid");
    emerge_cmd->add_option("--measure", per_block_measure, "measure for --per-block");
    emerge_cmd->add_option("--out", emerge_out, "output file (default stdout)");

    auto* bench_cmd = app.add_subcommand("bench", "synthetic-data experiments");
    bench_cmd->require_subcommand(1);
    auto* bench_size_cmd = bench_cmd->add_subcommand("size", "stored-tuple counts");
    auto* bench_query_cmd = bench_cmd->add_subcommand("query", "query response time");
    std::size_t bn = 1000, bd = 8, bseeds = 1, bqueries = 100;
    std::string bk = "100";
    std::string bench_timings;
    for (auto* cmd : {bench_size_cmd, bench_query_cmd}) {
        cmd->add_option("--n", bn, "row count");
        cmd->add_option("--d", bd, "criterion count");
        cmd->add_option("--k", bk, "comma-separated criterion cardinalities");
        cmd->add_option("--seeds", bseeds, "number of seeds per point");
        cmd->add_option("--timings", bench_timings, "write latency rows to this file");
    }
    bench_query_cmd->add_option("--queries", bqueries, "queries per point");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    if (*fixtures_cmd) {
        if (fixture_case != "pokemon")
            throw sky::UsageError("unknown fixture case '" + fixture_case + "'");
        const auto written = sky::fixtures::write_fixture_files(fixture_out);
        for (const auto& name : written) std::cout << name << '\n';
        return 0;
    }

    if (*skycube_cmd) {
        const sky::Relation r = load_input(sc_input, sc_schema, sc_side);
        const sky::Skycube cube = sky::full_skycube(r, sc_cap, threads);
        std::ostringstream out;
        sky::write_skycube(out, r, cube);
        OutputTarget{sc_out}.write(out.str());
        return 0;
    }

    if (*mat_cmd) {
        const sky::Relation r = load_input(mat_input, mat_schema, mat_side);
        const auto m = sky::build_skyline_lattice(r, 20, threads);
        std::ostringstream out;
        sky::write_materialization(out, m);
        OutputTarget{mat_out}.write(out.str());
        return 0;
    }

    if (*query_cmd) {
        const auto m = sky::read_materialization_file(q_mat);
        const sky::Schema schema({}, m.criteria());
        const sky::CriterionSet subspace = schema.parse_subspace(q_subspace);
        const sky::Skycuboid result = sky::query_skyline_stored(m, subspace);
        OutputTarget{q_out}.write(render_query_result(m, subspace, result));
        return 0;
    }

    if (*merge_cmd) {
        const sky::MergedRelation merged = merge_in.resolve(threads);
        std::ostringstream out;
        sky::write_merged(out, merged);
        OutputTarget{merge_out}.write(out.str());
        return 0;
    }

    if (*abridge_cmd) {
        const sky::MergedRelation merged = sky::read_merged_file(ab_merged);
        std::ostringstream out;
        sky::write_merged(out, sky::abridge(merged));
        OutputTarget{ab_out}.write(out.str());
        return 0;
    }

    if (*emerge_cmd) {
        const sky::MergedRelation merged = emerge_in.resolve(threads);

        if (per_block) {
            if (per_block_measure.empty())
                throw sky::UsageError("--per-block needs --measure");
            const auto t1 = parse_threshold_flags(t1_flags, "--t1");
            const auto t2 = parse_threshold_flags(t2_flags, "--t2");
            if (!t1.count(per_block_measure) || !t2.count(per_block_measure))
                throw sky::UsageError("--per-block needs --t1 and --t2 for the chosen measure");
            const auto blocks = sky::per_block_measured_emerging(
                merged, per_block_measure, t1.at(per_block_measure), t2.at(per_block_measure));
            std::ostringstream out;
            sky::write_measured_blocks(out, merged, per_block_measure,
                                       t1.at(per_block_measure), t2.at(per_block_measure), blocks);
            OutputTarget{emerge_out}.write(out.str());
            return 0;
        }

        const sky::MergedRelation abridged = sky::abridge(merged);
        sky::ThresholdSpec thresholds;
        const auto t1 = parse_threshold_flags(t1_flags, "--t1");
        const auto t2 = parse_threshold_flags(t2_flags, "--t2");
        for (const auto& measure : abridged.measures) {
            if (!t1.count(measure) || !t2.count(measure))
                throw sky::ConfigError("missing --t1/--t2 for measure '" + measure + "'");
            thresholds.per_measure[measure] = {t1.at(measure), t2.at(measure)};
        }

        const auto cells = sky::emerging_skycube(abridged, thresholds);
        sky::EmergingDocument doc;
        doc.dimensions = abridged.dimensions;
        doc.measures = abridged.measures;
        doc.thresholds = thresholds;
        if (!borders.empty()) {
            if (borders != "l") throw sky::UsageError("only the L border is supported");
            doc.variant = "l-border";
            doc.cells = sky::l_border(cells);
        } else if (closed) {
            doc.variant = "closed";
            doc.cells = sky::closed_emerging(abridged, cells);
        } else if (closed_l) {
            doc.variant = "closed-l";
            doc.cells = sky::closed_emerging_l(abridged, cells);
        } else {
            doc.variant = "skycube";
            doc.cells = cells;
        }
        std::ostringstream out;
        sky::write_emerging(out, doc);
        OutputTarget{emerge_out}.write(out.str());
        return 0;
    }

    if (*bench_size_cmd || *bench_query_cmd) {
        const auto ks = parse_k_list(bk);
        std::ostringstream data;
        std::ostringstream timing;
        timing << "mode,n,d,k,seed,queries,build_full_ms,build_materialized_ms,"
                  "mean_baseline_ms,mean_materialized_ms,median_baseline_ms,"
                  "median_materialized_ms\n";
        if (*bench_size_cmd) {
            data << "mode,n,d,k,seed,full_tuples,materialized_tuples,concepts\n";
            std::vector<sky::GeneratorConfig> sweep;
            for (std::size_t k : ks)
                for (std::size_t s = 0; s < bseeds; ++s)
                    sweep.push_back({bn, bd, k, s + 1});
            const auto report = sky::bench_size(sweep);
            for (const auto& p : report.points) {
                data << "size," << p.n << ',' << p.d << ',' << p.k << ',' << p.seed << ','
                     << p.full_tuple_count << ',' << p.materialized_tuple_count << ','
                     << p.concept_count << '\n';
                timing << "size," << p.n << ',' << p.d << ',' << p.k << ',' << p.seed << ",0,"
                       << sky::format_number(p.build_full_ms) << ','
                       << sky::format_number(p.build_materialized_ms) << ",,,,\n";
            }
        } else {
            data << "mode,n,d,k,seed,queries,materialized_tuples,concepts,mean_candidates,"
                    "mismatches\n";
            for (std::size_t k : ks) {
                for (std::size_t s = 0; s < bseeds; ++s) {
                    const sky::GeneratorConfig cfg{bn, bd, k, s + 1};
                    const auto report = sky::bench_query(cfg, bqueries, cfg.seed * 1000 + 7);
                    const auto& p = report.points.front();
                    data << "query," << p.n << ',' << p.d << ',' << p.k << ',' << p.seed << ','
                         << p.query_count << ',' << p.materialized_tuple_count << ','
                         << p.concept_count << ',' << sky::format_number(p.mean_candidates)
                         << ",0\n";
                    timing << "query," << p.n << ',' << p.d << ',' << p.k << ',' << p.seed << ','
                           << p.query_count << ",," << sky::format_number(p.build_materialized_ms)
                           << ',' << sky::format_number(p.mean_baseline_ms) << ','
                           << sky::format_number(p.mean_materialized_ms) << ','
                           << sky::format_number(p.median_baseline_ms) << ','
                           << sky::format_number(p.median_materialized_ms) << '\n';
                }
            }
        }
        std::cout << data.str();
        if (!bench_timings.empty()) {
            std::ofstream out(bench_timings, std::ios::binary);
            if (!out) throw sky::IngestError("cannot write '" + bench_timings + "'");
            out << timing.str();
        } else {
            std::cerr << timing.str();
        }
        return 0;
    }

    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    try {
        return run(argc, argv);
    } catch (const sky::UsageError& e) {
        std::cerr << "usage error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
}
