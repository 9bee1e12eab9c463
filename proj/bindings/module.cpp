#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "skylattice/bench.hpp"
#include "skylattice/emerging.hpp"
#include "skylattice/fixtures.hpp"
#include "skylattice/lattice.hpp"
#include "skylattice/relation.hpp"
#include "skylattice/skyline.hpp"
#include "skylattice/text_io.hpp"

namespace py = pybind11;
using namespace sky;

namespace {

CriterionSet parse(const Relation& r, const std::string& label) {
    return r.schema().parse_subspace(label);
}

py::dict cell_to_dict(const MergedRelation& mr, const EmergingCell& cell) {
    py::dict out;
    py::list dims;
    for (const auto& d : cell.dims)
        dims.append(d ? py::object(py::str(*d)) : py::object(py::none()));
    out["dims"] = dims;
    out["direction"] = cell.direction == Trend::Decline ? "decline" : "rise";
    py::dict measures;
    for (std::size_t j = 0; j < mr.measures.size(); ++j) {
        py::dict m;
        m["side1"] = cell.agg1[j];
        m["side2"] = cell.agg2[j];
        m["rate"] = cell.rates[j];
        measures[py::str(mr.measures[j])] = m;
    }
    out["measures"] = measures;
    return out;
}

ThresholdSpec thresholds_from_dict(const py::dict& d) {
    ThresholdSpec spec;
    for (const auto& item : d) {
        const auto pair = item.second.cast<std::pair<double, double>>();
        spec.per_measure[item.first.cast<std::string>()] = {pair.first, pair.second};
    }
    return spec;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "skyline, skycube and emerging-skycube engine";

    py::register_exception<ConfigError>(m, "ConfigError");
    py::register_exception<IngestError>(m, "IngestError");
    py::register_exception<DomainError>(m, "DomainError");
    py::register_exception<LookupError>(m, "SubspaceLookupError");
    py::register_exception<ResourceError>(m, "ResourceError");
    py::register_exception<UsageError>(m, "UsageError");

    py::class_<Relation>(m, "Relation")
        .def_property_readonly("row_count", &Relation::size)
        .def_property_readonly("dimensions",
                               [](const Relation& r) { return r.schema().dimensions(); })
        .def_property_readonly("criteria",
                               [](const Relation& r) {
                                   std::vector<std::string> names;
                                   for (const auto& c : r.schema().criteria())
                                       names.push_back(c.name);
                                   return names;
                               })
        .def("dims",
             [](const Relation& r, RowId id) { return r.row(id).dims; },
             py::arg("row_id"))
        .def("values",
             [](const Relation& r, RowId id) { return r.row(id).criteria; },
             py::arg("row_id"))
        .def("project",
             [](const Relation& r, RowId id, const std::string& subspace) {
                 return project(r, id, parse(r, subspace));
             },
             py::arg("row_id"), py::arg("subspace"));

    m.def(
        "load_relation",
        [](const std::string& csv_text, const std::string& schema_json) {
            std::istringstream in(csv_text);
            return load_relation(in, Schema::from_json(schema_json));
        },
        py::arg("csv_text"), py::arg("schema_json"),
        "Parse a CSV string against a JSON schema description.");

    m.def(
        "split",
        [](const Relation& r) {
            auto result = split_by_property(r);
            return py::make_tuple(std::move(result.side1), std::move(result.side2),
                                  result.dropped);
        },
        py::arg("relation"), "Split on the schema's decision property: (side1, side2, dropped).");

    m.def(
        "skyline",
        [](const Relation& r, const std::string& subspace) {
            return skyline_sfs(r, parse(r, subspace)).members;
        },
        py::arg("relation"), py::arg("subspace"),
        "Skyline row ids on a subspace, by the sort-filter pass.");

    m.def(
        "skyline_bruteforce",
        [](const Relation& r, const std::string& subspace) {
            return skyline_bruteforce(r, parse(r, subspace)).members;
        },
        py::arg("relation"), py::arg("subspace"));

    m.def(
        "full_skycube",
        [](const Relation& r) {
            const Skycube cube = full_skycube(r);
            py::dict out;
            for (const auto& cuboid : cube.all())
                out[py::str(r.schema().subspace_label(cuboid.subspace))] = cuboid.members;
            return out;
        },
        py::arg("relation"), "Every subspace label mapped to its skyline members.");

    py::class_<MaterializedSkycube>(m, "Materialization")
        .def_property_readonly("concept_count",
                               [](const MaterializedSkycube& m_) { return m_.concepts().size(); })
        .def_property_readonly("stored_tuple_count", &MaterializedSkycube::stored_tuple_count)
        .def("concepts",
             [](const MaterializedSkycube& m_) {
                 const Schema schema({}, m_.criteria());
                 py::list out;
                 for (const auto& node : m_.concepts())
                     out.append(py::make_tuple(schema.subspace_label(node.subspace),
                                               node.skyline_classes));
                 return out;
             })
        .def("closure",
             [](const MaterializedSkycube& m_, const std::string& subspace) {
                 const Schema schema({}, m_.criteria());
                 return schema.subspace_label(m_.closure_of(schema.parse_subspace(subspace)));
             },
             py::arg("subspace"))
        .def("query",
             [](const MaterializedSkycube& m_, const std::string& subspace) {
                 const Schema schema({}, m_.criteria());
                 return query_skyline_stored(m_, schema.parse_subspace(subspace)).members;
             },
             py::arg("subspace"))
        .def("to_text", [](const MaterializedSkycube& m_) {
            std::ostringstream out;
            write_materialization(out, m_);
            return out.str();
        });

    m.def("materialize", [](const Relation& r) { return build_skyline_lattice(r); },
          py::arg("relation"),
          "Build the skyline concept lattice (the lossless partial skycube).");
    m.def("materialization_from_text", [](const std::string& text) {
        std::istringstream in(text);
        return read_materialization(in);
    });

    py::class_<MergedRelation>(m, "MergedRelation")
        .def_property_readonly("row_count",
                               [](const MergedRelation& mr) { return mr.rows.size(); })
        .def_property_readonly("measures",
                               [](const MergedRelation& mr) { return mr.measures; })
        .def_property_readonly(
            "invariant_measures",
            [](const MergedRelation& mr) { return mr.invariant_measures; })
        .def("to_text", [](const MergedRelation& mr) {
            std::ostringstream out;
            write_merged(out, mr);
            return out.str();
        });

    m.def("merge",
          [](const MaterializedSkycube& m1, const MaterializedSkycube& m2, const Relation& r1,
             const Relation& r2) { return merge_materializations(m1, m2, r1, r2); },
          py::arg("m1"), py::arg("m2"), py::arg("r1"), py::arg("r2"));
    m.def("abridge", [](const MergedRelation& mr) { return abridge(mr); }, py::arg("merged"));
    m.def("merged_from_text", [](const std::string& text) {
        std::istringstream in(text);
        return read_merged(in);
    });
    m.def("detect_invariant_measures",
          [](const Relation& r1, const Relation& r2) {
              return detect_invariant_measures(r1, r2);
          },
          py::arg("r1"), py::arg("r2"));

    m.def(
        "emerging",
        [](const MergedRelation& mr, const py::dict& thresholds, const std::string& variant) {
            const ThresholdSpec spec = thresholds_from_dict(thresholds);
            std::vector<EmergingCell> cells = emerging_skycube(mr, spec);
            if (variant == "l-border")
                cells = l_border(cells);
            else if (variant == "closed")
                cells = closed_emerging(mr, cells);
            else if (variant == "closed-l")
                cells = closed_emerging_l(mr, cells);
            else if (variant != "skycube")
                throw UsageError("unknown variant '" + variant + "'");
            py::list out;
            for (const auto& cell : cells) out.append(cell_to_dict(mr, cell));
            return out;
        },
        py::arg("merged"), py::arg("thresholds"), py::arg("variant") = "skycube",
        "Emerging cells over an (abridged) merged relation; thresholds map "
        "measure name to (t1, t2).");

    m.def(
        "generate_synthetic",
        [](std::size_t n, std::size_t d, std::size_t k, std::uint64_t seed) {
            return generate_synthetic({n, d, k, seed});
        },
        py::arg("n"), py::arg("d"), py::arg("k"), py::arg("seed"));
    m.def(
        "sample_query",
        [](std::size_t d, std::uint64_t seed) { return sample_query(d, seed).indices(); },
        py::arg("d"), py::arg("seed"));

    m.def("pokemon_csv", &fixtures::pokemon_csv);
    m.def("pokemon_schema_json", &fixtures::pokemon_schema_json);
}
