#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "twistbench/cli.hpp"
#include "twistbench/corpus.hpp"
#include "twistbench/io.hpp"

namespace py = pybind11;
using namespace twistbench;

namespace {

// GroupoidPtr points to const, which pybind11 holders do not support
struct Groupoid {
    GroupoidPtr ptr;
};

Limits limits_with(std::optional<std::size_t> cap)
{
    auto l = default_limits();
    if (cap) l.nerve_cap = *cap;
    return l;
}

std::vector<std::pair<std::string, std::string>> violations(const ValidationReport& r)
{
    std::vector<std::pair<std::string, std::string>> out;
    for (const auto& v : r.violations()) out.push_back({v.rule, v.witness});
    return out;
}

GroupTable group_table(const std::vector<std::string>& elements, const std::vector<std::vector<int>>& table)
{
    return GroupTable(elements, table);
}

py::dict class_dict(const ExtensionClass& k)
{
    py::dict d;
    d["c"] = k.c.coordinates;
    d["lambda"] = k.lambda.coordinates;
    return d;
}

}  // namespace

PYBIND11_MODULE(_twistbench, m)
{
    m.doc() = "Graded equivariant twistings of finite groupoids";

    auto base = py::register_exception<Error>(m, "TwistbenchError");
    py::register_exception<ParseError>(m, "ParseError", base);
    py::register_exception<InvalidError>(m, "InvalidError", base);
    py::register_exception<UnsupportedError>(m, "UnsupportedError", base);
    py::register_exception<CapExceededError>(m, "CapExceededError", base);

    py::class_<Groupoid>(m, "Groupoid")
        .def_property_readonly("num_objects", [](const Groupoid& g) { return g.ptr->num_objects(); })
        .def_property_readonly("num_morphisms", [](const Groupoid& g) { return g.ptr->num_morphisms(); })
        .def_property_readonly("object_ids", [](const Groupoid& g) { return g.ptr->base().object_ids(); })
        .def_property_readonly("morphism_ids", [](const Groupoid& g) { return g.ptr->base().morphism_ids(); })
        .def_property_readonly("phi", [](const Groupoid& g) { return g.ptr->phi_values(); })
        .def("is_ungraded", [](const Groupoid& g) { return g.ptr->is_ungraded(); })
        .def("nerve_size", [](const Groupoid& g, int k) { return nerve_size(*g.ptr, k); }, py::arg("level"))
        .def("to_json", [](const Groupoid& g) { return io::groupoid_to_json(*g.ptr).dump(); })
        .def("__repr__", [](const Groupoid& g) {
            return "<Groupoid with " + std::to_string(g.ptr->num_objects()) + " objects, " +
                   std::to_string(g.ptr->num_morphisms()) + " morphisms>";
        });

    m.def("point", [] { return Groupoid{share(point_groupoid())}; });
    m.def("pair", [](const std::vector<std::string>& objects) { return Groupoid{share(pair_groupoid(objects))}; },
          py::arg("objects"));
    m.def("discrete", [](const std::vector<std::string>& objects) { return Groupoid{share(discrete_groupoid(objects))}; },
          py::arg("objects"));
    m.def(
        "delooping",
        [](const std::vector<std::string>& elements, const std::vector<std::vector<int>>& table,
           std::optional<std::vector<int>> epsilon) {
            auto G = group_table(elements, table);
            return Groupoid{share(epsilon ? delooping(G, *epsilon) : delooping(G))};
        },
        py::arg("elements"), py::arg("table"), py::arg("epsilon") = py::none());
    m.def(
        "conjugation",
        [](const std::vector<std::string>& elements, const std::vector<std::vector<int>>& table) {
            return Groupoid{share(corpus::conjugation_groupoid(group_table(elements, table)))};
        },
        py::arg("elements"), py::arg("table"));
    m.def("corpus", [] {
        std::vector<std::pair<std::string, Groupoid>> out;
        for (auto& ng : corpus::standard_corpus()) out.push_back({ng.name, Groupoid{ng.groupoid}});
        return out;
    });
    m.def(
        "groupoid_from_json",
        [](const std::string& text) {
            auto d = io::parse_document(text);
            return Groupoid{io::parse_groupoid(d.json, d.dir)};
        },
        py::arg("text"));

    py::enum_<Involution>(m, "Involution").value("trivial", Involution::trivial).value("negation", Involution::negation);

    py::class_<Cochain>(m, "Cochain")
        .def_property_readonly("level", &Cochain::level)
        .def_property_readonly("modulus", [](const Cochain& c) { return c.coefficients().modulus; })
        .def_property_readonly("values", &Cochain::values)
        .def("is_zero", &Cochain::is_zero)
        .def("__eq__", &Cochain::operator==);

    py::class_<CohomologyGroup>(m, "CohomologyGroup")
        .def_property_readonly("degree", &CohomologyGroup::degree)
        .def_property_readonly("invariant_factors", [](const CohomologyGroup& h) { return h.group().invariant_factors; })
        .def_property_readonly("order", [](const CohomologyGroup& h) { return py::int_(py::str(h.group().order().str())); })
        .def("enumerate", &CohomologyGroup::enumerate, py::arg("max_count") = 4096)
        .def("representative", &CohomologyGroup::representative, py::arg("coordinates"))
        .def("coordinates", &CohomologyGroup::coordinates, py::arg("cocycle"))
        .def("is_cocycle", &CohomologyGroup::is_cocycle, py::arg("cochain"))
        .def("__str__", [](const CohomologyGroup& h) { return h.group().to_string(); })
        .def("__repr__", [](const CohomologyGroup& h) { return "<CohomologyGroup " + h.group().to_string() + ">"; });

    m.def(
        "cohomology",
        [](const Groupoid& g, int degree, std::int64_t modulus, Involution inv, std::optional<std::size_t> cap) {
            return cohomology_group(g.ptr, degree, {modulus, inv}, limits_with(cap));
        },
        py::arg("groupoid"), py::arg("degree"), py::arg("modulus"), py::arg("involution") = Involution::trivial,
        py::arg("cap") = py::none());
    m.def(
        "circle_lift",
        [](const Groupoid& g, int degree, Involution inv) { return circle_lift(*g.ptr, degree, inv); },
        py::arg("groupoid"), py::arg("degree"), py::arg("involution") = Involution::negation);

    py::class_<TwistedExtension>(m, "Extension")
        .def(py::init([](const Groupoid& g, std::int64_t modulus, std::vector<std::int64_t> c,
                         std::vector<std::int64_t> lambda) {
                 return TwistedExtension(Cochain(g.ptr, 1, grading_coefficients(), std::move(c)),
                                         Cochain(g.ptr, 2, phase_coefficients(modulus), std::move(lambda)));
             }),
             py::arg("groupoid"), py::arg("modulus"), py::arg("c"), py::arg("lambda_"))
        .def_static("trivial", [](const Groupoid& g, std::int64_t modulus) { return TwistedExtension::trivial(g.ptr, modulus); },
                    py::arg("groupoid"), py::arg("modulus"))
        .def_property_readonly("groupoid", [](const TwistedExtension& e) { return Groupoid{e.groupoid()}; })
        .def_property_readonly("modulus", &TwistedExtension::modulus)
        .def_property_readonly("c", &TwistedExtension::c)
        .def_property_readonly("lambda_", &TwistedExtension::lambda)
        .def("validate", [](const TwistedExtension& e) { return violations(validate_extension(e)); })
        .def("classify", [](const TwistedExtension& e) { return class_dict(extension_class(e)); })
        .def("to_json", [](const TwistedExtension& e) { return io::extension_to_json(e).dump(); })
        .def("__eq__", &TwistedExtension::operator==);

    m.def(
        "extension_from_json",
        [](const std::string& text) {
            auto d = io::parse_document(text);
            return io::parse_extension(d.json, d.dir);
        },
        py::arg("text"));
    m.def(
        "find_refinement",
        [](const TwistedExtension& e1, const TwistedExtension& e2) -> std::optional<std::vector<std::int64_t>> {
            auto eta = find_refinement(e1, e2);
            if (!eta) return std::nullopt;
            return eta->values();
        },
        py::arg("e1"), py::arg("e2"));
    m.def(
        "line_morphism_exists",
        [](const TwistedExtension& e1, const TwistedExtension& e2) { return find_line_morphism(e1, e2).has_value(); },
        py::arg("e1"), py::arg("e2"));
    m.def(
        "transgress",
        [](const std::vector<std::string>& elements, const std::vector<std::vector<int>>& table, std::int64_t modulus,
           std::vector<std::int64_t> omega) {
            return transgress(MultiplicativeTwisting{group_table(elements, table), modulus, std::move(omega)});
        },
        py::arg("elements"), py::arg("table"), py::arg("modulus"), py::arg("omega"));
    m.def(
        "count_simples",
        [](const TwistedExtension& e, double tolerance) {
            auto s = count_simples(e, tolerance);
            py::dict d;
            d["count"] = s.count;
            d["rank"] = s.rank;
            d["smallest_kept"] = s.smallest_kept;
            d["largest_dropped"] = s.largest_dropped;
            d["tolerance"] = s.tolerance;
            return d;
        },
        py::arg("extension"), py::arg("tolerance") = 1e-9);

    py::class_<TwistedMorphismData>(m, "Rep")
        .def_property_readonly("source", &TwistedMorphismData::source)
        .def_property_readonly("total_dimension", &TwistedMorphismData::total_dimension)
        .def("validate", [](const TwistedMorphismData& r) { return violations(validate_rep(r)); })
        .def("is_irreducible", [](const TwistedMorphismData& r, std::uint64_t seed) { return is_irreducible(r, seed); },
             py::arg("seed") = 1)
        .def("endo_type", [](const TwistedMorphismData& r, std::uint64_t seed) { return to_string(endo_type(r, seed)); },
             py::arg("seed") = 1)
        .def("to_json", [](const TwistedMorphismData& r) { return io::rep_to_json(r).dump(); });

    m.def(
        "load_rep",
        [](const std::string& path) {
            auto d = io::read_document(path);
            return io::parse_rep(d.json, d.dir);
        },
        py::arg("path"));
    m.def(
        "load_extension",
        [](const std::string& path) {
            auto d = io::read_document(path);
            return io::parse_extension(d.json, d.dir);
        },
        py::arg("path"));
    m.def(
        "load_groupoid",
        [](const std::string& path) {
            auto d = io::read_document(path);
            return Groupoid{io::parse_groupoid(d.json, d.dir)};
        },
        py::arg("path"));
    m.def(
        "validate_file",
        [](const std::string& path) {
            auto d = io::read_document(path);
            return py::make_tuple(io::to_string(d.kind), violations(io::validate_document(d)));
        },
        py::arg("path"));
    m.def(
        "run_cli",
        [](const std::vector<std::string>& args) {
            std::ostringstream out, err;
            int code = cli::run(args, out, err);
            return py::make_tuple(code, out.str(), err.str());
        },
        py::arg("args"));
}
