#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "subindep/error.hpp"
#include "subindep/independence.hpp"
#include "subindep/io.hpp"
#include "subindep/suite.hpp"
#include "subindep/zoo.hpp"

namespace py = pybind11;
using namespace subindep;

namespace {

// Reports cross the boundary as (verdict, text, json string); the Python side parses the JSON.
using ReportTuple = std::tuple<bool, std::string, std::string>;

ReportTuple as_tuple(bool verdict, const io::Report& r) { return {verdict, r.text, r.json.dump()}; }

ReportTuple decide_sub(const FiniteStructure& s, std::vector<Element> a, std::vector<Element> b,
                       const std::string& homs, const std::string& mode) {
    if (homs != "all" && homs != "auto") throw InputError("homs must be \"all\" or \"auto\"");
    if (mode != "weak" && mode != "strong") throw InputError("mode must be \"weak\" or \"strong\"");
    const SubUniverse sa(s, std::move(a));
    const SubUniverse sb(s, std::move(b));
    const HomMode m = mode == "strong" ? HomMode::strong : HomMode::weak;
    const auto verdict = decide_subalgebra_independence(
        s, sa, sb, homs == "auto" ? HomClass::automorphisms_only : HomClass::all_endomorphisms, m);
    return as_tuple(verdict.independent, io::subalgebra_report(JointExtender(s, sa, sb, m), verdict));
}

ReportTuple decide_cong(const FiniteStructure& s, std::vector<Element> a, std::vector<Element> b,
                        std::size_t max_size, bool shortcut) {
    const SubUniverse sa(s, std::move(a));
    const SubUniverse sb(s, std::move(b));
    CongruenceOptions options;
    options.max_size = max_size;
    options.intersection_shortcut = shortcut;
    const auto verdict = decide_congruence_independence(s, sa, sb, options);
    return as_tuple(verdict.independent, io::congruence_report(sa, sb, join(s, sa, sb).sub, verdict));
}

} // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Finite structures, joint extensions and independence deciders";

    auto input_error = py::register_exception<InputError>(m, "InputError", PyExc_ValueError);
    py::register_exception<ResourceError>(m, "ResourceError", PyExc_RuntimeError);
    py::register_exception<UnsupportedError>(m, "UnsupportedError", PyExc_NotImplementedError);
    (void)input_error;

    py::class_<FiniteStructure>(m, "Structure")
        .def_static(
            "from_json", [](const std::string& text) { return io::parse(text).structure; }, py::arg("text"))
        .def(
            "to_json", [](const FiniteStructure& s, const std::string& name) { return io::serialize(s, name); },
            py::arg("name") = "")
        .def_property_readonly("size", &FiniteStructure::size)
        .def_property_readonly("labels", &FiniteStructure::labels)
        .def_property_readonly("op_names",
                               [](const FiniteStructure& s) {
                                   std::vector<std::string> out;
                                   for (const auto& op : s.signature().ops()) out.push_back(op.name);
                                   return out;
                               })
        .def("find_label", &FiniteStructure::find_label, py::arg("label"))
        .def("__eq__", [](const FiniteStructure& x, const FiniteStructure& y) { return x == y; })
        .def("__len__", &FiniteStructure::size)
        .def("__repr__", [](const FiniteStructure& s) { return "<Structure of size " + std::to_string(s.size()) + ">"; });

    m.def(
        "build",
        [](const std::string& family, const std::vector<long long>& params, const std::vector<ElementPair>& edges) {
            auto built = zoo::build(family, params, edges);
            return std::make_pair(std::move(built.structure), zoo::to_string(built.tag));
        },
        py::arg("family"), py::arg("params") = std::vector<long long>{},
        py::arg("edges") = std::vector<ElementPair>{});
    m.def("families", &zoo::family_names);

    m.def("is_subuniverse",
          [](const FiniteStructure& s, const std::vector<Element>& subset) { return is_subuniverse(s, subset); },
          py::arg("structure"), py::arg("subset"));
    m.def(
        "close", [](const FiniteStructure& s, const std::vector<Element>& seed) { return close(s, seed).sub.members(); },
        py::arg("structure"), py::arg("seed"));
    m.def(
        "all_congruences",
        [](const FiniteStructure& s, std::size_t max_size) {
            std::vector<std::vector<std::vector<Element>>> out;
            for (const auto& c : all_congruences(s, max_size)) out.push_back(c.blocks());
            return out;
        },
        py::arg("structure"), py::arg("max_size") = kDefaultCongruenceBound);
    m.def(
        "endomorphism_count",
        [](const FiniteStructure& s, const std::string& mode) {
            return endomorphisms(s, mode == "strong" ? HomMode::strong : HomMode::weak).size();
        },
        py::arg("structure"), py::arg("mode") = "weak");
    m.def(
        "find_isomorphism",
        [](const FiniteStructure& x, const FiniteStructure& y) -> std::optional<std::vector<Element>> {
            if (auto h = find_isomorphism(x, y)) return h->map;
            return std::nullopt;
        },
        py::arg("x"), py::arg("y"));

    m.def("decide_sub", &decide_sub, py::arg("structure"), py::arg("a"), py::arg("b"), py::arg("homs") = "all",
          py::arg("mode") = "weak");
    m.def("decide_cong", &decide_cong, py::arg("structure"), py::arg("a"), py::arg("b"),
          py::arg("max_size") = kDefaultCongruenceBound, py::arg("shortcut") = true);

    m.def(
        "coproduct",
        [](const FiniteStructure& x, const FiniteStructure& y, const std::string& category) {
            auto c = zoo::coproduct(zoo::parse_category(category), x, y);
            return std::make_tuple(std::move(c.structure), c.embed_left.map, c.embed_right.map);
        },
        py::arg("x"), py::arg("y"), py::arg("category"));

    m.def(
        "run_criterion",
        [](int id, std::uint64_t seed) {
            suite::SuiteOptions options;
            options.seed = seed;
            const auto r = suite::run_criterion(id, options);
            py::dict out;
            out["id"] = r.id;
            out["title"] = r.title;
            out["passed"] = r.passed;
            out["cases"] = r.cases;
            out["violations"] = r.violations;
            out["detail"] = r.detail;
            return out;
        },
        py::arg("id"), py::arg("seed") = zoo::kDefaultSeed);
    m.attr("CRITERION_COUNT") = suite::kCriterionCount;
}
