#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "teamcheck/clone.hpp"
#include "teamcheck/formula.hpp"
#include "teamcheck/kripke.hpp"
#include "teamcheck/reductions.hpp"
#include "teamcheck/semantics.hpp"

namespace py = pybind11;
using namespace teamcheck;

namespace {

GeneratedInstance generate_dispatch(const std::string& kind, const std::string& input_text,
                                    const std::string& mode) {
    switch (reduction_kind_from_string(kind)) {
    case ReductionKind::Reach: return gen_reach(parse_edge_list(input_text));
    case ReductionKind::Sat: return gen_sat(parse_dimacs(input_text), sat_mode_from_string(mode));
    case ReductionKind::Qbf: return gen_qbf(parse_qdimacs(input_text));
    }
    throw std::logic_error("unreachable");
}

std::vector<BooleanFunction> builtins_by_name(const std::vector<std::string>& names) {
    std::vector<BooleanFunction> base;
    for (const std::string& name : names) {
        const BooleanFunction* f = FunctionRegistry::builtins().find(name);
        if (!f) throw std::invalid_argument("unknown builtin function: '" + name + "'");
        base.push_back(*f);
    }
    return base;
}

} // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "team-semantics model checker for modal dependence logic";

    py::register_exception<ParseError>(m, "ParseError");
    py::register_exception<ModelError>(m, "ModelError");
    py::register_exception<FormatError>(m, "FormatError");
    py::register_exception<ResourceLimitError>(m, "ResourceLimitError");

    py::class_<Formula>(m, "Formula")
        .def_static(
            "parse", [](const std::string& text) { return parse_formula(text); },
            py::arg("text"))
        .def("__str__", [](const Formula& f) { return render_formula(f); })
        .def("__repr__",
             [](const Formula& f) { return "Formula(\"" + render_formula(f) + "\")"; })
        .def("__eq__", [](const Formula& a, const Formula& b) { return a == b; })
        .def_property_readonly("depth", &Formula::depth)
        .def_property_readonly("node_count", &Formula::node_count)
        .def_property_readonly("propositions", &Formula::propositions);

    py::class_<KripkeModel>(m, "KripkeModel")
        .def_static(
            "load", [](const std::string& json_text) { return load_model(json_text); },
            py::arg("json_text"))
        .def("save", [](const KripkeModel& model) { return save_model(model); })
        .def_property_readonly("worlds", &KripkeModel::worlds)
        .def_property_readonly("size", &KripkeModel::size)
        .def("serial", &KripkeModel::serial)
        .def("__eq__", [](const KripkeModel& a, const KripkeModel& b) { return a == b; })
        .def("__len__", &KripkeModel::size);

    m.def(
        "check",
        [](const KripkeModel& model, const std::string& team_text,
           const std::string& formula_text, const std::string& engine) {
            Team team = parse_team(model, team_text);
            Formula phi = parse_formula(formula_text);
            EvalResult result = engine == "reference" ? check_reference(model, team, phi)
                                                      : check(model, team, phi);
            py::dict stats;
            for (const auto& [key, value] : result.stats.as_map())
                stats[py::str(key)] = value;
            return py::make_tuple(result.value, stats);
        },
        py::arg("model"), py::arg("team"), py::arg("formula"), py::arg("engine") = "auto",
        "Evaluate a formula on a team; returns (value, stats).");

    m.def(
        "classify",
        [](const std::string& formula_text) {
            FragmentSignature sig = fragment_signature(parse_formula(formula_text));
            py::dict d;
            d["clone"] = std::string(to_string(sig.clone));
            d["uses_diamond"] = sig.uses_diamond;
            d["uses_box"] = sig.uses_box;
            d["uses_dep"] = sig.uses_dep;
            d["complexity"] = fragment_complexity(sig);
            return d;
        },
        py::arg("formula"));

    m.def(
        "classify_functions",
        [](const std::vector<std::string>& builtin_names) {
            return std::string(to_string(classify_clone(builtins_by_name(builtin_names))));
        },
        py::arg("builtins"));

    m.def(
        "closure_size",
        [](const std::vector<std::string>& builtin_names, unsigned max_arity) {
            return closure_oracle(builtins_by_name(builtin_names), max_arity).size();
        },
        py::arg("builtins"), py::arg("max_arity") = 2);

    m.def("make_random_model", &make_random_model, py::arg("seed"), py::arg("world_count"),
          py::arg("edge_prob"), py::arg("props"), py::arg("force_serial") = false);

    m.def(
        "generate",
        [](const std::string& kind, const std::string& input_text, const std::string& mode) {
            GeneratedInstance instance = generate_dispatch(kind, input_text, mode);
            py::dict d;
            d["model_json"] = save_model(instance.model);
            d["team"] = format_team(instance.model, instance.team);
            d["formula"] = render_formula(instance.formula);
            d["expected"] =
                instance.expected ? py::cast(*instance.expected) : py::object(py::none());
            d["degenerate"] = instance.degenerate;
            d["note"] = instance.note;
            return d;
        },
        py::arg("kind"), py::arg("input_text"), py::arg("mode") = "sat");

    m.def(
        "verify",
        [](const std::string& kind, std::size_t count, std::uint64_t seed, bool exhaustive) {
            VerifyOptions options;
            options.count = count;
            options.seed = seed;
            options.exhaustive = exhaustive;
            return verify_report_to_json(
                verify_reduction(reduction_kind_from_string(kind), options));
        },
        py::arg("kind"), py::arg("count") = 50, py::arg("seed") = 0,
        py::arg("exhaustive") = false,
        "Cross-check a generator against its oracle; returns a JSON report.");
}
