// SPDX-License-Identifier: Apache-2.0
//
// Python bindings: a thin layer over the core. Big integers cross as Python
// ints, dyadics and formulas as strings, structured results as dicts.

#include "brouwer/catalog.hpp"
#include "brouwer/cli.hpp"
#include "brouwer/derivation.hpp"
#include "brouwer/drift.hpp"
#include "brouwer/fleeing.hpp"
#include "brouwer/logic.hpp"
#include "brouwer/reals.hpp"

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

namespace py = pybind11;
using namespace brouwer;

namespace {

py::int_ to_py(const Integer &z) { return py::int_(py::str(z.get_str())); }

Point point(const std::string &spec, const std::optional<std::string> &trace) {
    auto g = generator_from_spec(spec);
    return trace ? Point(std::move(g), EventTrace::parse(*trace)) : Point(std::move(g));
}

/// fractions.Fraction with the exact value.
py::object to_fraction(const Dyadic &d) {
    auto frac = py::module_::import("fractions").attr("Fraction");
    return frac(to_py(d.numerator()), py::int_(1).attr("__lshift__")(d.exponent()));
}

py::dict verdict(const Verdict &v) {
    py::dict d;
    d["value"] = std::string(to_string(v.value));
    d["horizon"] = v.horizon;
    d["witness"] = v.witness ? py::cast(*v.witness) : py::none();
    d["direction"] = std::string(to_string(v.direction));
    return d;
}

} // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Choice-sequence constructions, stage semantics and proof-script checking";

    py::register_exception<ResourceLimit>(m, "ResourceLimit");
    py::register_exception<ResourceRefusal>(m, "ResourceRefusal");

    m.def("pi_digits", [](std::size_t n) { return DigitOracle::shared().digits(n); }, py::arg("n"),
          "First n decimals of pi after the point.");

    m.def(
        "critical_number",
        [](const std::string &property, std::uint64_t horizon) {
            auto r = critical_number(property_from_spec(property), horizon);
            return py::make_tuple(r.found ? py::cast(*r.found) : py::none(), r.str());
        },
        py::arg("property"), py::arg("horizon"), "Least witness below the horizon, or None, and its summary.");

    m.def(
        "lambda_interval",
        [](std::uint64_t n, py::int_ a) {
            auto iv = lambda_interval(n, Integer(std::string(py::str(a))));
            return py::make_tuple(to_fraction(iv.lo), to_fraction(iv.hi));
        },
        py::arg("n"), py::arg("a"));

    m.def(
        "prefix",
        [](const std::string &spec, std::size_t n, std::optional<std::string> trace) {
            py::list out;
            for (const auto &z : point(spec, trace).prefix(n))
                out.append(to_py(z));
            return out;
        },
        py::arg("spec"), py::arg("n"), py::arg("trace") = py::none(),
        "First n terms of a generator spec, replayed under an optional trace line.");

    m.def(
        "compare",
        [](const std::string &lhs, const std::string &rhs, std::uint64_t horizon, std::optional<std::string> lhs_trace,
           std::optional<std::string> rhs_trace) {
            auto a = point(lhs, lhs_trace), b = point(rhs, rhs_trace);
            py::dict d;
            d["lhs_less"] = verdict(lt_at(a, b, horizon));
            d["rhs_less"] = verdict(lt_at(b, a, horizon));
            d["apart"] = verdict(apart_at(a, b, horizon));
            d["coincide"] = verdict(coincide_refute(a, b, horizon));
            return d;
        },
        py::arg("lhs"), py::arg("rhs"), py::arg("horizon") = 64, py::arg("lhs_trace") = py::none(),
        py::arg("rhs_trace") = py::none());

    m.def(
        "checking_sequence",
        [](const std::string &drift, const std::string &kind, const std::string &trace, std::uint64_t n) {
            auto run = checking_sequence(bundled_drift(drift), parse_checking_kind(kind), EventTrace::parse(trace), n);
            std::vector<std::string> terms;
            for (const auto &t : run.terms)
                terms.push_back(t.str());
            return py::make_tuple(terms, run.limit_descriptor);
        },
        py::arg("drift"), py::arg("kind"), py::arg("trace"), py::arg("n"));

    m.def("normalize_formula", [](const std::string &text) { return print(parse_formula(text)); }, py::arg("text"));

    m.def(
        "forces",
        [](const std::string &model_json, const std::string &node, const std::string &formula) {
            auto m = StageTree::from_json(model_json);
            return forces(m, m.index_of(node), *parse_formula(formula));
        },
        py::arg("model_json"), py::arg("node"), py::arg("formula"));

    m.def(
        "sweep",
        [](const std::string &schema, std::size_t nodes, std::size_t atoms, std::uint64_t box, std::size_t depth) {
            auto r = validity_sweep(parse_schema(schema), SweepBounds{nodes, atoms, box, depth});
            py::dict d;
            d["valid"] = r.valid;
            d["trees"] = r.trees;
            d["models"] = r.models;
            d["checks"] = r.checks;
            d["countermodel"] = r.countermodel ? py::cast(r.countermodel->id) : py::none();
            return d;
        },
        py::arg("schema"), py::arg("nodes") = 5, py::arg("atoms") = 2, py::arg("box") = 3, py::arg("depth") = 2);

    m.def("bundled_scripts", [] {
        std::vector<std::string> names;
        for (const auto &b : bundled_scripts())
            names.push_back(b.name);
        return names;
    });
    m.def("bundled_script", [](const std::string &name) { return bundled_script(name).text; }, py::arg("name"));

    m.def(
        "check_script",
        [](const std::string &text) {
            auto r = check(parse_script(text, "python"));
            py::dict d;
            d["verified"] = r.verified;
            d["rejected_step"] = r.rejected_step;
            d["reason"] = r.reason;
            d["conclusion"] = r.conclusion ? py::cast(print(r.conclusion)) : py::none();
            d["rules_used"] = r.rules_used;
            return d;
        },
        py::arg("text"));

    m.def(
        "run_cli",
        [](const std::vector<std::string> &args) {
            std::ostringstream out, err;
            int code = run_cli(args, out, err);
            return py::make_tuple(code, out.str(), err.str());
        },
        py::arg("args"), "Runs the command line in-process; returns (exit code, stdout, stderr).");
}
