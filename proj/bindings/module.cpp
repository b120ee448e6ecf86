#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <fstream>
#include <sstream>

#include "tafreq/decide.hpp"
#include "tafreq/frontend.hpp"
#include "tafreq/oracle.hpp"
#include "tafreq/zeno.hpp"

namespace py = pybind11;
using namespace tafreq;

namespace {

// Rationals cross the boundary as canonical "p/q" strings; Python callers
// can hand them to fractions.Fraction directly.
py::dict bounds_dict(const FrequencyBounds& b) {
    py::dict d;
    d["has_runs"] = b.has_runs;
    d["inf"] = rat_to_string(b.inf);
    d["inf_attained"] = b.inf_attained;
    d["sup"] = rat_to_string(b.sup);
    d["sup_attained"] = b.sup_attained;
    return d;
}

py::dict decision_dict(const DecisionRecord& d) {
    py::dict out;
    out["kind"] = d.kind;
    out["threshold"] = rat_to_string(d.threshold);
    out["strict"] = d.strict;
    out["class"] = word_class_name(d.word_class);
    out["answer"] = d.answer;
    if (d.witness) out["witness"] = *d.witness;
    out["caveats"] = d.caveats;
    return out;
}

ThresholdQuery make_query(const std::string& threshold, bool strict,
                          const std::string& word_class) {
    ThresholdQuery q;
    q.threshold = rat_from_string(threshold);
    q.strict = strict;
    auto c = word_class_from_name(word_class);
    if (!c) throw std::invalid_argument("unknown word class '" + word_class + "'");
    q.word_class = *c;
    return q;
}

}  // namespace

PYBIND11_MODULE(_tafreq, m) {
    m.doc() = "frequency analysis for single-clock timed automata";

    // Translators run newest-first: register the base before the derived
    // exceptions so the specific ones win.
    py::register_exception<ModelError>(m, "ModelRuntimeError");
    py::register_exception<SyntaxError>(m, "ModelSyntaxError");
    py::register_exception<SemanticError>(m, "ModelSemanticError");
    py::register_exception<MultiClock>(m, "MultiClockError");
    py::register_exception<NotDeterministic>(m, "NotDeterministicError");

    py::class_<TimedAutomaton>(m, "TimedAutomaton")
        .def_property_readonly("name", [](const TimedAutomaton& a) { return a.name; })
        .def_property_readonly("locations",
                               [](const TimedAutomaton& a) { return a.locations; })
        .def_property_readonly("alphabet",
                               [](const TimedAutomaton& a) { return a.alphabet; })
        .def("max_constant", &TimedAutomaton::max_constant)
        .def("is_deterministic",
             [](const TimedAutomaton& a) { return is_deterministic(a); })
        .def("is_complete", [](const TimedAutomaton& a) { return is_complete(a); })
        .def("__repr__", [](const TimedAutomaton& a) {
            return "<TimedAutomaton '" + a.name + "', " +
                   std::to_string(a.locations.size()) + " locations>";
        });

    m.def(
        "parse",
        [](const std::string& text, const std::string& origin) {
            return parse_model({text, origin});
        },
        py::arg("text"), py::arg("origin") = "<string>");
    m.def("parse_file", [](const std::string& path) {
        std::ifstream in(path);
        if (!in) throw std::invalid_argument("cannot open '" + path + "'");
        std::ostringstream buf;
        buf << in.rdbuf();
        return parse_model({buf.str(), path});
    });
    m.def("print_model", &print_model);
    m.def("render_dot", [](const TimedAutomaton& a) { return render_dot(a); });
    m.def("cornerpoint_dot",
          [](const TimedAutomaton& a) { return render_dot(build_cornerpoint(a)); });
    m.def("cornerpoint_summary", [](const TimedAutomaton& a) {
        CornerPointGraph g = build_cornerpoint(a);
        py::dict d;
        d["states"] = g.states.size();
        d["edges"] = g.edges.size();
        d["projected_nodes"] = g.projected_nodes();
        d["projected_edges"] = g.projected_edges();
        return d;
    });

    m.def(
        "bounds",
        [](const TimedAutomaton& a, const std::string& word_class) {
            auto c = word_class_from_name(word_class);
            if (!c)
                throw std::invalid_argument("unknown word class '" + word_class + "'");
            return bounds_dict(frequency_bounds(build_cornerpoint(a), *c));
        },
        py::arg("automaton"), py::arg("word_class") = "all");

    m.def(
        "emptiness",
        [](const TimedAutomaton& a, const std::string& threshold, bool strict,
           const std::string& word_class) {
            return decision_dict(
                decide_emptiness(a, make_query(threshold, strict, word_class)));
        },
        py::arg("automaton"), py::arg("threshold") = "0/1", py::arg("strict") = true,
        py::arg("word_class") = "all");

    m.def(
        "universality",
        [](const TimedAutomaton& a, const std::string& threshold, bool strict,
           const std::string& word_class) {
            return decision_dict(
                decide_universality_det(a, make_query(threshold, strict, word_class)));
        },
        py::arg("automaton"), py::arg("threshold") = "0/1", py::arg("strict") = true,
        py::arg("word_class") = "all");

    m.def("zeno_universality",
          [](const TimedAutomaton& a) { return decision_dict(zeno_universality(a)); });

    m.def(
        "sample_frequencies",
        [](const TimedAutomaton& a, int granularity, int depth, unsigned seed,
           int runs) {
            SampleStats st = sample_run_frequencies(a, {granularity, depth, seed}, runs);
            py::dict d;
            d["runs"] = st.runs;
            if (st.runs > 0) {
                d["min"] = rat_to_string(st.min);
                d["max"] = rat_to_string(st.max);
            }
            d["histogram"] = st.histogram;
            return d;
        },
        py::arg("automaton"), py::arg("granularity") = 4, py::arg("depth") = 50,
        py::arg("seed") = 0, py::arg("runs") = 100);
}
