#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "tafreq/decide.hpp"
#include "tafreq/frontend.hpp"
#include "tafreq/oracle.hpp"
#include "tafreq/zeno.hpp"

namespace {

using namespace tafreq;

constexpr int kExitHolds = 0;
constexpr int kExitFails = 1;
constexpr int kExitUsage = 2;
constexpr int kExitUnsupported = 3;

ModelSource read_source(const std::string& path) {
    if (path == "-") {
        std::ostringstream buf;
        buf << std::cin.rdbuf();
        return {buf.str(), "<stdin>"};
    }
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return {buf.str(), path};
}

void write_file(const std::string& path, const std::string& text) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write '" + path + "'");
    out << text;
}

Rat parse_threshold(const std::string& text) {
    Rat r = rat_from_string(text);
    if (r < 0 || r >= 1) throw std::invalid_argument("threshold must lie in [0, 1)");
    return r;
}

// Decision record as a canonical JSON object (single line of the report's
// decisions array, plus convenience fields per decision kind).
std::string decision_json(const DecisionRecord& d, const std::string& extra_key,
                          bool extra_value) {
    std::ostringstream out;
    out << "{\n";
    out << "  \"answer\": " << (d.answer ? "true" : "false") << ",\n";
    if (!d.caveats.empty()) {
        out << "  \"caveats\": [";
        for (std::size_t i = 0; i < d.caveats.size(); ++i)
            out << (i ? ", " : "") << "\"" << d.caveats[i] << "\"";
        out << "],\n";
    }
    out << "  \"class\": \"" << word_class_name(d.word_class) << "\",\n";
    out << "  \"kind\": \"" << d.kind << "\",\n";
    if (extra_key < "strict")
        out << "  \"" << extra_key << "\": " << (extra_value ? "true" : "false") << ",\n";
    out << "  \"strict\": " << (d.strict ? "true" : "false") << ",\n";
    out << "  \"threshold\": \"" << rat_to_string(d.threshold) << "\"";
    if (extra_key > "threshold")
        out << ",\n  \"" << extra_key << "\": " << (extra_value ? "true" : "false");
    if (d.witness) {
        out << ",\n  \"witness\": \"";
        for (char c : *d.witness)
            if (c == '"' || c == '\\')
                out << '\\' << c;
            else
                out << c;
        out << "\"";
    }
    out << "\n}\n";
    return out.str();
}

TimedRun parse_run_string(const TimedAutomaton& a, const std::string& text,
                          std::vector<std::string>& actions) {
    // "tau a; tau a; ..." with rational tau.
    TimedRun run;
    std::istringstream in(text);
    std::string part;
    while (std::getline(in, part, ';')) {
        std::istringstream ps(part);
        std::string tau, act;
        if (!(ps >> tau >> act))
            throw std::invalid_argument("malformed run step '" + part + "'");
        std::string rest;
        if (ps >> rest) throw std::invalid_argument("trailing tokens in '" + part + "'");
        if (!a.has_action(act))
            throw std::invalid_argument("unknown action '" + act + "'");
        run.steps.push_back({rat_from_string(tau), -1});
        actions.push_back(act);
    }
    return run;
}

int cmd_parse(const std::string& path) {
    TimedAutomaton a = parse_model(read_source(path));
    for (const Diagnostic& d : validate(a)) {
        std::cerr << (d.error ? "error: " : "warning: ") << d.message << "\n";
        if (d.error) return kExitUsage;
    }
    std::cout << print_model(a);
    return kExitHolds;
}

int cmd_cornerpoint(const std::string& path, const std::string& dot_path) {
    TimedAutomaton a = parse_model(read_source(path));
    CornerPointGraph g = build_cornerpoint(a);
    std::cout << "states " << g.states.size() << "\n";
    std::cout << "edges " << g.edges.size() << "\n";
    std::cout << "projected_nodes " << g.projected_nodes().size() << "\n";
    for (const std::string& e : g.projected_edges()) std::cout << e << "\n";
    if (!dot_path.empty()) write_file(dot_path, render_dot(g));
    return kExitHolds;
}

int cmd_bounds(const std::string& path, const std::string& cls_name,
               const std::string& json_path) {
    TimedAutomaton a = parse_model(read_source(path));
    CornerPointGraph g = build_cornerpoint(a);
    std::vector<WordClass> classes;
    if (cls_name.empty())
        classes = {WordClass::All, WordClass::NonZeno, WordClass::Zeno};
    else if (auto c = word_class_from_name(cls_name))
        classes = {*c};
    else
        throw std::invalid_argument("unknown class '" + cls_name + "'");

    AnalysisReport report;
    report.automaton = a.name;
    for (WordClass cls : classes) {
        FrequencyBounds b = frequency_bounds(g, cls);
        report.classes.push_back({cls, b});
        std::cout << word_class_name(cls) << ": ";
        if (!b.has_runs) {
            std::cout << "no runs\n";
            continue;
        }
        std::cout << "inf " << rat_to_string(b.inf)
                  << (b.inf_attained ? " (attained)" : " (not attained)") << ", sup "
                  << rat_to_string(b.sup)
                  << (b.sup_attained ? " (attained)" : " (not attained)") << "\n";
    }
    if (!json_path.empty()) write_file(json_path, export_report(report));
    return kExitHolds;
}

int cmd_empty(const std::string& path, const std::string& threshold, bool strict,
              const std::string& cls_name) {
    TimedAutomaton a = parse_model(read_source(path));
    ThresholdQuery q;
    q.threshold = parse_threshold(threshold);
    q.strict = strict;
    if (!cls_name.empty()) {
        auto c = word_class_from_name(cls_name);
        if (!c) throw std::invalid_argument("unknown class '" + cls_name + "'");
        q.word_class = *c;
    }
    DecisionRecord d = decide_emptiness(a, q);
    std::cout << decision_json(d, "nonempty", !d.answer);
    return d.answer ? kExitFails : kExitHolds;  // property of interest: nonempty
}

int cmd_universal(const std::string& path, const std::string& threshold, bool strict,
                  const std::string& cls_name) {
    TimedAutomaton a = parse_model(read_source(path));
    ThresholdQuery q;
    q.threshold = parse_threshold(threshold);
    q.strict = strict;
    if (!cls_name.empty()) {
        auto c = word_class_from_name(cls_name);
        if (!c) throw std::invalid_argument("unknown class '" + cls_name + "'");
        q.word_class = *c;
    }
    DecisionRecord d = decide_universality_det(a, q);
    std::cout << decision_json(d, "universal", d.answer);
    return d.answer ? kExitHolds : kExitFails;
}

int cmd_zeno_universal(const std::string& path, const std::string& trace_path) {
    TimedAutomaton a = parse_model(read_source(path));
    std::vector<std::string> trace;
    DecisionRecord d = zeno_universality(a, trace_path.empty() ? nullptr : &trace);
    if (!trace_path.empty()) {
        std::string lines;
        for (const std::string& l : trace) lines += l + "\n";
        write_file(trace_path, lines);
    }
    std::cout << decision_json(d, "universal", d.answer);
    return d.answer ? kExitHolds : kExitFails;
}

int cmd_eval(const std::string& path, const std::string& run_text) {
    TimedAutomaton a = parse_model(read_source(path));
    if (!a.single_clock()) throw MultiClock("eval requires a single clock");
    std::vector<std::string> actions;
    TimedRun run = parse_run_string(a, run_text, actions);

    // Track every run reading the word, with its accepting time.
    struct Branch {
        State s;
        Rat acc;
        bool operator<(const Branch& o) const {
            return s < o.s || (s == o.s && acc < o.acc);
        }
    };
    std::set<Branch> cur;
    for (int l : a.initial) cur.insert({{l, Rat(0)}, Rat(0)});
    Rat total = 0;
    for (std::size_t i = 0; i < run.steps.size(); ++i) {
        const Rat& tau = run.steps[i].delay;
        total += tau;
        std::set<Branch> nxt;
        for (const Branch& br : cur) {
            Rat acc = br.acc + (a.accepting.count(br.s.location) ? tau : Rat(0));
            for (const State& t : step(a, br.s, tau, actions[i])) nxt.insert({t, acc});
        }
        cur = nxt;
        std::cout << "after " << rat_to_string(tau, false) << " " << actions[i] << ":";
        if (cur.empty()) {
            std::cout << " stuck\n";
            return kExitFails;
        }
        for (const Branch& br : cur)
            std::cout << " (" << a.locations[br.s.location]
                      << ", x=" << rat_to_string(br.s.value, false)
                      << ", freq=" << rat_to_string(br.acc / total) << ")";
        std::cout << "\n";
    }
    return kExitHolds;
}

int cmd_witness(const std::string& path, const std::string& ratio_text) {
    TimedAutomaton a = parse_model(read_source(path));
    Rat target = rat_from_string(ratio_text);
    if (target < 0 || target > 1)
        throw std::invalid_argument("ratio must lie in [0, 1]");
    CornerPointGraph g = build_cornerpoint(a);
    for (const Scc& scc : reachable_sccs(g)) {
        if (!scc_has_discrete_edge(g, scc)) continue;
        ExtremalRatios ext = extremal_cycle_ratios(g, scc);
        if (!ext.reward_diverging()) continue;
        if (target < ext.min->ratio || target > ext.max->ratio) continue;
        RatioWitness w = compose_ratio_witness(g, scc, target, Rat(1, 1000));
        std::cout << w.describe(g) << "\n";
        return kExitHolds;
    }
    if (zeno_ratio_realizable(g, target)) {
        std::cout << "Zeno run with frequency exactly " << rat_to_string(target) << "\n";
        return kExitHolds;
    }
    std::cout << "no witness for frequency " << rat_to_string(target) << "\n";
    return kExitFails;
}

int cmd_oracle(const std::string& path, int granularity, int depth, unsigned seed) {
    TimedAutomaton a = parse_model(read_source(path));
    SamplingConfig cfg{granularity, depth, seed};
    SampleStats st = sample_run_frequencies(a, cfg);
    std::cout << "runs " << st.runs << "\n";
    if (st.runs > 0) {
        std::cout << "min " << rat_to_string(st.min) << "\n";
        std::cout << "max " << rat_to_string(st.max) << "\n";
        for (const auto& [bin, count] : st.histogram)
            std::cout << "bin " << bin << " " << count << "\n";
    }
    return kExitHolds;
}

}  // namespace

int main(int argc, char** argv) {
    // TAFREQ_COLOR=0 (the default behavior: plain output, no styling).
    CLI::App app{"frequency analysis for single-clock timed automata"};
    app.require_subcommand(1);

    std::string model_path, dot_path, json_path, cls_name, threshold, run_text,
        ratio_text, trace_path;
    bool strict = false;
    int granularity = 4, depth = 50;
    unsigned seed = 0;

    CLI::App* c_parse = app.add_subcommand("parse", "validate and echo canonical form");
    c_parse->add_option("model", model_path)->required();

    CLI::App* c_cp = app.add_subcommand("cornerpoint", "corner-point abstraction");
    c_cp->add_option("model", model_path)->required();
    c_cp->add_option("--dot", dot_path);

    CLI::App* c_bounds = app.add_subcommand("bounds", "frequency bounds per class");
    c_bounds->add_option("model", model_path)->required();
    c_bounds->add_option("--class", cls_name);
    c_bounds->add_option("--json", json_path);

    CLI::App* c_empty = app.add_subcommand("empty", "language emptiness");
    c_empty->add_option("model", model_path)->required();
    c_empty->add_option("--threshold", threshold)->required();
    c_empty->add_flag("--strict", strict);
    c_empty->add_option("--class", cls_name);

    CLI::App* c_univ = app.add_subcommand("universal", "universality (deterministic)");
    c_univ->add_option("model", model_path)->required();
    c_univ->add_option("--threshold", threshold)->required();
    c_univ->add_flag("--strict", strict);
    c_univ->add_option("--class", cls_name);

    CLI::App* c_zeno = app.add_subcommand("zeno-universal",
                                          "Zeno-word universality (positive frequency)");
    c_zeno->add_option("model", model_path)->required();
    c_zeno->add_option("--trace", trace_path);

    CLI::App* c_eval = app.add_subcommand("eval", "replay a timed word");
    c_eval->add_option("model", model_path)->required();
    c_eval->add_option("--run", run_text)->required();

    CLI::App* c_wit = app.add_subcommand("witness", "schedule for a target frequency");
    c_wit->add_option("model", model_path)->required();
    c_wit->add_option("--ratio", ratio_text)->required();

    CLI::App* c_oracle = app.add_subcommand("oracle", "random run sampling");
    c_oracle->add_option("model", model_path)->required();
    c_oracle->add_option("--granularity", granularity);
    c_oracle->add_option("--depth", depth);
    c_oracle->add_option("--seed", seed);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e);  // --help
        std::cerr << e.what() << "\n";
        return kExitUsage;
    }

    try {
        if (c_parse->parsed()) return cmd_parse(model_path);
        if (c_cp->parsed()) return cmd_cornerpoint(model_path, dot_path);
        if (c_bounds->parsed()) return cmd_bounds(model_path, cls_name, json_path);
        if (c_empty->parsed()) return cmd_empty(model_path, threshold, strict, cls_name);
        if (c_univ->parsed())
            return cmd_universal(model_path, threshold, strict, cls_name);
        if (c_zeno->parsed()) return cmd_zeno_universal(model_path, trace_path);
        if (c_eval->parsed()) return cmd_eval(model_path, run_text);
        if (c_wit->parsed()) return cmd_witness(model_path, ratio_text);
        if (c_oracle->parsed()) return cmd_oracle(model_path, granularity, depth, seed);
    } catch (const SyntaxError& e) {
        std::cerr << "parse error at line " << e.line << ", column " << e.column << ": "
                  << e.what() << "\n";
        return kExitUsage;
    } catch (const SemanticError& e) {
        std::cerr << "semantic error at line " << e.line << ": " << e.what() << "\n";
        return kExitUsage;
    } catch (const MultiClock& e) {
        std::cerr << "unsupported model: " << e.what() << "\n";
        return kExitUnsupported;
    } catch (const NotDeterministic& e) {
        std::cerr << "unsupported model: " << e.what() << "\n";
        return kExitUnsupported;
    } catch (const std::invalid_argument& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    }
    return kExitUsage;
}
