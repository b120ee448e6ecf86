#include "tafreq/frontend.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <set>
#include <sstream>

#include <json.hpp>

namespace tafreq {

namespace {

struct Token {
    std::string text;
    int column;  // 1-based
};

std::vector<Token> tokenize_line(const std::string& line) {
    std::vector<Token> out;
    std::size_t i = 0;
    while (i < line.size()) {
        if (line[i] == '#') break;
        if (std::isspace(static_cast<unsigned char>(line[i]))) {
            ++i;
            continue;
        }
        std::size_t start = i;
        while (i < line.size() && !std::isspace(static_cast<unsigned char>(line[i])) &&
               line[i] != '#')
            ++i;
        out.push_back({line.substr(start, i - start), static_cast<int>(start) + 1});
    }
    return out;
}

bool valid_identifier(const std::string& s) {
    if (s.empty()) return false;
    for (char c : s)
        if (!std::isalnum(static_cast<unsigned char>(c)) && c != '_') return false;
    return true;
}

std::optional<Cmp> cmp_from_string(const std::string& s) {
    if (s == "<") return Cmp::Lt;
    if (s == "<=") return Cmp::Le;
    if (s == "==") return Cmp::Eq;
    if (s == ">=") return Cmp::Ge;
    if (s == ">") return Cmp::Gt;
    return std::nullopt;
}

}  // namespace

TimedAutomaton parse_model(const ModelSource& source) {
    TimedAutomaton a;
    struct PendingEdge {
        std::string source, target, action;
        Guard guard;
        std::set<std::string> resets;
        int line;
    };
    std::vector<PendingEdge> pending;
    std::vector<std::pair<std::string, int>> pending_initial, pending_accepting;
    bool saw_name = false;

    std::istringstream in(source.text);
    std::string line;
    int lineno = 0;
    auto expect = [&](const std::vector<Token>& toks, std::size_t i,
                      const std::string& what) -> const Token& {
        if (i >= toks.size()) {
            int col = toks.empty() ? 1 : toks.back().column +
                                             static_cast<int>(toks.back().text.size());
            throw SyntaxError("expected " + what, lineno, col);
        }
        return toks[i];
    };
    while (std::getline(in, line)) {
        ++lineno;
        std::vector<Token> toks = tokenize_line(line);
        if (toks.empty()) continue;
        const std::string& head = toks[0].text;
        if (head == "automaton") {
            if (saw_name) throw SemanticError("duplicate 'automaton' line", lineno);
            if (!a.clocks.empty() || !a.locations.empty() || !a.alphabet.empty())
                throw SyntaxError("'automaton' must be the first directive", lineno,
                                  toks[0].column);
            a.name = expect(toks, 1, "automaton name").text;
            saw_name = true;
            if (toks.size() > 2)
                throw SyntaxError("trailing tokens after automaton name", lineno,
                                  toks[2].column);
        } else if (head == "clock") {
            const std::string& c = expect(toks, 1, "clock name").text;
            if (!valid_identifier(c))
                throw SyntaxError("invalid clock name '" + c + "'", lineno,
                                  toks[1].column);
            if (std::find(a.clocks.begin(), a.clocks.end(), c) != a.clocks.end())
                throw SemanticError("duplicate clock '" + c + "'", lineno);
            a.clocks.push_back(c);
        } else if (head == "alphabet") {
            if (toks.size() < 2) throw SyntaxError("expected action symbols", lineno, 1);
            for (std::size_t i = 1; i < toks.size(); ++i) {
                if (!valid_identifier(toks[i].text))
                    throw SyntaxError("invalid action '" + toks[i].text + "'", lineno,
                                      toks[i].column);
                if (a.has_action(toks[i].text))
                    throw SemanticError("duplicate action '" + toks[i].text + "'",
                                        lineno);
                a.alphabet.push_back(toks[i].text);
            }
        } else if (head == "init") {
            if (toks.size() < 2) throw SyntaxError("expected location names", lineno, 1);
            for (std::size_t i = 1; i < toks.size(); ++i)
                pending_initial.push_back({toks[i].text, lineno});
        } else if (head == "accepting") {
            for (std::size_t i = 1; i < toks.size(); ++i)
                pending_accepting.push_back({toks[i].text, lineno});
        } else if (head == "loc") {
            const std::string& name = expect(toks, 1, "location name").text;
            if (!valid_identifier(name))
                throw SyntaxError("invalid location name '" + name + "'", lineno,
                                  toks[1].column);
            if (a.location_index(name) >= 0)
                throw SemanticError("duplicate location '" + name + "'", lineno);
            a.locations.push_back(name);
            if (toks.size() > 2)
                throw SyntaxError("trailing tokens after location name", lineno,
                                  toks[2].column);
        } else if (head == "edge") {
            // edge SRC -> DST on ACT when GUARD [reset x]
            PendingEdge e;
            e.line = lineno;
            e.source = expect(toks, 1, "source location").text;
            if (expect(toks, 2, "'->'").text != "->")
                throw SyntaxError("expected '->'", lineno, toks[2].column);
            e.target = expect(toks, 3, "target location").text;
            if (expect(toks, 4, "'on'").text != "on")
                throw SyntaxError("expected 'on'", lineno, toks[4].column);
            e.action = expect(toks, 5, "action").text;
            if (expect(toks, 6, "'when'").text != "when")
                throw SyntaxError("expected 'when'", lineno, toks[6].column);
            std::size_t i = 7;
            if (expect(toks, i, "guard").text == "true") {
                ++i;
            } else {
                while (true) {
                    GuardAtom atom;
                    atom.clock = expect(toks, i, "clock name").text;
                    const Token& op = expect(toks, i + 1, "comparison operator");
                    std::optional<Cmp> cmp = cmp_from_string(op.text);
                    if (!cmp)
                        throw SyntaxError("expected one of < <= == >= >", lineno,
                                          op.column);
                    atom.cmp = *cmp;
                    const Token& num = expect(toks, i + 2, "natural constant");
                    try {
                        std::size_t used = 0;
                        atom.constant = std::stoll(num.text, &used);
                        if (used != num.text.size() || atom.constant < 0)
                            throw std::invalid_argument("");
                    } catch (const std::exception&) {
                        throw SyntaxError("expected natural constant, got '" + num.text +
                                              "'",
                                          lineno, num.column);
                    }
                    e.guard.atoms.push_back(atom);
                    i += 3;
                    if (i < toks.size() && toks[i].text == "&&") {
                        ++i;
                        continue;
                    }
                    break;
                }
            }
            if (i < toks.size()) {
                if (toks[i].text != "reset")
                    throw SyntaxError("expected 'reset' or end of line", lineno,
                                      toks[i].column);
                if (i + 1 >= toks.size())
                    throw SyntaxError("expected clock name after 'reset'", lineno,
                                      toks[i].column + 5);
                for (++i; i < toks.size(); ++i) e.resets.insert(toks[i].text);
            }
            pending.push_back(std::move(e));
        } else {
            throw SyntaxError("unknown directive '" + head + "'", lineno,
                              toks[0].column);
        }
    }

    auto resolve = [&](const std::string& loc, int at) {
        int idx = a.location_index(loc);
        if (idx < 0) throw SemanticError("undeclared location '" + loc + "'", at);
        return idx;
    };
    for (const auto& [loc, at] : pending_initial) a.initial.insert(resolve(loc, at));
    for (const auto& [loc, at] : pending_accepting) a.accepting.insert(resolve(loc, at));
    for (const PendingEdge& pe : pending) {
        Edge e;
        e.source = resolve(pe.source, pe.line);
        e.target = resolve(pe.target, pe.line);
        if (!a.has_action(pe.action))
            throw SemanticError("undeclared action '" + pe.action + "'", pe.line);
        e.action = pe.action;
        for (const GuardAtom& atom : pe.guard.atoms)
            if (std::find(a.clocks.begin(), a.clocks.end(), atom.clock) ==
                a.clocks.end())
                throw SemanticError("undeclared clock '" + atom.clock + "'", pe.line);
        e.guard = pe.guard;
        for (const std::string& c : pe.resets)
            if (std::find(a.clocks.begin(), a.clocks.end(), c) == a.clocks.end())
                throw SemanticError("undeclared clock '" + c + "'", pe.line);
        e.resets = pe.resets;
        a.edges.push_back(std::move(e));
    }
    if (!saw_name) throw SyntaxError("missing 'automaton' header", 1, 1);
    if (a.initial.empty()) throw SemanticError("no initial location", lineno);
    return a;
}

std::string print_model(const TimedAutomaton& a) {
    std::ostringstream out;
    out << "automaton " << (a.name.empty() ? "unnamed" : a.name) << "\n";
    for (const std::string& c : a.clocks) out << "clock " << c << "\n";
    if (!a.alphabet.empty()) {
        out << "alphabet";
        for (const std::string& s : a.alphabet) out << " " << s;
        out << "\n";
    }
    for (const std::string& loc : a.locations) out << "loc " << loc << "\n";
    out << "init";
    for (int i : a.initial) out << " " << a.locations[i];
    out << "\n";
    if (!a.accepting.empty()) {
        out << "accepting";
        for (int i : a.accepting) out << " " << a.locations[i];
        out << "\n";
    }
    for (const Edge& e : a.edges) {
        out << "edge " << a.locations[e.source] << " -> " << a.locations[e.target]
            << " on " << e.action << " when " << e.guard.to_string();
        if (!e.resets.empty()) {
            out << " reset";
            for (const std::string& c : e.resets) out << " " << c;
        }
        out << "\n";
    }
    return out.str();
}

// ---------------------------------------------------------------------------
// DOT
// ---------------------------------------------------------------------------

namespace {

std::string dot_quote(const std::string& s) {
    std::string out = "\"";
    for (char c : s) {
        if (c == '"' || c == '\\') out += '\\';
        out += c;
    }
    return out + "\"";
}

}  // namespace

std::string render_dot(const TimedAutomaton& a) {
    std::ostringstream out;
    out << "digraph " << dot_quote(a.name.empty() ? "automaton" : a.name) << " {\n";
    out << "  node [shape=circle];\n";
    for (std::size_t i = 0; i < a.locations.size(); ++i) {
        out << "  " << dot_quote(a.locations[i]);
        std::vector<std::string> attrs;
        if (a.accepting.count(static_cast<int>(i))) attrs.push_back("shape=doublecircle");
        if (a.initial.count(static_cast<int>(i))) attrs.push_back("style=bold");
        if (!attrs.empty()) {
            out << " [";
            for (std::size_t k = 0; k < attrs.size(); ++k)
                out << (k ? ", " : "") << attrs[k];
            out << "]";
        }
        out << ";\n";
    }
    for (const Edge& e : a.edges) {
        std::string label = e.action + ", " + e.guard.to_string();
        if (!e.resets.empty()) {
            for (const std::string& c : e.resets) label += ", " + c + ":=0";
        }
        out << "  " << dot_quote(a.locations[e.source]) << " -> "
            << dot_quote(a.locations[e.target]) << " [label=" << dot_quote(label)
            << "];\n";
    }
    out << "}\n";
    return out.str();
}

std::string render_dot(const CornerPointGraph& g) {
    std::ostringstream out;
    out << "digraph " << dot_quote(g.automaton.name + "_cornerpoint") << " {\n";
    out << "  node [shape=box];\n";
    for (std::size_t s = 0; s < g.states.size(); ++s) {
        out << "  " << dot_quote(g.state_name(static_cast<int>(s), true));
        std::vector<std::string> attrs;
        if (g.state_accepting(static_cast<int>(s))) attrs.push_back("style=bold");
        if (std::find(g.initial.begin(), g.initial.end(), static_cast<int>(s)) !=
            g.initial.end())
            attrs.push_back("shape=octagon");
        if (!attrs.empty()) {
            out << " [";
            for (std::size_t k = 0; k < attrs.size(); ++k)
                out << (k ? ", " : "") << attrs[k];
            out << "]";
        }
        out << ";\n";
    }
    for (const CpEdge& e : g.edges) {
        std::string action =
            e.discrete() ? g.automaton.edges[e.edge].action : std::string("ε");
        std::string label = action + "," + std::to_string(e.cost) + "/" +
                            std::to_string(e.reward);
        out << "  " << dot_quote(g.state_name(e.source, true)) << " -> "
            << dot_quote(g.state_name(e.target, true)) << " [label=" << dot_quote(label)
            << "];\n";
    }
    out << "}\n";
    return out.str();
}

bool dot_well_formed(const std::string& dot) {
    // Tokenizer for the digraph subset used above.
    std::vector<std::string> toks;
    std::size_t i = 0;
    while (i < dot.size()) {
        char c = dot[i];
        if (std::isspace(static_cast<unsigned char>(c))) {
            ++i;
            continue;
        }
        if (c == '"') {
            std::string s = "\"";
            for (++i; i < dot.size() && dot[i] != '"'; ++i) {
                if (dot[i] == '\\' && i + 1 < dot.size()) s += dot[i++];
                s += dot[i];
            }
            if (i >= dot.size()) return false;  // unterminated string
            ++i;
            toks.push_back(s + "\"");
        } else if (c == '-' && i + 1 < dot.size() && dot[i + 1] == '>') {
            toks.push_back("->");
            i += 2;
        } else if (c == '{' || c == '}' || c == '[' || c == ']' || c == ';' ||
                   c == ',' || c == '=') {
            toks.push_back(std::string(1, c));
            ++i;
        } else if (std::isalnum(static_cast<unsigned char>(c)) || c == '_') {
            std::string s;
            while (i < dot.size() && (std::isalnum(static_cast<unsigned char>(dot[i])) ||
                                      dot[i] == '_'))
                s += dot[i++];
            toks.push_back(s);
        } else {
            return false;
        }
    }
    std::size_t p = 0;
    auto at = [&](const std::string& t) { return p < toks.size() && toks[p] == t; };
    auto is_id = [&]() {
        return p < toks.size() && toks[p] != "{" && toks[p] != "}" && toks[p] != "[" &&
               toks[p] != "]" && toks[p] != ";" && toks[p] != "," && toks[p] != "=" &&
               toks[p] != "->";
    };
    static const std::set<std::string> kAttrs{"label", "shape", "style"};
    auto attr_list = [&]() -> bool {
        if (!at("[")) return true;
        ++p;
        while (true) {
            if (p + 2 >= toks.size()) return false;
            if (!kAttrs.count(toks[p])) return false;
            ++p;
            if (!at("=")) return false;
            ++p;
            if (!is_id()) return false;
            ++p;
            if (at(",")) {
                ++p;
                continue;
            }
            break;
        }
        if (!at("]")) return false;
        ++p;
        return true;
    };
    if (!at("digraph")) return false;
    ++p;
    if (is_id()) ++p;
    if (!at("{")) return false;
    ++p;
    while (!at("}")) {
        if (at("node") || at("edge")) {
            ++p;
            if (!attr_list()) return false;
        } else if (is_id()) {
            ++p;
            if (at("->")) {
                ++p;
                if (!is_id()) return false;
                ++p;
            }
            if (!attr_list()) return false;
        } else {
            return false;
        }
        if (!at(";")) return false;
        ++p;
    }
    ++p;
    return p == toks.size();
}

// ---------------------------------------------------------------------------
// JSON reports
// ---------------------------------------------------------------------------

namespace {

using nlohmann::json;

json bounds_to_json(const FrequencyBounds& b) {
    return json{{"inf", rat_to_string(b.inf)},
                {"inf_attained", b.inf_attained},
                {"sup", rat_to_string(b.sup)},
                {"sup_attained", b.sup_attained}};
}

FrequencyBounds bounds_from_json(const json& j) {
    FrequencyBounds b;
    b.has_runs = true;
    b.inf = rat_from_string(j.at("inf").get<std::string>());
    b.inf_attained = j.at("inf_attained").get<bool>();
    b.sup = rat_from_string(j.at("sup").get<std::string>());
    b.sup_attained = j.at("sup_attained").get<bool>();
    return b;
}

}  // namespace

std::string export_report(const AnalysisReport& report) {
    json j;
    j["schema_version"] = report.schema_version;
    j["automaton"] = report.automaton;
    j["classes"] = json::object();
    for (const ClassBounds& cb : report.classes)
        if (cb.bounds.has_runs)
            j["classes"][word_class_name(cb.word_class)] = bounds_to_json(cb.bounds);
    j["decisions"] = json::array();
    for (const DecisionRecord& d : report.decisions) {
        json dj{{"kind", d.kind},
                {"threshold", rat_to_string(d.threshold)},
                {"strict", d.strict},
                {"class", word_class_name(d.word_class)},
                {"answer", d.answer}};
        if (d.witness) dj["witness"] = *d.witness;
        if (!d.caveats.empty()) dj["caveats"] = d.caveats;
        j["decisions"].push_back(dj);
    }
    return j.dump(2) + "\n";
}

AnalysisReport parse_report(const std::string& json_text) {
    json j = json::parse(json_text);
    AnalysisReport r;
    r.schema_version = j.at("schema_version").get<int>();
    r.automaton = j.value("automaton", "");
    if (j.contains("classes"))
        for (WordClass cls : {WordClass::All, WordClass::NonZeno, WordClass::Zeno}) {
            std::string key = word_class_name(cls);
            if (j["classes"].contains(key))
                r.classes.push_back({cls, bounds_from_json(j["classes"][key])});
        }
    if (j.contains("decisions"))
        for (const json& dj : j["decisions"]) {
            DecisionRecord d;
            d.kind = dj.at("kind").get<std::string>();
            d.threshold = rat_from_string(dj.at("threshold").get<std::string>());
            d.strict = dj.at("strict").get<bool>();
            d.word_class = word_class_from_name(dj.at("class").get<std::string>())
                               .value_or(WordClass::All);
            d.answer = dj.at("answer").get<bool>();
            if (dj.contains("witness")) d.witness = dj["witness"].get<std::string>();
            if (dj.contains("caveats"))
                d.caveats = dj["caveats"].get<std::vector<std::string>>();
            r.decisions.push_back(std::move(d));
        }
    return r;
}

}  // namespace tafreq
