#pragma once

#include <optional>
#include <string>
#include <vector>

#include "tafreq/cornerpoint.hpp"
#include "tafreq/model.hpp"
#include "tafreq/ratio.hpp"

namespace tafreq {

struct ModelSource {
    std::string text;
    std::string origin = "<stdin>";
};

struct SyntaxError : ModelError {
    int line;
    int column;
    SyntaxError(const std::string& msg, int line_, int column_)
        : ModelError(msg), line(line_), column(column_) {}
};

struct SemanticError : ModelError {
    int line;
    SemanticError(const std::string& msg, int line_) : ModelError(msg), line(line_) {}
};

// Parses the line-oriented .ta model language.
TimedAutomaton parse_model(const ModelSource& source);

// Canonical textual form; parse_model(print_model(a)) reproduces a.
std::string print_model(const TimedAutomaton& a);

// Deterministic DOT renderings (digraph subset: node/edge/label/shape/style).
std::string render_dot(const TimedAutomaton& a);
std::string render_dot(const CornerPointGraph& g);

// Structural well-formedness check for the DOT subset above (in-repo
// tokenizer, no external tool).
bool dot_well_formed(const std::string& dot);

struct DecisionRecord {
    std::string kind;  // "emptiness" | "universality-deterministic" | "zeno-universality"
    Rat threshold;
    bool strict = true;
    WordClass word_class = WordClass::All;
    bool answer = false;
    std::optional<std::string> witness;
    std::vector<std::string> caveats;

    bool operator==(const DecisionRecord&) const = default;
};

struct ClassBounds {
    WordClass word_class = WordClass::All;
    FrequencyBounds bounds;
    bool operator==(const ClassBounds&) const = default;
};

struct AnalysisReport {
    int schema_version = 1;
    std::string automaton;
    std::vector<ClassBounds> classes;      // ordered all, nonzeno, zeno (present subset)
    std::vector<DecisionRecord> decisions;

    bool operator==(const AnalysisReport&) const = default;
};

// Canonical JSON (sorted keys, rationals as "p/q"); parse is the inverse.
std::string export_report(const AnalysisReport& report);
AnalysisReport parse_report(const std::string& json_text);

}  // namespace tafreq
