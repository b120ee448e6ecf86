#ifndef TAFREQ_MODEL_HPP
#define TAFREQ_MODEL_HPP

#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "tafreq/rational.hpp"

namespace tafreq {

/// Raised by semantic operations on ill-formed inputs (multi-clock automata,
/// non-positive delays, runs that do not follow the edge relation, ...).
struct ModelError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// The model has several clocks; analyses support exactly one.
struct MultiClock : ModelError {
    using ModelError::ModelError;
};

/// The operation requires a deterministic automaton.
struct NotDeterministic : ModelError {
    using ModelError::ModelError;
};

// ---------------------------------------------------------------------------
// Guards
// ---------------------------------------------------------------------------

enum class Cmp { Lt, Le, Eq, Ge, Gt };

std::string cmp_to_string(Cmp c);

/// One comparison `clock ~ constant`.  Constants are natural numbers.
struct GuardAtom {
    std::string clock;
    Cmp cmp = Cmp::Eq;
    long long constant = 0;
};

/// Clock regions of a single-clock automaton with maximal constant M:
/// points {i} (0 <= i <= M), open intervals (i, i+1) (0 <= i < M) and the
/// unbounded region (M, +oo).
struct Region {
    enum class Kind { Point, Interval, Unbounded };
    Kind kind = Kind::Point;
    long long base = 0;  ///< i for {i} or (i, i+1); M for the unbounded region.

    static Region point(long long i) { return {Kind::Point, i}; }
    static Region interval(long long i) { return {Kind::Interval, i}; }
    static Region unbounded(long long m) { return {Kind::Unbounded, m}; }

    bool is_punctual() const { return kind == Kind::Point; }
    bool contains(const Rat& v) const;
    /// Region of valuation v w.r.t. maximal constant M.
    static Region of(const Rat& v, long long max_constant);
    bool operator==(const Region&) const = default;
    auto operator<=>(const Region&) const = default;
    std::string to_string() const;
};

/// Conjunction of comparisons; `true` is the empty conjunction.
struct Guard {
    std::vector<GuardAtom> atoms;

    bool is_true() const { return atoms.empty(); }
    /// Valuation of the (single) clock satisfies every atom.
    bool satisfied(const Rat& value) const;
    /// Every valuation of the region satisfies every atom.
    bool allows_region(const Region& region) const;
    bool satisfiable() const;
    long long max_constant() const;
    std::string to_string() const;
};

// ---------------------------------------------------------------------------
// Automata
// ---------------------------------------------------------------------------

struct Edge {
    int source = -1;
    int target = -1;
    std::string action;
    Guard guard;
    std::set<std::string> resets;  ///< clock names reset by this edge

    bool resets_clock() const { return !resets.empty(); }
};

/// Single-clock timed automaton with Buechi-style accepting locations.
/// Multi-clock declarations are representable (so the validator can diagnose
/// them) but rejected by every semantic operation.
struct TimedAutomaton {
    std::string name;
    std::vector<std::string> locations;
    std::vector<std::string> clocks;   ///< expected size 1
    std::vector<std::string> alphabet;
    std::set<int> initial;
    std::set<int> accepting;
    std::vector<Edge> edges;

    int location_index(const std::string& loc) const;  ///< -1 when absent
    bool has_action(const std::string& action) const;
    long long max_constant() const;
    bool single_clock() const { return clocks.size() == 1; }
    std::vector<Region> all_regions() const;
    /// Edges leaving `location` labelled `action`.
    std::vector<int> edges_from(int location, const std::string& action) const;
};

/// Validation finding; `error` distinguishes hard errors from warnings
/// (unused alphabet symbols, unsatisfiable guards).
struct Diagnostic {
    bool error = true;
    std::string message;
};

/// Structural checks: index ranges, single clock, guard satisfiability,
/// initial location present, alphabet coverage.  Empty result means the
/// automaton is well-formed (warnings included in the result otherwise).
std::vector<Diagnostic> validate(const TimedAutomaton& a);

// ---------------------------------------------------------------------------
// Runs and words
// ---------------------------------------------------------------------------

struct State {
    int location = -1;
    Rat value;  ///< clock valuation

    bool operator==(const State&) const = default;
    bool operator<(const State& o) const {
        return location < o.location || (location == o.location && value < o.value);
    }
};

/// One discrete move: delay tau > 0, then edge `edge`.
struct RunStep {
    Rat delay;
    int edge = -1;
};

/// Finite run: initial state followed by moves.  The location occupied while
/// the i-th delay elapses is the location reached after i previous moves.
struct TimedRun {
    State start;
    std::vector<RunStep> steps;
};

/// All successor states of `s` after waiting `delay` and firing an edge
/// labelled `action`.  Throws ModelError on non-positive delay, unknown
/// action or multi-clock automata.  Empty result means no enabled edge.
std::vector<State> step(const TimedAutomaton& a, const State& s, const Rat& delay,
                        const std::string& action);

/// Checks the run against the edge relation and returns the visited states
/// (length steps+1).  Throws ModelError when a move is illegal.
std::vector<State> replay(const TimedAutomaton& a, const TimedRun& run);

/// Exact frequency of accepting locations in the first `steps` moves:
/// (sum of delays spent in accepting locations) / (sum of all delays).
Rat prefix_frequency(const TimedAutomaton& a, const TimedRun& run, std::size_t steps);

/// Frequency limit of the infinite run stem.cycle^omega.  The cycle must
/// return to the state reached after the stem and have positive duration
/// (the limit is then the accepting-time ratio of the cycle).
Rat limit_frequency_of_lasso(const TimedAutomaton& a, const TimedRun& stem,
                             const std::vector<RunStep>& cycle);

/// One edge per (location, action, overlapping guard) at most.
bool is_deterministic(const TimedAutomaton& a);

/// From every location, every action has an enabled edge in every clock
/// region reachable with a positive delay (all regions except {0}); this is
/// the local criterion under which every infinite timed word is readable.
bool is_complete(const TimedAutomaton& a);

/// Timed word letter: delay then action.
struct Letter {
    Rat delay;
    std::string action;
};

using TimedWord = std::vector<Letter>;

/// Reachable state set of `a` after reading `w` (exact subset simulation).
std::vector<State> states_after_word(const TimedAutomaton& a, const TimedWord& w);

}  // namespace tafreq

#endif  // TAFREQ_MODEL_HPP
