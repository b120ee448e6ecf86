#include "tafreq/model.hpp"

#include <algorithm>
#include <map>
#include <sstream>

namespace tafreq {

std::string cmp_to_string(Cmp c) {
    switch (c) {
        case Cmp::Lt: return "<";
        case Cmp::Le: return "<=";
        case Cmp::Eq: return "==";
        case Cmp::Ge: return ">=";
        case Cmp::Gt: return ">";
    }
    return "?";
}

// ---------------------------------------------------------------------------
// Regions
// ---------------------------------------------------------------------------

bool Region::contains(const Rat& v) const {
    switch (kind) {
        case Kind::Point: return v == base;
        case Kind::Interval: return v > base && v < base + 1;
        case Kind::Unbounded: return v > base;
    }
    return false;
}

Region Region::of(const Rat& v, long long max_constant) {
    if (v > max_constant) return unbounded(max_constant);
    Int f = rat_floor(v);
    long long i = f.convert_to<long long>();
    if (v == f) return point(i);
    return interval(i);
}

std::string Region::to_string() const {
    std::ostringstream out;
    switch (kind) {
        case Kind::Point: out << "{" << base << "}"; break;
        case Kind::Interval: out << "(" << base << "," << base + 1 << ")"; break;
        case Kind::Unbounded: out << "(" << base << ",oo)"; break;
    }
    return out.str();
}

// ---------------------------------------------------------------------------
// Guards
// ---------------------------------------------------------------------------

namespace {

bool atom_satisfied(const GuardAtom& atom, const Rat& v) {
    switch (atom.cmp) {
        case Cmp::Lt: return v < atom.constant;
        case Cmp::Le: return v <= atom.constant;
        case Cmp::Eq: return v == atom.constant;
        case Cmp::Ge: return v >= atom.constant;
        case Cmp::Gt: return v > atom.constant;
    }
    return false;
}

// Whole region below / above the constant, for inclusion checks.
bool atom_allows_region(const GuardAtom& atom, const Region& r) {
    long long c = atom.constant;
    switch (r.kind) {
        case Region::Kind::Point: return atom_satisfied(atom, Rat(r.base));
        case Region::Kind::Interval:
            switch (atom.cmp) {
                case Cmp::Lt:
                case Cmp::Le: return r.base + 1 <= c;
                case Cmp::Eq: return false;
                case Cmp::Ge:
                case Cmp::Gt: return r.base >= c;
            }
            return false;
        case Region::Kind::Unbounded:
            // (M, oo) with M >= every guard constant.
            switch (atom.cmp) {
                case Cmp::Lt:
                case Cmp::Le:
                case Cmp::Eq: return false;
                case Cmp::Ge:
                case Cmp::Gt: return r.base >= c;
            }
            return false;
    }
    return false;
}

}  // namespace

bool Guard::satisfied(const Rat& value) const {
    return std::all_of(atoms.begin(), atoms.end(),
                       [&](const GuardAtom& a) { return atom_satisfied(a, value); });
}

bool Guard::allows_region(const Region& region) const {
    return std::all_of(atoms.begin(), atoms.end(),
                       [&](const GuardAtom& a) { return atom_allows_region(a, region); });
}

bool Guard::satisfiable() const {
    // Intersect the atoms into [lo, hi] with strictness flags; constants are
    // integers so half-unit probes are unnecessary: track bounds exactly.
    Rat lo = 0;
    bool lo_strict = false;  // clock values live in [0, oo)
    std::optional<Rat> hi;
    bool hi_strict = false;
    for (const GuardAtom& a : atoms) {
        Rat c(a.constant);
        switch (a.cmp) {
            case Cmp::Lt:
                if (!hi || c < *hi || (c == *hi && !hi_strict)) { hi = c; hi_strict = true; }
                break;
            case Cmp::Le:
                if (!hi || c < *hi) { hi = c; hi_strict = false; }
                break;
            case Cmp::Eq:
                if (c > lo || (c == lo && !lo_strict)) { lo = c; lo_strict = false; }
                if (!hi || c < *hi) { hi = c; hi_strict = false; }
                break;
            case Cmp::Ge:
                if (c > lo) { lo = c; lo_strict = false; }
                break;
            case Cmp::Gt:
                if (c > lo || (c == lo && !lo_strict)) { lo = c; lo_strict = true; }
                break;
        }
    }
    if (!hi) return true;
    if (lo < *hi) return true;
    return lo == *hi && !lo_strict && !hi_strict;
}

long long Guard::max_constant() const {
    long long m = 0;
    for (const GuardAtom& a : atoms) m = std::max(m, a.constant);
    return m;
}

std::string Guard::to_string() const {
    if (atoms.empty()) return "true";
    std::ostringstream out;
    for (std::size_t i = 0; i < atoms.size(); ++i) {
        if (i) out << " && ";
        out << atoms[i].clock << " " << cmp_to_string(atoms[i].cmp) << " "
            << atoms[i].constant;
    }
    return out.str();
}

// ---------------------------------------------------------------------------
// Automata
// ---------------------------------------------------------------------------

int TimedAutomaton::location_index(const std::string& loc) const {
    auto it = std::find(locations.begin(), locations.end(), loc);
    return it == locations.end() ? -1 : static_cast<int>(it - locations.begin());
}

bool TimedAutomaton::has_action(const std::string& action) const {
    return std::find(alphabet.begin(), alphabet.end(), action) != alphabet.end();
}

long long TimedAutomaton::max_constant() const {
    long long m = 0;
    for (const Edge& e : edges) m = std::max(m, e.guard.max_constant());
    return m;
}

std::vector<Region> TimedAutomaton::all_regions() const {
    long long m = max_constant();
    std::vector<Region> out;
    for (long long i = 0; i <= m; ++i) {
        out.push_back(Region::point(i));
        if (i < m) out.push_back(Region::interval(i));
    }
    out.push_back(Region::unbounded(m));
    return out;
}

std::vector<int> TimedAutomaton::edges_from(int location, const std::string& action) const {
    std::vector<int> out;
    for (std::size_t i = 0; i < edges.size(); ++i)
        if (edges[i].source == location && edges[i].action == action)
            out.push_back(static_cast<int>(i));
    return out;
}

std::vector<Diagnostic> validate(const TimedAutomaton& a) {
    std::vector<Diagnostic> out;
    auto error = [&](const std::string& m) { out.push_back({true, m}); };
    auto warn = [&](const std::string& m) { out.push_back({false, m}); };

    if (a.clocks.empty()) error("no clock declared");
    if (a.clocks.size() > 1) error("multi-clock automata are unsupported (declared " +
                                   std::to_string(a.clocks.size()) + " clocks)");
    if (a.initial.empty()) error("no initial location");
    for (int l : a.initial)
        if (l < 0 || l >= static_cast<int>(a.locations.size()))
            error("initial location index out of range");
    for (int l : a.accepting)
        if (l < 0 || l >= static_cast<int>(a.locations.size()))
            error("accepting location index out of range");

    std::set<std::string> used_actions;
    int n = static_cast<int>(a.locations.size());
    for (std::size_t i = 0; i < a.edges.size(); ++i) {
        const Edge& e = a.edges[i];
        std::string where = "edge #" + std::to_string(i);
        if (e.source < 0 || e.source >= n) error(where + ": unknown source location");
        if (e.target < 0 || e.target >= n) error(where + ": unknown target location");
        if (!a.has_action(e.action))
            error(where + ": action '" + e.action + "' not in the alphabet");
        used_actions.insert(e.action);
        for (const GuardAtom& atom : e.guard.atoms)
            if (std::find(a.clocks.begin(), a.clocks.end(), atom.clock) == a.clocks.end())
                error(where + ": guard uses undeclared clock '" + atom.clock + "'");
        for (const std::string& c : e.resets)
            if (std::find(a.clocks.begin(), a.clocks.end(), c) == a.clocks.end())
                error(where + ": resets undeclared clock '" + c + "'");
        if (!e.guard.satisfiable())
            warn(where + ": guard '" + e.guard.to_string() + "' is unsatisfiable");
    }
    for (const std::string& s : a.alphabet)
        if (!used_actions.count(s))
            warn("alphabet symbol '" + s + "' is unused");
    return out;
}

// ---------------------------------------------------------------------------
// Runs
// ---------------------------------------------------------------------------

namespace {

void require_single_clock(const TimedAutomaton& a) {
    if (!a.single_clock())
        throw ModelError("operation requires a single-clock automaton");
}

}  // namespace

std::vector<State> step(const TimedAutomaton& a, const State& s, const Rat& delay,
                        const std::string& action) {
    require_single_clock(a);
    if (delay <= 0) throw ModelError("delays must be positive");
    if (!a.has_action(action)) throw ModelError("unknown action '" + action + "'");
    if (s.location < 0 || s.location >= static_cast<int>(a.locations.size()))
        throw ModelError("state location out of range");
    Rat fired = s.value + delay;
    std::vector<State> out;
    for (int ei : a.edges_from(s.location, action)) {
        const Edge& e = a.edges[ei];
        if (e.guard.satisfied(fired))
            out.push_back({e.target, e.resets_clock() ? Rat(0) : fired});
    }
    return out;
}

std::vector<State> replay(const TimedAutomaton& a, const TimedRun& run) {
    require_single_clock(a);
    std::vector<State> states{run.start};
    for (std::size_t i = 0; i < run.steps.size(); ++i) {
        const RunStep& st = run.steps[i];
        if (st.delay <= 0)
            throw ModelError("step " + std::to_string(i) + ": delays must be positive");
        if (st.edge < 0 || st.edge >= static_cast<int>(a.edges.size()))
            throw ModelError("step " + std::to_string(i) + ": edge index out of range");
        const Edge& e = a.edges[st.edge];
        const State& cur = states.back();
        if (e.source != cur.location)
            throw ModelError("step " + std::to_string(i) + ": edge does not leave " +
                             a.locations[cur.location]);
        Rat fired = cur.value + st.delay;
        if (!e.guard.satisfied(fired))
            throw ModelError("step " + std::to_string(i) + ": guard " +
                             e.guard.to_string() + " violated at value " +
                             rat_to_string(fired, false));
        states.push_back({e.target, e.resets_clock() ? Rat(0) : fired});
    }
    return states;
}

Rat prefix_frequency(const TimedAutomaton& a, const TimedRun& run, std::size_t steps) {
    if (steps > run.steps.size()) throw ModelError("prefix longer than the run");
    if (steps == 0) throw ModelError("prefix frequency needs at least one move");
    TimedRun prefix{run.start, {run.steps.begin(), run.steps.begin() + steps}};
    std::vector<State> states = replay(a, prefix);
    Rat acc = 0, total = 0;
    for (std::size_t i = 0; i < steps; ++i) {
        total += prefix.steps[i].delay;
        if (a.accepting.count(states[i].location)) acc += prefix.steps[i].delay;
    }
    return acc / total;
}

Rat limit_frequency_of_lasso(const TimedAutomaton& a, const TimedRun& stem,
                             const std::vector<RunStep>& cycle) {
    if (cycle.empty()) throw ModelError("lasso cycle is empty");
    std::vector<State> stem_states = replay(a, stem);
    TimedRun whole = stem;
    whole.steps.insert(whole.steps.end(), cycle.begin(), cycle.end());
    std::vector<State> states = replay(a, whole);
    if (states.back() != stem_states.back())
        throw ModelError("lasso cycle does not return to its starting state");
    Rat acc = 0, total = 0;
    for (std::size_t i = 0; i < cycle.size(); ++i) {
        std::size_t pos = stem.steps.size() + i;
        total += cycle[i].delay;
        if (a.accepting.count(states[pos].location)) acc += cycle[i].delay;
    }
    // total > 0 since every delay is positive; the stem contributes nothing
    // to the limit of a time-diverging run.
    return acc / total;
}

bool is_deterministic(const TimedAutomaton& a) {
    require_single_clock(a);
    for (std::size_t i = 0; i < a.edges.size(); ++i)
        for (std::size_t j = i + 1; j < a.edges.size(); ++j) {
            const Edge &e = a.edges[i], &f = a.edges[j];
            if (e.source != f.source || e.action != f.action) continue;
            Guard both = e.guard;
            both.atoms.insert(both.atoms.end(), f.guard.atoms.begin(), f.guard.atoms.end());
            if (both.satisfiable()) return false;
        }
    return true;
}

bool is_complete(const TimedAutomaton& a) {
    require_single_clock(a);
    std::vector<Region> regions = a.all_regions();
    for (int l = 0; l < static_cast<int>(a.locations.size()); ++l)
        for (const std::string& action : a.alphabet)
            for (const Region& r : regions) {
                // Firing points are v + tau with tau > 0, so {0} is unreachable.
                if (r.kind == Region::Kind::Point && r.base == 0) continue;
                bool covered = false;
                for (int ei : a.edges_from(l, action))
                    if (a.edges[ei].guard.allows_region(r)) { covered = true; break; }
                if (!covered) return false;
            }
    return true;
}

std::vector<State> states_after_word(const TimedAutomaton& a, const TimedWord& w) {
    require_single_clock(a);
    std::set<State> current;
    for (int l : a.initial) current.insert({l, Rat(0)});
    for (const Letter& letter : w) {
        std::set<State> next;
        for (const State& s : current)
            for (const State& t : step(a, s, letter.delay, letter.action)) next.insert(t);
        current = std::move(next);
        if (current.empty()) break;
    }
    return {current.begin(), current.end()};
}

}  // namespace tafreq
