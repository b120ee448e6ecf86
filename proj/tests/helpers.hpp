#ifndef TAFREQ_TESTS_HELPERS_HPP
#define TAFREQ_TESTS_HELPERS_HPP

#include <fstream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "tafreq/frontend.hpp"
#include "tafreq/model.hpp"

namespace tafreq::testing {

inline std::string data_path(const std::string& name) {
#ifdef TAFREQ_TEST_DATA
    return std::string(TAFREQ_TEST_DATA) + "/" + name;
#else
    return "tests/data/" + name;
#endif
}

inline std::string slurp(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    std::ostringstream out;
    out << in.rdbuf();
    return out.str();
}

inline TimedAutomaton fixture(const std::string& name) {
    return parse_model({slurp(data_path(name)), data_path(name)});
}

/// Random single-clock automaton: 2..5 locations, 1..2 actions, constants
/// bounded by 2, every location gets at least one outgoing edge so random
/// walks do not get stuck too often.
inline TimedAutomaton random_automaton(std::mt19937& rng) {
    std::uniform_int_distribution<int> locs(2, 5);
    std::uniform_int_distribution<int> coin(0, 1);
    std::uniform_int_distribution<int> constant(0, 2);
    std::uniform_int_distribution<int> kind(0, 4);

    TimedAutomaton a;
    a.name = "random";
    a.clocks = {"x"};
    int n = locs(rng);
    for (int i = 0; i < n; ++i) a.locations.push_back("l" + std::to_string(i));
    int actions = 1 + coin(rng);
    a.alphabet = {"a"};
    if (actions == 2) a.alphabet.push_back("b");
    a.initial = {0};
    for (int i = 0; i < n; ++i)
        if (coin(rng)) a.accepting.insert(i);

    std::uniform_int_distribution<int> loc(0, n - 1);
    std::uniform_int_distribution<int> extra(0, 2);
    auto make_guard = [&]() {
        Guard g;
        switch (kind(rng)) {
            case 0: break;  // true
            case 1: g.atoms.push_back({"x", Cmp::Lt, constant(rng) + 1}); break;
            case 2: g.atoms.push_back({"x", Cmp::Eq, constant(rng)}); break;
            case 3: g.atoms.push_back({"x", Cmp::Gt, constant(rng)}); break;
            default:
                g.atoms.push_back({"x", Cmp::Ge, constant(rng)});
                g.atoms.push_back({"x", Cmp::Le, constant(rng) + 2});
                break;
        }
        return g;
    };
    for (int i = 0; i < n; ++i) {
        int m = 1 + extra(rng);
        for (int j = 0; j < m; ++j) {
            Edge e;
            e.source = i;
            e.target = loc(rng);
            e.action = a.alphabet[static_cast<std::size_t>(coin(rng)) % a.alphabet.size()];
            e.guard = make_guard();
            if (coin(rng)) e.resets = {"x"};
            a.edges.push_back(e);
        }
    }
    return a;
}

/// Random finite run of up to `steps` moves starting from an initial
/// location with valuation 0.  Delays are rationals k/denominator.  The run
/// simply stops early when no edge is enabled at any sampled delay.
inline TimedRun random_run(const TimedAutomaton& a, std::mt19937& rng, int steps,
                           int denominator = 4) {
    TimedRun run;
    run.start = {*a.initial.begin(), Rat(0)};
    State cur = run.start;
    long long m = a.max_constant();
    std::uniform_int_distribution<int> num(1, static_cast<int>(denominator * (m + 2)));
    for (int i = 0; i < steps; ++i) {
        bool moved = false;
        for (int attempt = 0; attempt < 12 && !moved; ++attempt) {
            Rat delay(num(rng), denominator);
            Rat fired = cur.value + delay;
            std::vector<int> enabled;
            for (std::size_t e = 0; e < a.edges.size(); ++e)
                if (a.edges[e].source == cur.location && a.edges[e].guard.satisfied(fired))
                    enabled.push_back(static_cast<int>(e));
            if (enabled.empty()) continue;
            int pick = enabled[static_cast<std::size_t>(rng()) % enabled.size()];
            run.steps.push_back({delay, pick});
            cur.location = a.edges[static_cast<std::size_t>(pick)].target;
            cur.value = a.edges[static_cast<std::size_t>(pick)].resets_clock() ? Rat(0) : fired;
            moved = true;
        }
        if (!moved) break;
    }
    return run;
}

}  // namespace tafreq::testing

#endif  // TAFREQ_TESTS_HELPERS_HPP
