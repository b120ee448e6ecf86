#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "tafreq/zeno.hpp"

#include <algorithm>
#include <random>

#include "helpers.hpp"

using namespace tafreq;
using tafreq::testing::fixture;

namespace {

// Abstraction of a concrete reachable-state set of the tagged automaton:
// integer clock values into gamma, fractional values into h grouped by
// fractional part (increasing), values beyond M into gamma_prime.
AbstractConf abstract_of(const std::vector<State>& states, long long m) {
    AbstractConf conf;
    std::map<Rat, std::set<std::pair<int, long long>>> letters;
    for (const State& s : states) {
        if (s.value > m) {
            conf.gamma_prime.insert(s.location);
            continue;
        }
        Int ip = rat_floor(s.value);
        Rat frac = s.value - Rat(ip);
        if (frac == 0)
            conf.gamma.insert({s.location, static_cast<long long>(ip)});
        else
            letters[frac].insert({s.location, static_cast<long long>(ip)});
    }
    for (auto& [frac, letter] : letters) conf.h.push_back(letter);
    return conf;
}

}  // namespace

TEST_CASE("tagging doubles the automaton and closes the b-copy") {
    TimedAutomaton a = fixture("sink_loop.ta");
    TaggedAutomaton b = tag_double(a);
    CHECK(b.base_locations == 2);
    CHECK(b.automaton.locations.size() == 4);
    // Accepting locations of B are exactly the b-copy.
    for (int l : b.automaton.accepting) CHECK(b.b_tagged(l));
    // No edge leaves the b-copy back to the w-copy.
    for (const Edge& e : b.automaton.edges)
        if (b.b_tagged(e.source)) CHECK(b.b_tagged(e.target));
    // A run has positive accepting time iff it dwells in an accepting
    // location at least once; the accepting initial location starts tagged.
    for (int l : b.automaton.initial)
        CHECK(b.b_tagged(l) == (a.accepting.count(l % b.base_locations) > 0));
}

TEST_CASE("tail automaton shape and guard abstraction") {
    TimedAutomaton a = fixture("reset_loop.ta");
    TaggedAutomaton b = tag_double(a);
    TailAutomaton bf = build_tail_automaton(b);
    CHECK(bf.max_constant == 1);
    CHECK(bf.locations == 6);
    CHECK(bf.state_count() == 6 * 2);
    // An edge guarded x == 1 encloses no interval region, so it never
    // appears in the tail automaton.
    for (const auto& per_state : bf.next)
        for (std::size_t q = 0; q < per_state.size(); ++q)
            for (int t : per_state[q]) {
                CHECK(t >= 0);
                CHECK(t < bf.state_count());
            }
    // reset_loop's l0 -> l1 edge (x == 1) is interval-infeasible: the w-copy of l0
    // has no outgoing tail edges at any counter.
    for (const auto& per_state : bf.next)
        for (long long c = 0; c <= bf.max_constant; ++c)
            CHECK(per_state[static_cast<std::size_t>(bf.state_of(0, c))].empty());
}

TEST_CASE("Buechi universality of tail automata is monotone in the start set") {
    std::mt19937 rng(73);
    for (const char* name : {"free_alternation.ta", "sink_loop.ta"}) {
        TailAutomaton bf = build_tail_automaton(tag_double(fixture(name)));
        BadSetOracle oracle(bf);
        int n = bf.state_count();
        std::uniform_int_distribution<int> pick(0, n - 1);
        for (int round = 0; round < 50; ++round) {
            std::set<int> small, big;
            for (int i = 0; i < 3; ++i) small.insert(pick(rng));
            big = small;
            for (int i = 0; i < 3; ++i) big.insert(pick(rng));
            if (oracle.universal(small)) CHECK(oracle.universal(big));
            if (!oracle.universal(big)) CHECK_FALSE(oracle.universal(small));
        }
        CHECK_FALSE(oracle.universal({}));
    }
}

TEST_CASE("buchi_universal against explicit lasso words") {
    // In sink_loop's tail automaton, starting from the b-copy of l1 at any
    // counter: the only edge loops on l1 within the b-copy, so every word
    // over {a} is accepted.
    TimedAutomaton a = fixture("sink_loop.ta");
    TaggedAutomaton b = tag_double(a);
    TailAutomaton bf = build_tail_automaton(b);
    int l1b = b.base_locations + 1;  // b-copy of l1
    CHECK(buchi_universal(bf, {bf.state_of(l1b, 0)}));
    // The w-copy of l1 can never reach an accepting (b-tagged) state:
    // switching copies requires entering an accepting location, but l1 is
    // the only location reachable from l1 and it is not accepting.
    CHECK_FALSE(buchi_universal(bf, {bf.state_of(1, 0)}));
}

TEST_CASE("embedding is a partial order compatible with successors") {
    TimedAutomaton a = fixture("free_alternation.ta");
    TaggedAutomaton b = tag_double(a);
    AbstractConf init = abstract_initial(b);
    CHECK(conf_embeds(init, init));

    AbstractConf smaller = init;
    if (!smaller.gamma.empty()) smaller.gamma.erase(smaller.gamma.begin());
    CHECK(conf_embeds(smaller, init));
    CHECK((conf_embeds(init, smaller) == (init == smaller)));

    // Successor compatibility: successors of an embedded configuration are
    // covered by successors of the larger one.
    for (const std::string& act : a.alphabet) {
        auto small_succ = abstract_successors(smaller, b, act);
        auto big_succ = abstract_successors(init, b, act);
        for (const AbstractConf& s : small_succ) {
            bool covered = false;
            for (const AbstractConf& t : big_succ) covered |= conf_embeds(s, t);
            CHECK(covered);
        }
    }
}

TEST_CASE("abstract successors simulate concrete subset steps") {
    std::mt19937 rng(79);
    for (const char* name : {"free_alternation.ta", "sink_loop.ta", "reset_loop.ta"}) {
        TimedAutomaton a = fixture(name);
        TaggedAutomaton b = tag_double(a);
        long long m = b.automaton.max_constant();
        std::uniform_int_distribution<int> num(1, 5);
        std::uniform_int_distribution<int> den_pick(0, 2);
        const int dens[] = {3, 4, 7};
        int words = 0;
        while (words < 100) {
            // Random concrete word of up to 6 letters with small delays.
            std::vector<State> cur;
            for (int l : b.automaton.initial) cur.push_back({l, Rat(0)});
            bool ok = true;
            int len = 1 + static_cast<int>(rng() % 6);
            for (int i = 0; i < len && ok; ++i) {
                Rat tau(num(rng), dens[den_pick(rng)]);
                std::string act =
                    a.alphabet[static_cast<std::size_t>(rng()) % a.alphabet.size()];
                AbstractConf before = abstract_of(cur, m);
                // Concrete subset step of the tagged automaton.
                std::set<State> next;
                for (const State& s : cur)
                    for (const State& t : step(b.automaton, s, tau, act))
                        next.insert(t);
                cur.assign(next.begin(), next.end());
                AbstractConf after = abstract_of(cur, m);
                bool found = false;
                for (const AbstractConf& s : abstract_successors(before, b, act))
                    found |= (s == after);
                CHECK_MESSAGE(found, name << " word step " << i);
                ok = !cur.empty();
            }
            ++words;
        }
    }
}

TEST_CASE("Zeno universality on the fixtures") {
    DecisionRecord c = zeno_universality(fixture("sink_loop.ta"));
    CHECK(c.answer);
    CHECK(c.kind == "zeno-universality");

    CHECK_FALSE(zeno_universality(fixture("sink_loop_noacc.ta")).answer);
    CHECK(zeno_universality(fixture("free_alternation.ta")).answer);
    // reset_loop rejects Zeno words that start with a letter at time < 1.
    CHECK_FALSE(zeno_universality(fixture("reset_loop.ta")).answer);
}

TEST_CASE("antichain trace configurations are pairwise incomparable") {
    std::vector<std::string> trace;
    zeno_universality(fixture("free_alternation.ta"), &trace);
    CHECK_FALSE(trace.empty());
    for (const std::string& line : trace) {
        CHECK(line.find("\"gamma\"") != std::string::npos);
    }
}

TEST_CASE("multi-clock input is rejected") {
    CHECK_THROWS_AS(zeno_universality(fixture("two_clocks.ta")), ModelError);
}
