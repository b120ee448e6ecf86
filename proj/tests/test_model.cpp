#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "tafreq/model.hpp"

#include <random>

#include "helpers.hpp"

using namespace tafreq;
using tafreq::testing::fixture;

TEST_CASE("regions classify valuations") {
    long long m = 2;
    CHECK(Region::of(Rat(0), m) == Region::point(0));
    CHECK(Region::of(Rat(1, 2), m) == Region::interval(0));
    CHECK(Region::of(Rat(1), m) == Region::point(1));
    CHECK(Region::of(Rat(3, 2), m) == Region::interval(1));
    CHECK(Region::of(Rat(2), m) == Region::point(2));
    CHECK(Region::of(Rat(5, 2), m) == Region::unbounded(2));
    CHECK(Region::of(Rat(100), m) == Region::unbounded(2));
    for (const Rat& v : {Rat(0), Rat(1, 2), Rat(1), Rat(3, 2), Rat(2), Rat(7, 3)})
        CHECK(Region::of(v, m).contains(v));
}

TEST_CASE("guards against regions agree with pointwise satisfaction") {
    Guard g;
    g.atoms.push_back({"x", Cmp::Lt, 1});
    CHECK(g.satisfied(Rat(1, 2)));
    CHECK_FALSE(g.satisfied(Rat(1)));
    CHECK(g.allows_region(Region::point(0)));
    CHECK(g.allows_region(Region::interval(0)));
    CHECK_FALSE(g.allows_region(Region::point(1)));
    CHECK_FALSE(g.allows_region(Region::unbounded(1)));

    Guard eq;
    eq.atoms.push_back({"x", Cmp::Eq, 1});
    CHECK(eq.allows_region(Region::point(1)));
    CHECK_FALSE(eq.allows_region(Region::interval(0)));
    CHECK_FALSE(eq.allows_region(Region::interval(1)));

    Guard range;  // 1 <= x <= 2 does not cover all of (1,2)? it does; (2,3) no
    range.atoms.push_back({"x", Cmp::Ge, 1});
    range.atoms.push_back({"x", Cmp::Le, 2});
    CHECK(range.allows_region(Region::interval(1)));
    CHECK_FALSE(range.allows_region(Region::unbounded(2)));
    CHECK(range.satisfiable());

    Guard contra;
    contra.atoms.push_back({"x", Cmp::Lt, 1});
    contra.atoms.push_back({"x", Cmp::Gt, 1});
    CHECK_FALSE(contra.satisfiable());
}

TEST_CASE("guard/region agreement on sampled valuations") {
    std::mt19937 rng(7);
    std::uniform_int_distribution<int> c(0, 3);
    std::uniform_int_distribution<int> num(0, 14);
    std::uniform_int_distribution<int> k(0, 4);
    for (int round = 0; round < 500; ++round) {
        Guard g;
        Cmp cmp = static_cast<Cmp>(k(rng));
        g.atoms.push_back({"x", cmp, c(rng)});
        long long m = g.max_constant();
        Rat v(num(rng), 3);
        Region r = Region::of(v, m);
        // allows_region means every point of the region satisfies the guard.
        if (g.allows_region(r)) CHECK(g.satisfied(v));
        // For single atoms, regions are never split: pointwise satisfaction
        // of any region point implies the whole region satisfies it.
        if (g.satisfied(v)) CHECK(g.allows_region(r));
    }
}

TEST_CASE("validate flags structural problems") {
    TimedAutomaton a = fixture("reset_loop.ta");
    CHECK(validate(a).empty());

    TimedAutomaton two = fixture("two_clocks.ta");
    auto diags = validate(two);
    bool multi = false;
    for (const auto& d : diags) multi |= d.error;
    CHECK(multi);

    TimedAutomaton noinit = a;
    noinit.initial.clear();
    CHECK_FALSE(validate(noinit).empty());
}

TEST_CASE("step and replay follow the edge relation") {
    TimedAutomaton a = fixture("reset_loop.ta");
    State s{0, Rat(0)};
    CHECK(step(a, s, Rat(1, 2), "a").empty());          // guard x == 1 not met
    auto next = step(a, s, Rat(1), "a");
    REQUIRE(next.size() == 1);
    CHECK(next[0].location == 1);
    CHECK(next[0].value == Rat(0));

    CHECK_THROWS_AS(step(a, s, Rat(0), "a"), ModelError);
    CHECK_THROWS_AS(step(a, s, Rat(1), "zz"), ModelError);

    TimedRun run;
    run.start = s;
    run.steps = {{Rat(1), 0}, {Rat(1, 3), 1}, {Rat(1, 3), 2}};
    auto visited = replay(a, run);
    REQUIRE(visited.size() == 4);
    CHECK(visited[3].location == 1);
    CHECK(visited[3].value == Rat(1, 3));  // l1 -> l2 resets; l2 -> l1 does not

    TimedRun bad = run;
    bad.steps[1].delay = Rat(2);  // violates x < 1
    CHECK_THROWS_AS(replay(a, bad), ModelError);
}

TEST_CASE("prefix frequencies of the running example") {
    // (1,a) . ((1/3,a)(1/3,a))^n has prefix frequency (n/3) / (1 + 2n/3).
    TimedAutomaton a = fixture("reset_loop.ta");
    TimedRun run;
    run.start = {0, Rat(0)};
    run.steps.push_back({Rat(1), 0});
    for (int n = 1; n <= 50; ++n) {
        run.steps.push_back({Rat(1, 3), 1});
        run.steps.push_back({Rat(1, 3), 2});
        Rat expect = Rat(n, 3) / (1 + Rat(2 * n, 3));
        CHECK(prefix_frequency(a, run, run.steps.size()) == expect);
    }
    CHECK(prefix_frequency(a, run, 3) == Rat(1, 5));

    // Lasso limit: the (1/3,a)(1/3,a) cycle spends half its time accepting.
    TimedRun stem;
    stem.start = {0, Rat(0)};
    stem.steps = {{Rat(1), 0}, {Rat(1, 3), 1}, {Rat(1, 3), 2}};
    std::vector<RunStep> cycle = {{Rat(1, 3), 1}, {Rat(1, 3), 2}};
    CHECK(limit_frequency_of_lasso(a, stem, cycle) == Rat(1, 2));
}

TEST_CASE("frequency ignores delays of non-accepting locations") {
    TimedAutomaton a = fixture("free_alternation.ta");  // l0 -> l1 -> l0, only l1 accepts
    TimedRun run;
    run.start = {0, Rat(0)};
    run.steps = {{Rat(3), 0}, {Rat(1), 1}, {Rat(2), 0}, {Rat(2), 1}};
    // Accepting time = delays charged to l1 = 1 + 2; total = 8.
    CHECK(prefix_frequency(a, run, 4) == Rat(3, 8));
    CHECK(prefix_frequency(a, run, 1) == Rat(0));
}

TEST_CASE("determinism and completeness") {
    CHECK(is_deterministic(fixture("reset_loop.ta")));
    CHECK_FALSE(is_complete(fixture("reset_loop.ta")));  // no edge for x > 1 in l0
    CHECK(is_deterministic(fixture("sink_loop.ta")));
    CHECK(is_complete(fixture("sink_loop.ta")));
    CHECK(is_deterministic(fixture("free_alternation.ta")));
    CHECK(is_complete(fixture("free_alternation.ta")));

    TimedAutomaton nd = fixture("sink_loop.ta");
    Edge dup = nd.edges[0];
    nd.edges.push_back(dup);
    CHECK_FALSE(is_deterministic(nd));
}

TEST_CASE("states_after_word tracks the reachable set") {
    TimedAutomaton a = fixture("reset_loop.ta");
    TimedWord w = {{Rat(1), "a"}, {Rat(1, 2), "a"}};
    auto states = states_after_word(a, w);
    REQUIRE(states.size() == 1);
    CHECK(states[0].location == 2);
    CHECK(states[0].value == Rat(0));

    TimedWord stuck = {{Rat(1, 2), "a"}};
    CHECK(states_after_word(a, stuck).empty());
}

TEST_CASE("random runs replay cleanly") {
    std::mt19937 rng(11);
    for (int i = 0; i < 50; ++i) {
        TimedAutomaton a = tafreq::testing::random_automaton(rng);
        TimedRun run = tafreq::testing::random_run(a, rng, 12);
        auto visited = replay(a, run);
        CHECK(visited.size() == run.steps.size() + 1);
        if (!run.steps.empty()) {
            Rat f = prefix_frequency(a, run, run.steps.size());
            CHECK(f >= 0);
            CHECK(f <= 1);
        }
    }
}
