#include "tafreq/oracle.hpp"

#include <algorithm>
#include <deque>
#include <functional>
#include <random>

namespace tafreq {

// ---------------------------------------------------------------------------
// Simple-cycle enumeration
// ---------------------------------------------------------------------------

std::set<Rat> enumerate_simple_cycle_ratios(const CornerPointGraph& g, const Scc& scc) {
    if (scc.states.size() > 40)
        throw TooLarge("cycle enumeration limited to 40 states, SCC has " +
                       std::to_string(scc.states.size()));
    std::map<int, std::vector<int>> adj;  // internal adjacency
    for (int ei : scc.internal_edges) adj[g.edges[ei].source].push_back(ei);

    std::set<Rat> ratios;
    // Simple cycles rooted at their smallest state (blocked DFS per root).
    for (int root : scc.states) {
        std::set<int> on_path;
        std::function<void(int, Int, Int)> dfs = [&](int v, Int cost, Int reward) {
            for (int ei : adj[v]) {
                int t = g.edges[ei].target;
                if (t < root) continue;  // canonical root = minimal state
                Int c = cost + g.edges[ei].cost;
                Int r = reward + g.edges[ei].reward;
                if (t == root) {
                    if (r > 0) ratios.insert(Rat(c, r));
                    continue;
                }
                if (on_path.count(t)) continue;
                on_path.insert(t);
                dfs(t, c, r);
                on_path.erase(t);
            }
        };
        on_path.insert(root);
        dfs(root, 0, 0);
    }
    return ratios;
}

// ---------------------------------------------------------------------------
// Random run sampling
// ---------------------------------------------------------------------------

SampleStats sample_run_frequencies(const TimedAutomaton& a, const SamplingConfig& cfg,
                                   int runs) {
    if (!a.single_clock()) throw MultiClock("sampling requires a single clock");
    std::mt19937 rng(cfg.seed);
    long long m = a.max_constant();
    int n = cfg.granularity;
    SampleStats stats;
    std::vector<int> initial(a.initial.begin(), a.initial.end());

    for (int run = 0; run < runs; ++run) {
        State s{initial[rng() % initial.size()], Rat(0)};
        Rat acc = 0, total = 0;
        for (int step = 0; step < cfg.depth; ++step) {
            // All enabled (delay, edge) pairs on the grid, plus pure-delay
            // moves (edge -1): a run may let time pass without firing, which
            // is how sampled prefixes approach the divergent-dwell suprema.
            std::vector<std::pair<Rat, int>> moves;
            for (int k = 1; k <= n * (m + 1); ++k) {
                Rat v = s.value + Rat(k, n);
                moves.push_back({Rat(k, n), -1});
                for (std::size_t ei = 0; ei < a.edges.size(); ++ei)
                    if (a.edges[ei].source == s.location && a.edges[ei].guard.satisfied(v))
                        moves.push_back({Rat(k, n), static_cast<int>(ei)});
            }
            auto [delay, ei] = moves[rng() % moves.size()];
            if (a.accepting.count(s.location)) acc += delay;
            total += delay;
            if (ei < 0) {
                s.value += delay;
                continue;
            }
            const Edge& e = a.edges[static_cast<std::size_t>(ei)];
            s.location = e.target;
            s.value = e.resets_clock() ? Rat(0) : s.value + delay;
        }
        if (total == 0) continue;
        Rat freq = acc / total;
        if (stats.runs == 0 || freq < stats.min) stats.min = freq;
        if (stats.runs == 0 || freq > stats.max) stats.max = freq;
        int bin = std::min(9, static_cast<int>(rat_floor(freq * 10)));
        ++stats.histogram[bin];
        ++stats.runs;
    }
    return stats;
}

// ---------------------------------------------------------------------------
// Bounded lasso-word universality oracle
// ---------------------------------------------------------------------------

namespace {

struct LassoWord {
    std::vector<Letter> stem;
    std::vector<Letter> cycle;  // nonempty
};

// Clock values above M are interchangeable for every guard; clamp for a
// finite state space.
Rat clamp_value(const Rat& v, long long m) { return v > m ? Rat(m + 1) : v; }

// Non-Zeno reading: the cycle repeats verbatim, so runs live in the finite
// product (location, clamped value, cycle position).  The best achievable
// limsup frequency is the maximal mean accepting-time ratio over reachable
// product cycles.
bool nonzeno_word_satisfiable(const TimedAutomaton& a, const LassoWord& w,
                              const ThresholdQuery& q) {
    struct Node {
        State s;
        int pos;  // position in cycle
        bool operator<(const Node& o) const {
            return s < o.s || (s == o.s && pos < o.pos);
        }
    };
    long long m = a.max_constant();
    // States after the stem.
    std::set<State> cur;
    for (int l : a.initial) cur.insert({l, Rat(0)});
    for (const Letter& letter : w.stem) {
        std::set<State> nxt;
        for (const State& s : cur)
            for (const State& t : step(a, s, letter.delay, letter.action))
                nxt.insert({t.location, clamp_value(t.value, m)});
        cur = nxt;
    }
    if (cur.empty()) return false;

    // Product graph over one cycle letter at a time, weighted by the
    // accepting and total time of the letter's delay.
    std::map<Node, int> id;
    std::vector<Node> nodes;
    struct PEdge {
        int from, to;
        Rat acc, total;
    };
    std::vector<PEdge> pedges;
    std::deque<Node> work;
    auto intern = [&](const Node& nd) {
        auto [it, fresh] = id.insert({nd, static_cast<int>(nodes.size())});
        if (fresh) {
            nodes.push_back(nd);
            work.push_back(nd);
        }
        return it->second;
    };
    for (const State& s : cur) intern({s, 0});
    while (!work.empty()) {
        Node nd = work.front();
        work.pop_front();
        const Letter& letter = w.cycle[nd.pos];
        Rat acc = a.accepting.count(nd.s.location) ? letter.delay : Rat(0);
        for (const State& t : step(a, nd.s, letter.delay, letter.action)) {
            Node to{{t.location, clamp_value(t.value, m)},
                    (nd.pos + 1) % static_cast<int>(w.cycle.size())};
            pedges.push_back({id.at(nd), intern(to), acc, letter.delay});
        }
    }
    // Max mean ratio over product cycles: check per SCC by a simple-cycle
    // walk (graphs here are tiny) -- a cycle with acc/total beating the
    // threshold exists iff a negative cycle exists for weights
    // threshold*total - acc (strict) resp. its non-strict variant.
    // Use exhaustive simple-cycle enumeration for exactness.
    int nn = static_cast<int>(nodes.size());
    std::vector<std::vector<int>> adj(nn);
    for (std::size_t i = 0; i < pedges.size(); ++i) adj[pedges[i].from].push_back(i);
    bool ok = false;
    for (int root = 0; root < nn && !ok; ++root) {
        std::set<int> on_path{root};
        std::function<void(int, Rat, Rat)> dfs = [&](int v, Rat acc, Rat total) {
            if (ok) return;
            for (int ei : adj[v]) {
                const PEdge& e = pedges[ei];
                if (e.to < root) continue;
                Rat na = acc + e.acc, nt = total + e.total;
                if (e.to == root) {
                    if (nt > 0 && (q.strict ? Rat(na / nt) > q.threshold
                                            : Rat(na / nt) >= q.threshold))
                        ok = true;
                    continue;
                }
                if (on_path.count(e.to)) continue;
                on_path.insert(e.to);
                dfs(e.to, na, nt);
                on_path.erase(e.to);
            }
        };
        dfs(root, 0, 0);
    }
    return ok;
}

// Zeno reading: delays of the k-th cycle iteration are scaled by 2^-k, so
// the word is Zeno.  Supported predicate: frequency > 0, i.e. some run reads
// the whole word and dwells in an accepting location at least once.
bool zeno_word_satisfiable(const TimedAutomaton& a, const LassoWord& w) {
    long long m = a.max_constant();
    struct Track {
        State s;
        bool visited;  // dwelt in an accepting location already
        bool operator<(const Track& o) const {
            return s < o.s || (s == o.s && visited < o.visited);
        }
    };
    std::set<Track> cur;
    for (int l : a.initial) cur.insert({{l, Rat(0)}, false});

    auto advance = [&](const std::set<Track>& from, const Letter& letter, Rat scale) {
        std::set<Track> nxt;
        for (const Track& tr : from) {
            bool visited = tr.visited || a.accepting.count(tr.s.location) > 0;
            for (const State& t : step(a, tr.s, letter.delay * scale, letter.action))
                nxt.insert({{t.location, clamp_value(t.value, m + 1)}, visited});
        }
        return nxt;
    };

    for (const Letter& letter : w.stem) {
        cur = advance(cur, letter, 1);
        if (cur.empty()) return false;
    }
    Rat cycle_total = 0;
    for (const Letter& letter : w.cycle) cycle_total += letter.delay;

    // Simulate scaled iterations until the remaining total delay is < 1 and
    // no tracked value can cross an integer anymore; afterwards every guard
    // truth value is fixed by the value's region.
    Rat scale = 1;
    for (int iter = 0;; ++iter) {
        Rat remaining = cycle_total * scale * 2;  // sum of all future delays
        bool frozen = remaining < 1;
        if (frozen)
            for (const Track& tr : cur) {
                Int next_int = rat_floor(tr.s.value) + 1;
                if (Rat(next_int) < tr.s.value + remaining) frozen = false;
            }
        if (frozen) break;
        for (const Letter& letter : w.cycle) {
            cur = advance(cur, letter, scale);
            if (cur.empty()) return false;
        }
        scale /= 2;
        if (iter > 200) return false;  // defensive; cannot happen
    }

    // Frozen tail: finite graph over (location, region, cycle position,
    // visited flag); a run extends forever iff it can reach a cycle.
    struct FNode {
        int location;
        Region region;
        int pos;
        bool visited;
        auto key() const {
            return std::tuple(location, static_cast<int>(region.kind), region.base, pos,
                              visited);
        }
        bool operator<(const FNode& o) const { return key() < o.key(); }
    };
    auto region_ahead = [&](const Rat& v) {
        // Region of v + epsilon (strictly positive future delays, no integer
        // crossings): integers open up into the next interval.
        if (v >= m) return Region::unbounded(m);
        if (denominator(v) == 1) return Region::interval(numerator(v).convert_to<long long>());
        return Region::of(v, m);
    };
    std::map<FNode, int> id;
    std::vector<FNode> nodes;
    std::vector<std::vector<int>> adj;
    std::deque<int> work;
    auto intern = [&](const FNode& nd) {
        auto [it, fresh] = id.insert({nd, static_cast<int>(nodes.size())});
        if (fresh) {
            nodes.push_back(nd);
            adj.push_back({});
            work.push_back(it->second);
        }
        return it->second;
    };
    std::vector<int> start;
    for (const Track& tr : cur)
        start.push_back(intern({tr.s.location, region_ahead(tr.s.value), 0,
                                tr.visited || a.accepting.count(tr.s.location) > 0}));
    while (!work.empty()) {
        int vi = work.front();
        work.pop_front();
        FNode nd = nodes[vi];
        const Letter& letter = w.cycle[nd.pos];
        for (const Edge& e : a.edges) {
            if (e.source != nd.location || e.action != letter.action) continue;
            if (!e.guard.allows_region(nd.region)) continue;
            Region r2 = e.resets_clock()
                            ? (m > 0 ? Region::interval(0) : Region::unbounded(0))
                            : nd.region;
            bool visited = nd.visited || a.accepting.count(e.target) > 0;
            int target = intern(
                {e.target, r2, (nd.pos + 1) % static_cast<int>(w.cycle.size()), visited});
            adj[vi].push_back(target);
        }
        // re-fetch: adj may have grown; nothing else needed
    }
    // Nodes that can continue forever: those reaching a cycle.
    int nn = static_cast<int>(nodes.size());
    // A node lies on or reaches a cycle iff a DFS from it finds a back edge.
    std::vector<int> can(nn, -1);
    std::function<bool(int, std::set<int>&)> reaches_cycle = [&](int v,
                                                                 std::set<int>& on) {
        if (can[v] != -1) return can[v] == 1;
        if (on.count(v)) return true;
        on.insert(v);
        bool ok = false;
        for (int t : adj[v]) {
            if (on.count(t) || reaches_cycle(t, on)) {
                ok = true;
                break;
            }
        }
        on.erase(v);
        can[v] = ok ? 1 : 0;
        return ok;
    };
    for (int s : start) {
        std::set<int> on;
        // Accept iff some reachable node has visited=true and continues
        // forever (flag is monotone along edges).
        std::set<int> seen{s};
        std::deque<int> bfs{s};
        while (!bfs.empty()) {
            int v = bfs.front();
            bfs.pop_front();
            if (nodes[v].visited) {
                std::set<int> on2;
                if (reaches_cycle(v, on2)) return true;
            }
            for (int t : adj[v])
                if (seen.insert(t).second) bfs.push_back(t);
        }
    }
    return false;
}

}  // namespace

bool lasso_word_check(const TimedAutomaton& a, const ThresholdQuery& predicate,
                      int bound) {
    if (!a.single_clock()) throw MultiClock("lasso oracle requires a single clock");
    if (bound < 1) throw ModelError("bound must be positive");
    bool check_nonzeno = predicate.word_class != WordClass::Zeno;
    bool check_zeno = predicate.word_class != WordClass::NonZeno;
    if (check_zeno && !(predicate.threshold == 0 && predicate.strict))
        throw ModelError("the Zeno lasso oracle supports only the positive-frequency "
                         "predicate (threshold 0, strict)");
    long long m = a.max_constant();
    std::vector<Rat> grid;
    for (int k = 1; k <= bound * (m + 1); ++k) grid.push_back(Rat(k, bound));

    // Enumerate all letter sequences of each length recursively.
    std::function<bool(std::vector<Letter>&, int, const std::function<bool()>&)> fill =
        [&](std::vector<Letter>& word, int len, const std::function<bool()>& leaf) {
            if (static_cast<int>(word.size()) == len) return leaf();
            for (const std::string& action : a.alphabet)
                for (const Rat& delay : grid) {
                    word.push_back({delay, action});
                    bool ok = fill(word, len, leaf);
                    word.pop_back();
                    if (!ok) return false;
                }
            return true;
        };

    for (int stem_len = 0; stem_len < bound; ++stem_len)
        for (int cycle_len = 1; stem_len + cycle_len <= bound; ++cycle_len) {
            LassoWord w;
            bool ok = fill(w.stem, stem_len, [&]() {
                return fill(w.cycle, cycle_len, [&]() {
                    if (check_nonzeno && !nonzeno_word_satisfiable(a, w, predicate))
                        return false;
                    if (check_zeno && !zeno_word_satisfiable(a, w)) return false;
                    return true;
                });
            });
            if (!ok) return false;
        }
    return true;
}

}  // namespace tafreq
