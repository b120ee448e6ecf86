#include "tafreq/ratio.hpp"

#include <algorithm>
#include <deque>
#include <functional>
#include <map>
#include <numeric>
#include <set>
#include <sstream>

namespace tafreq {

std::string word_class_name(WordClass c) {
    switch (c) {
        case WordClass::All: return "all";
        case WordClass::NonZeno: return "nonzeno";
        case WordClass::Zeno: return "zeno";
    }
    return "?";
}

std::optional<WordClass> word_class_from_name(const std::string& name) {
    if (name == "all") return WordClass::All;
    if (name == "nonzeno") return WordClass::NonZeno;
    if (name == "zeno") return WordClass::Zeno;
    return std::nullopt;
}

// ---------------------------------------------------------------------------
// SCC decomposition (iterative Tarjan)
// ---------------------------------------------------------------------------

std::vector<Scc> reachable_sccs(const CornerPointGraph& g) {
    int n = static_cast<int>(g.states.size());
    std::vector<int> index(n, -1), low(n, 0), comp(n, -1);
    std::vector<bool> on_stack(n, false);
    std::vector<int> stack;
    int next_index = 0, next_comp = 0;

    struct Frame {
        int v;
        std::size_t edge_pos;
    };
    for (int root = 0; root < n; ++root) {
        if (index[root] != -1) continue;
        std::vector<Frame> call{{root, 0}};
        index[root] = low[root] = next_index++;
        stack.push_back(root);
        on_stack[root] = true;
        while (!call.empty()) {
            Frame& f = call.back();
            if (f.edge_pos < g.out[f.v].size()) {
                int w = g.edges[g.out[f.v][f.edge_pos++]].target;
                if (index[w] == -1) {
                    index[w] = low[w] = next_index++;
                    stack.push_back(w);
                    on_stack[w] = true;
                    call.push_back({w, 0});
                } else if (on_stack[w]) {
                    low[f.v] = std::min(low[f.v], index[w]);
                }
            } else {
                if (low[f.v] == index[f.v]) {
                    while (true) {
                        int w = stack.back();
                        stack.pop_back();
                        on_stack[w] = false;
                        comp[w] = next_comp;
                        if (w == f.v) break;
                    }
                    ++next_comp;
                }
                int v = f.v;
                call.pop_back();
                if (!call.empty()) low[call.back().v] = std::min(low[call.back().v], low[v]);
            }
        }
    }

    std::vector<Scc> all(next_comp);
    for (int v = 0; v < n; ++v) all[comp[v]].states.push_back(v);
    for (std::size_t ei = 0; ei < g.edges.size(); ++ei)
        if (comp[g.edges[ei].source] == comp[g.edges[ei].target])
            all[comp[g.edges[ei].source]].internal_edges.push_back(static_cast<int>(ei));

    std::vector<Scc> out;
    for (Scc& s : all) {
        if (s.internal_edges.empty()) continue;  // no cycle through this SCC
        std::sort(s.states.begin(), s.states.end());
        std::sort(s.internal_edges.begin(), s.internal_edges.end());
        out.push_back(std::move(s));
    }
    std::sort(out.begin(), out.end(),
              [](const Scc& a, const Scc& b) { return a.states.front() < b.states.front(); });
    return out;
}

// ---------------------------------------------------------------------------
// Extremal cycle ratios
// ---------------------------------------------------------------------------

namespace {

// Edge weights for the parametric search: cost or its complement.
struct WeightView {
    const CornerPointGraph& g;
    bool complemented;  // cost' = reward - cost (used for the maximum side)
    Int cost(int e) const {
        return complemented ? Int(g.edges[e].reward - g.edges[e].cost)
                            : Int(g.edges[e].cost);
    }
    Int reward(int e) const { return g.edges[e].reward; }
};

// Bellman-Ford negative-cycle test for weights q*cost - p*reward on the SCC
// subgraph (exact, integer-scaled by the candidate ratio p/q).
bool has_negative_cycle(const WeightView& w, const Scc& scc, const Int& p, const Int& q) {
    std::map<int, int> local;
    for (std::size_t i = 0; i < scc.states.size(); ++i)
        local[scc.states[i]] = static_cast<int>(i);
    int n = static_cast<int>(scc.states.size());
    std::vector<Int> dist(n, 0);
    for (int round = 0; round < n; ++round) {
        bool changed = false;
        for (int ei : scc.internal_edges) {
            Int weight = q * w.cost(ei) - p * w.reward(ei);
            int u = local[w.g.edges[ei].source], v = local[w.g.edges[ei].target];
            if (dist[u] + weight < dist[v]) {
                dist[v] = dist[u] + weight;
                changed = true;
            }
        }
        if (!changed) return false;
    }
    // n relaxation rounds still improving -> negative cycle.
    for (int ei : scc.internal_edges) {
        Int weight = q * w.cost(ei) - p * w.reward(ei);
        int u = local[w.g.edges[ei].source], v = local[w.g.edges[ei].target];
        if (dist[u] + weight < dist[v]) return true;
    }
    return false;
}

// Zero-weight reward-positive cycle at ratio p/q: shortest-path potentials,
// tight-edge subgraph, then a cycle through some reward-carrying tight edge.
std::optional<std::vector<int>> tight_cycle(const WeightView& w, const Scc& scc,
                                            const Int& p, const Int& q) {
    std::map<int, int> local;
    for (std::size_t i = 0; i < scc.states.size(); ++i)
        local[scc.states[i]] = static_cast<int>(i);
    int n = static_cast<int>(scc.states.size());
    std::vector<Int> dist(n, 0);
    for (int round = 0; round < n; ++round)
        for (int ei : scc.internal_edges) {
            Int weight = q * w.cost(ei) - p * w.reward(ei);
            int u = local[w.g.edges[ei].source], v = local[w.g.edges[ei].target];
            if (dist[u] + weight < dist[v]) dist[v] = dist[u] + weight;
        }
    std::vector<int> tight;  // edges with dist[u] + weight == dist[v]
    for (int ei : scc.internal_edges) {
        Int weight = q * w.cost(ei) - p * w.reward(ei);
        int u = local[w.g.edges[ei].source], v = local[w.g.edges[ei].target];
        if (dist[u] + weight == dist[v]) tight.push_back(ei);
    }
    std::map<int, std::vector<int>> tight_out;
    for (int ei : tight) tight_out[w.g.edges[ei].source].push_back(ei);

    for (int seed : tight) {
        if (w.reward(seed) == 0) continue;
        // BFS from target back to source through tight edges.
        int from = w.g.edges[seed].target, to = w.g.edges[seed].source;
        std::map<int, int> via;  // state -> edge used to reach it
        std::deque<int> queue{from};
        via[from] = -1;
        while (!queue.empty()) {
            int v = queue.front();
            queue.pop_front();
            if (v == to) break;
            for (int ei : tight_out[v])
                if (!via.count(w.g.edges[ei].target)) {
                    via[w.g.edges[ei].target] = ei;
                    queue.push_back(w.g.edges[ei].target);
                }
        }
        if (!via.count(to)) continue;
        std::vector<int> cycle;
        for (int v = to; via[v] != -1; v = w.g.edges[via[v]].source)
            cycle.push_back(via[v]);
        std::reverse(cycle.begin(), cycle.end());
        cycle.insert(cycle.begin(), seed);
        // Tight cycles have weight 0 and this one has positive reward.
        return cycle;
    }
    return std::nullopt;
}

// Exact minimal cost/reward ratio over reward-positive cycles of the SCC.
// Ratios lie in [0,1] with denominator bounded by the SCC size, so a
// Stern-Brocot descent with the negative-cycle predicate pins them down.
std::optional<CycleWitness> min_ratio_cycle(const WeightView& w, const Scc& scc) {
    bool any_reward = false;
    for (int ei : scc.internal_edges) any_reward = any_reward || w.reward(ei) > 0;
    if (!any_reward) return std::nullopt;

    Int bound = static_cast<long long>(scc.states.size());
    Int pl = 0, ql = 1, ph = 1, qh = 1;
    if (!has_negative_cycle(w, scc, 1, 1)) {
        pl = 1;  // every cycle has cost >= reward; the minimum is exactly 1
    } else {
        while (ql + qh <= bound) {
            Int pm = pl + ph, qm = ql + qh;
            if (has_negative_cycle(w, scc, pm, qm)) {
                ph = pm;
                qh = qm;
            } else {
                pl = pm;
                ql = qm;
            }
        }
    }
    auto cycle = tight_cycle(w, scc, pl, ql);
    if (!cycle) return std::nullopt;  // cannot happen for a well-formed SCC
    CycleWitness out;
    out.edges = *cycle;
    out.ratio = Rat(pl, ql);
    return out;
}

std::pair<Int, Int> cycle_weights(const CornerPointGraph& g, const std::vector<int>& edges) {
    Int c = 0, r = 0;
    for (int e : edges) {
        c += g.edges[e].cost;
        r += g.edges[e].reward;
    }
    return {c, r};
}

}  // namespace

ExtremalRatios extremal_cycle_ratios(const CornerPointGraph& g, const Scc& scc) {
    ExtremalRatios out;
    out.min = min_ratio_cycle({g, false}, scc);
    if (!out.min) return out;
    std::optional<CycleWitness> comp = min_ratio_cycle({g, true}, scc);
    // cost' = reward - cost, so the complement's minimum m' gives max = 1 - m'.
    comp->ratio = Rat(1) - comp->ratio;
    out.max = comp;
    return out;
}

bool scc_has_discrete_edge(const CornerPointGraph& g, const Scc& scc) {
    for (int ei : scc.internal_edges)
        if (g.edges[static_cast<std::size_t>(ei)].discrete()) return true;
    return false;
}

std::vector<FrequencyInterval> nonzeno_frequency_set(const CornerPointGraph& g) {
    std::vector<FrequencyInterval> intervals;
    for (const Scc& scc : reachable_sccs(g)) {
        if (!scc_has_discrete_edge(g, scc)) continue;
        ExtremalRatios ext = extremal_cycle_ratios(g, scc);
        if (ext.reward_diverging())
            intervals.push_back({ext.min->ratio, ext.max->ratio});
    }
    std::sort(intervals.begin(), intervals.end(),
              [](const FrequencyInterval& a, const FrequencyInterval& b) {
                  return a.lo < b.lo || (a.lo == b.lo && a.hi < b.hi);
              });
    std::vector<FrequencyInterval> merged;
    for (const FrequencyInterval& iv : intervals) {
        if (!merged.empty() && iv.lo <= merged.back().hi)
            merged.back().hi = std::max(merged.back().hi, iv.hi);
        else
            merged.push_back(iv);
    }
    return merged;
}

// ---------------------------------------------------------------------------
// Ratio witness composition
// ---------------------------------------------------------------------------

namespace {

std::vector<int> cycle_states(const CornerPointGraph& g, const std::vector<int>& edges) {
    std::vector<int> out;
    for (int e : edges) out.push_back(g.edges[e].source);
    return out;
}

// Rotates the cycle so it starts (and ends) at `state`.
std::vector<int> rotate_cycle(const CornerPointGraph& g, const std::vector<int>& edges,
                              int state) {
    for (std::size_t i = 0; i < edges.size(); ++i)
        if (g.edges[edges[i]].source == state) {
            std::vector<int> out(edges.begin() + i, edges.end());
            out.insert(out.end(), edges.begin(), edges.begin() + i);
            return out;
        }
    return edges;
}

// Shortest edge path inside the SCC between two states (possibly empty).
std::vector<int> scc_path(const CornerPointGraph& g, const Scc& scc, int from, int to) {
    if (from == to) return {};
    std::set<int> members(scc.states.begin(), scc.states.end());
    std::map<int, int> via;
    std::deque<int> queue{from};
    via[from] = -1;
    while (!queue.empty()) {
        int v = queue.front();
        queue.pop_front();
        for (int ei : g.out[v]) {
            int t = g.edges[ei].target;
            if (!members.count(t) || via.count(t)) continue;
            via[t] = ei;
            if (t == to) {
                std::vector<int> path;
                for (int s = to; via[s] != -1; s = g.edges[via[s]].source)
                    path.push_back(via[s]);
                std::reverse(path.begin(), path.end());
                return path;
            }
            queue.push_back(t);
        }
    }
    throw ModelError("states not connected inside the SCC");
}

}  // namespace

RatioWitness compose_ratio_witness(const CornerPointGraph& g, const Scc& scc,
                                   const Rat& target, const Rat& tolerance) {
    ExtremalRatios ext = extremal_cycle_ratios(g, scc);
    if (!ext.reward_diverging())
        throw ModelError("SCC has no reward-diverging cycle");
    Rat m = ext.min->ratio, big = ext.max->ratio;
    if (target < m || target > big)
        throw ModelError("target ratio outside [" + rat_to_string(m) + ", " +
                         rat_to_string(big) + "]");

    RatioWitness out;
    out.min_cycle = *ext.min;
    out.max_cycle = *ext.max;

    if (m == big) {
        out.min_reps = 1;
        out.max_reps = 0;
        out.achieved = m;
        out.exact = true;
        return out;
    }

    // lambda = (target - m)/(M - m) = p/q; (q-p) R_M laps of the min cycle
    // and p R_m laps of the max cycle mix to exactly (1-lambda) m + lambda M.
    Rat lambda = (target - m) / (big - m);
    Int p = numerator(lambda), q = denominator(lambda);
    auto [cm, rm] = cycle_weights(g, out.min_cycle.edges);
    auto [cM, rM] = cycle_weights(g, out.max_cycle.edges);
    Int a = (q - p) * rM, b = p * rm;
    Int d = gcd(a == 0 ? b : a, b == 0 ? a : b);
    if (d > 1) {
        a /= d;
        b /= d;
    }
    out.min_reps = a;
    out.max_reps = b;

    // Target at an extreme: one cycle alone is an exact schedule.
    if (a == 0 || b == 0) {
        out.achieved = a == 0 ? big : m;
        out.exact = true;
        if (a == 0) out.min_reps = 0;
        if (b == 0) out.max_reps = 0;
        return out;
    }

    // Shared state: rotate both cycles there and the schedule is exact.
    std::vector<int> sm = cycle_states(g, out.min_cycle.edges);
    std::vector<int> sM = cycle_states(g, out.max_cycle.edges);
    int shared = -1;
    for (int s : sm)
        if (std::find(sM.begin(), sM.end(), s) != sM.end()) {
            shared = s;
            break;
        }
    if (shared >= 0) {
        out.min_cycle.edges = rotate_cycle(g, out.min_cycle.edges, shared);
        out.max_cycle.edges = rotate_cycle(g, out.max_cycle.edges, shared);
        out.achieved = Rat(a * cm + b * cM, a * rm + b * rM);
        out.exact = true;
        return out;
    }

    // Disjoint cycles: connect them inside the SCC and repeat the mixed
    // rounds often enough that the connectors' weight dilutes below the
    // tolerance.
    if (tolerance <= 0) throw ModelError("disjoint extremal cycles need a tolerance");
    out.link_min_to_max = scc_path(g, scc, sm.front(), sM.front());
    out.link_max_to_min = scc_path(g, scc, sM.front(), sm.front());
    Int pc = 0, qc = 0;
    for (int e : out.link_min_to_max) {
        pc += g.edges[e].cost;
        qc += g.edges[e].reward;
    }
    for (int e : out.link_max_to_min) {
        pc += g.edges[e].cost;
        qc += g.edges[e].reward;
    }
    // |achieved - target| = |pc - target*qc| / (t*(a rm + b rM) + qc).
    Rat err = pc - target * qc;
    if (err < 0) err = -err;
    Int t = 1;
    if (err > 0) {
        Rat need = (err / tolerance - Rat(qc)) / Rat(a * rm + b * rM);
        Int ceiling = rat_ceil(need);
        if (ceiling > t) t = ceiling;
    }
    out.factor = t;
    out.achieved = Rat(t * (a * cm + b * cM) + pc, t * (a * rm + b * rM) + qc);
    out.exact = out.achieved == target;
    return out;
}

std::string RatioWitness::describe(const CornerPointGraph& g) const {
    std::ostringstream out;
    auto name = [&](const std::vector<int>& edges) {
        std::ostringstream o;
        o << "[";
        for (std::size_t i = 0; i < edges.size(); ++i)
            o << (i ? " " : "") << g.state_name(g.edges[edges[i]].source, false);
        o << "]";
        return o.str();
    };
    out << "repeat:";
    if (min_reps > 0)
        out << " " << (factor * min_reps) << "x min-cycle " << name(min_cycle.edges)
            << " (ratio " << rat_to_string(min_cycle.ratio) << ")";
    if (max_reps > 0)
        out << (min_reps > 0 ? " +" : "") << " " << (factor * max_reps)
            << "x max-cycle " << name(max_cycle.edges) << " (ratio "
            << rat_to_string(max_cycle.ratio) << ")";
    if (!link_min_to_max.empty() || !link_max_to_min.empty()) out << " via connectors";
    out << " => ratio " << rat_to_string(achieved) << (exact ? " (exact)" : " (approx)");
    return out.str();
}

// ---------------------------------------------------------------------------
// Zeno analysis
// ---------------------------------------------------------------------------

namespace {

bool is_bottom_idle(const CornerPointGraph& g, const CpEdge& e) {
    return !e.discrete() && g.states[e.source].pr.corner == Corner::Bottom &&
           g.states[e.target].pr.corner == Corner::Bottom;
}

// States lying on a cycle of zero-reward edges (the abstract Zeno tails).
std::set<int> zero_cycle_states(const CornerPointGraph& g) {
    // SCCs of the zero-reward subgraph.
    CornerPointGraph sub = g;  // reuse Tarjan by masking edges
    sub.edges.clear();
    sub.out.assign(g.states.size(), {});
    for (const CpEdge& e : g.edges)
        if (e.reward == 0) {
            sub.out[e.source].push_back(static_cast<int>(sub.edges.size()));
            sub.edges.push_back(e);
        }
    std::set<int> out;
    for (const Scc& s : reachable_sccs(sub))
        for (int v : s.states) out.insert(v);
    return out;
}

// A cycle of the graph is iterable by a Zeno run iff it avoids punctual
// regions {i} with i >= 1 and unbounded-region idling (both force at least
// one time unit per lap); rewards earned inside an open unit interval are
// compatible with arbitrarily small delays.
bool zeno_iterable_lasso(const CornerPointGraph& g, std::optional<bool> location_class) {
    auto state_ok_prefix = [&](int s) {
        return !location_class ||
               (g.automaton.accepting.count(g.states[s].location) > 0) == *location_class;
    };
    auto state_ok_cycle = [&](int s) {
        if (!state_ok_prefix(s)) return false;
        const PointedRegion& pr = g.states[s].pr;
        return !(pr.region.is_punctual() && pr.region.base >= 1);
    };
    // Reachability through allowed prefix states.
    std::set<int> reach;
    std::deque<int> queue;
    for (int s : g.initial)
        if (state_ok_prefix(s)) {
            reach.insert(s);
            queue.push_back(s);
        }
    while (!queue.empty()) {
        int v = queue.front();
        queue.pop_front();
        for (int ei : g.out[v]) {
            int t = g.edges[ei].target;
            if (state_ok_prefix(t) && !reach.count(t)) {
                reach.insert(t);
                queue.push_back(t);
            }
        }
    }
    // Cycle inside the constrained subgraph.
    CornerPointGraph sub = g;
    sub.edges.clear();
    sub.out.assign(g.states.size(), {});
    for (const CpEdge& e : g.edges) {
        if (is_bottom_idle(g, e)) continue;
        if (!reach.count(e.source) || !reach.count(e.target)) continue;
        if (!state_ok_cycle(e.source) || !state_ok_cycle(e.target)) continue;
        sub.out[e.source].push_back(static_cast<int>(sub.edges.size()));
        sub.edges.push_back(e);
    }
    return !reachable_sccs(sub).empty();
}

// Minimal ratio over cycle-free initial paths of positive reward ending in a
// target state (simple-path DFS with domination pruning: a prefix reaching v
// with cost >= and reward <= a previously explored one cannot improve any
// extension -- any extra cycle forced on the dominating prefix has its ratio
// accounted for separately via the co-reachable cycle minimum m).
std::optional<Rat> min_path_ratio_into(const CornerPointGraph& g,
                                       const std::set<int>& targets) {
    std::optional<Rat> best;
    std::vector<bool> on_path(g.states.size(), false);
    std::vector<std::vector<std::pair<Int, Int>>> frontier(g.states.size());
    std::function<void(int, Int, Int)> dfs = [&](int v, Int cost, Int reward) {
        for (auto [c, r] : frontier[v])
            if (c <= cost && r >= reward) return;
        std::erase_if(frontier[v], [&](const std::pair<Int, Int>& p) {
            return cost <= p.first && reward >= p.second;
        });
        frontier[v].push_back({cost, reward});
        if (targets.count(v) && reward > 0) {
            Rat ratio(cost, reward);
            if (!best || ratio < *best) best = ratio;
        }
        on_path[v] = true;
        for (int ei : g.out[v]) {
            int t = g.edges[ei].target;
            if (on_path[t]) continue;
            dfs(t, cost + g.edges[ei].cost, reward + g.edges[ei].reward);
        }
        on_path[v] = false;
    };
    for (int s : g.initial) dfs(s, 0, 0);
    return best;
}

struct ZenoInf {
    bool exists = false;
    Rat value;
    bool attained = false;
};

// Candidate infimum of Zeno-run frequencies: per SCC containing an abstract
// Zeno tail, min(r_min, m) where r_min ranges over cycle-free prefixes and m
// over reward-diverging cycle ratios co-reachable to the SCC.
ZenoInf zeno_inf_analysis(const CornerPointGraph& g) {
    ZenoInf out;
    std::set<int> zc = zero_cycle_states(g);
    if (zc.empty()) return out;  // no Zeno run at all
    out.exists = true;

    std::vector<Scc> sccs = reachable_sccs(g);
    int k = static_cast<int>(sccs.size());
    std::vector<int> comp(g.states.size(), -1);
    for (int i = 0; i < k; ++i)
        for (int v : sccs[i].states) comp[v] = i;

    // SCC DAG reachability (over the nontrivial SCCs; paths may run through
    // trivial states, so propagate over the full graph).
    std::vector<std::set<int>> reaches(k);  // SCCs reachable from SCC i
    for (int i = 0; i < k; ++i) {
        std::set<int> seen(sccs[i].states.begin(), sccs[i].states.end());
        std::deque<int> queue(sccs[i].states.begin(), sccs[i].states.end());
        reaches[i].insert(i);
        while (!queue.empty()) {
            int v = queue.front();
            queue.pop_front();
            for (int ei : g.out[v]) {
                int t = g.edges[ei].target;
                if (seen.count(t)) continue;
                seen.insert(t);
                queue.push_back(t);
                if (comp[t] >= 0) reaches[i].insert(comp[t]);
            }
        }
    }

    std::vector<std::optional<Rat>> m_of(k);
    for (int i = 0; i < k; ++i) {
        ExtremalRatios ext = extremal_cycle_ratios(g, sccs[i]);
        if (ext.reward_diverging()) m_of[i] = ext.min->ratio;
    }

    std::optional<Rat> best;
    bool saw_tail_scc = false;
    for (int i = 0; i < k; ++i) {
        std::set<int> tail;
        for (int v : sccs[i].states)
            if (zc.count(v)) tail.insert(v);
        if (tail.empty()) continue;
        saw_tail_scc = true;
        std::optional<Rat> r_min = min_path_ratio_into(g, tail);
        std::optional<Rat> m;
        for (int j = 0; j < k; ++j)
            if (m_of[j] && reaches[j].count(i) && (!m || *m_of[j] < *m)) m = m_of[j];
        std::optional<Rat> cand = r_min;
        if (m && (!cand || *m < *cand)) cand = m;
        if (cand && (!best || *cand < *best)) best = cand;
    }
    // endpoint candidates realized directly by one-class Zeno lassos
    if (zeno_iterable_lasso(g, false) && (!best || Rat(0) < *best)) best = Rat(0);
    if (!best && saw_tail_scc && zeno_iterable_lasso(g, true)) best = Rat(1);
    if (!best) {
        out.exists = false;  // abstract tails exist but no run reaches them
        return out;
    }
    out.value = *best;

    if (out.value == 0)
        out.attained = zeno_iterable_lasso(g, false);
    else if (out.value == 1)
        out.attained = zeno_iterable_lasso(g, true);
    else
        out.attained = zeno_ratio_realizable(g, out.value);
    return out;
}

// --- exact realizability of a ratio in (0,1) by a Zeno run ----------------

// States that can start the infinite non-accepting reward-converging suffix
// of an exact-ratio lasso: a zero-weight discrete loop among non-accepting
// locations at a right interval corner (pattern 1, entered by the final 0/1
// idle) or in the unbounded region (pattern 2).  Returns the extra reward
// paid on entry.
struct SuffixEntry {
    bool ok = false;
    Int extra_reward = 0;
};

class SuffixOracle {
  public:
    explicit SuffixOracle(const CornerPointGraph& g) : g_(g) {
        // Zero-weight discrete non-reset cycles among non-accepting states at
        // right corners or in the unbounded region.
        CornerPointGraph sub = g;
        sub.edges.clear();
        sub.out.assign(g.states.size(), {});
        auto loop_state = [&](int s) {
            const CpState& st = g.states[s];
            if (g.automaton.accepting.count(st.location)) return false;
            return st.pr.corner == Corner::Right || st.pr.corner == Corner::Bottom;
        };
        for (const CpEdge& e : g.edges) {
            if (!e.discrete() || g.automaton.edges[e.edge].resets_clock()) continue;
            if (!loop_state(e.source) || !loop_state(e.target)) continue;
            sub.out[e.source].push_back(static_cast<int>(sub.edges.size()));
            sub.edges.push_back(e);
        }
        for (const Scc& s : reachable_sccs(sub))
            for (int v : s.states) loop_.insert(v);
    }

    SuffixEntry entry(int s) const {
        const CpState& st = g_.states[s];
        if (g_.automaton.accepting.count(st.location)) return {};
        long long m = g_.max_constant;
        switch (st.pr.corner) {
            case Corner::Point: {
                if (st.pr.region.base >= m) return {};
                int right = g_.state_index(
                    {st.location, PointedRegion::right(st.pr.region.base), false});
                return right >= 0 && loop_.count(right) ? SuffixEntry{true, 1}
                                                        : SuffixEntry{};
            }
            case Corner::Left: {
                int right = g_.state_index(
                    {st.location, PointedRegion::right(st.pr.region.base), false});
                return right >= 0 && loop_.count(right) ? SuffixEntry{true, 1}
                                                        : SuffixEntry{};
            }
            case Corner::Right:
                return loop_.count(s) ? SuffixEntry{true, 0} : SuffixEntry{};
            case Corner::Bottom:
                return loop_.count(s) ? SuffixEntry{true, 0} : SuffixEntry{};
        }
        return {};
    }

  private:
    const CornerPointGraph& g_;
    std::set<int> loop_;
};

// DFS over cycle-free prefixes satisfying the contraction and fragment
// conditions under which an abstract path's ratio is exactly realized by a
// Zeno run, looking for a lasso whose total cost/reward is exactly `target`.
bool exact_zeno_search(const CornerPointGraph& g, const Rat& target) {
    SuffixOracle suffix(g);
    const TimedAutomaton& a = g.automaton;
    std::vector<bool> on_path(g.states.size(), false);
    bool found = false;

    // Bookkeeping: has the current same-class sub-fragment earned reward;
    // was the current right corner entered by an accepting 1/1 idle.
    std::function<void(int, Int, Int, bool, bool)> dfs = [&](int v, Int cost, Int reward,
                                                             bool subfrag_reward,
                                                             bool acc_idled_to_right) {
        if (found) return;
        SuffixEntry se = suffix.entry(v);
        if (se.ok && reward + se.extra_reward > 0 &&
            Rat(cost, reward + se.extra_reward) == target) {
            found = true;
            return;
        }
        on_path[v] = true;
        bool v_acc = a.accepting.count(g.states[v].location) > 0;
        const PointedRegion& pr = g.states[v].pr;
        for (int ei : g.out[v]) {
            const CpEdge& e = g.edges[ei];
            int t = e.target;
            if (on_path[t]) continue;
            if (e.discrete()) {
                // contraction condition (i): non-accepting states fire from
                // interval regions only at the right corner
                if (!v_acc && pr.corner == Corner::Left) continue;
                // contraction condition (ii): after an accepting 1/1 idle the
                // corner must leave the interval before firing
                if (v_acc && pr.corner == Corner::Right && acc_idled_to_right) continue;
                bool t_acc = a.accepting.count(g.states[t].location) > 0;
                bool punct_or_bot =
                    pr.region.is_punctual() || pr.corner == Corner::Bottom;
                if (a.edges[e.edge].resets_clock()) {
                    // fragment exit
                    if (!punct_or_bot) continue;
                    dfs(t, cost + e.cost, reward + e.reward, false, false);
                } else if (t_acc != v_acc) {
                    // class switch inside a fragment
                    if (!punct_or_bot || !subfrag_reward) continue;
                    dfs(t, cost + e.cost, reward + e.reward, false, false);
                } else {
                    dfs(t, cost + e.cost, reward + e.reward, subfrag_reward, false);
                }
            } else {
                bool to_right = g.states[t].pr.corner == Corner::Right &&
                                pr.corner == Corner::Left;
                dfs(t, cost + e.cost, reward + e.reward, subfrag_reward || e.reward > 0,
                    to_right && v_acc);
            }
        }
        on_path[v] = false;
    };
    for (int s : g.initial) dfs(s, 0, 0, false, false);
    return found;
}

}  // namespace

bool zeno_ratio_realizable(const CornerPointGraph& g, const Rat& ratio) {
    if (ratio < 0 || ratio > 1) return false;
    if (ratio == 0) return zeno_iterable_lasso(g, false);
    if (ratio == 1) return zeno_iterable_lasso(g, true);
    return exact_zeno_search(g, ratio);
}

ZenoRealizability zeno_exact_realizability(const CornerPointGraph& g) {
    std::set<Rat> candidates{Rat(0), Rat(1)};
    std::set<int> zc = zero_cycle_states(g);
    for (const Scc& scc : reachable_sccs(g)) {
        std::set<int> tail;
        for (int v : scc.states)
            if (zc.count(v)) tail.insert(v);
        if (tail.empty()) continue;
        if (std::optional<Rat> r = min_path_ratio_into(g, tail)) candidates.insert(*r);
    }
    ZenoRealizability out;
    for (const Rat& r : candidates)
        out.candidates.push_back({r, zeno_ratio_realizable(g, r)});
    return out;
}

CornerPointGraph complement_accepting(const CornerPointGraph& g) {
    CornerPointGraph out = g;
    std::set<int> comp;
    for (int l = 0; l < static_cast<int>(g.automaton.locations.size()); ++l)
        if (!g.automaton.accepting.count(l)) comp.insert(l);
    out.automaton.accepting = comp;
    for (CpEdge& e : out.edges)
        e.cost = e.reward == 1 && comp.count(out.states[e.source].location) ? 1 : 0;
    return out;
}

// ---------------------------------------------------------------------------
// Frequency bounds
// ---------------------------------------------------------------------------

namespace {

FrequencyBounds nonzeno_bounds(const CornerPointGraph& g) {
    FrequencyBounds out;
    std::vector<FrequencyInterval> set = nonzeno_frequency_set(g);
    if (set.empty()) return out;
    out.has_runs = true;
    out.inf = set.front().lo;
    out.inf_attained = true;  // the non-Zeno frequency set is a union of
    out.sup = set.back().hi;  // closed intervals
    out.sup_attained = true;
    return out;
}

FrequencyBounds zeno_bounds(const CornerPointGraph& g) {
    FrequencyBounds out;
    ZenoInf lo = zeno_inf_analysis(g);
    if (!lo.exists) return out;
    ZenoInf hi = zeno_inf_analysis(complement_accepting(g));
    out.has_runs = true;
    out.inf = lo.value;
    out.inf_attained = lo.attained;
    out.sup = Rat(1) - hi.value;
    out.sup_attained = hi.attained;
    return out;
}

}  // namespace

FrequencyBounds frequency_bounds(const CornerPointGraph& g, WordClass cls) {
    switch (cls) {
        case WordClass::NonZeno: return nonzeno_bounds(g);
        case WordClass::Zeno: return zeno_bounds(g);
        case WordClass::All: {
            FrequencyBounds nz = nonzeno_bounds(g);
            FrequencyBounds z = zeno_bounds(g);
            if (!nz.has_runs) return z;
            if (!z.has_runs) return nz;
            FrequencyBounds out;
            out.has_runs = true;
            if (nz.inf == z.inf) {
                out.inf = nz.inf;
                out.inf_attained = nz.inf_attained || z.inf_attained;
            } else if (nz.inf < z.inf) {
                out.inf = nz.inf;
                out.inf_attained = nz.inf_attained;
            } else {
                out.inf = z.inf;
                out.inf_attained = z.inf_attained;
            }
            if (nz.sup == z.sup) {
                out.sup = nz.sup;
                out.sup_attained = nz.sup_attained || z.sup_attained;
            } else if (nz.sup > z.sup) {
                out.sup = nz.sup;
                out.sup_attained = nz.sup_attained;
            } else {
                out.sup = z.sup;
                out.sup_attained = z.sup_attained;
            }
            return out;
        }
    }
    return {};
}

}  // namespace tafreq
