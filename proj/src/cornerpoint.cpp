#include "tafreq/cornerpoint.hpp"

#include <algorithm>
#include <deque>
#include <set>
#include <sstream>

namespace tafreq {

// ---------------------------------------------------------------------------
// Pointed regions
// ---------------------------------------------------------------------------

bool PointedRegion::valid() const {
    switch (region.kind) {
        case Region::Kind::Point: return corner == Corner::Point;
        case Region::Kind::Interval:
            return corner == Corner::Left || corner == Corner::Right;
        case Region::Kind::Unbounded: return corner == Corner::Bottom;
    }
    return false;
}

PointedRegion PointedRegion::successor(long long m) const {
    switch (corner) {
        case Corner::Point:
            return region.base < m ? left(region.base) : unbounded(m);
        case Corner::Left: return right(region.base);
        case Corner::Right: return point(region.base + 1);
        case Corner::Bottom: return *this;
    }
    return *this;
}

long long PointedRegion::corner_value() const {
    return corner == Corner::Right ? region.base + 1 : region.base;
}

std::string PointedRegion::to_string() const {
    switch (corner) {
        case Corner::Point: return region.to_string() + ":.";
        case Corner::Left: return region.to_string() + ":.-";
        case Corner::Right: return region.to_string() + ":-.";
        case Corner::Bottom: return "bot";
    }
    return "?";
}

// ---------------------------------------------------------------------------
// Graph construction
// ---------------------------------------------------------------------------

int CornerPointGraph::state_index(const CpState& s) const {
    for (std::size_t i = 0; i < states.size(); ++i)
        if (states[i] == s) return static_cast<int>(i);
    return -1;
}

std::string CornerPointGraph::state_name(int s, bool with_flag) const {
    const CpState& st = states[s];
    std::string out = automaton.locations[st.location] + ":" + st.pr.to_string();
    if (with_flag && st.needs_delay) out += "!";
    return out;
}

CornerPointGraph build_cornerpoint(const TimedAutomaton& a) {
    if (!a.single_clock())
        throw MultiClock("corner-point abstraction needs a single clock");
    CornerPointGraph g;
    g.automaton = a;
    g.max_constant = a.max_constant();

    std::map<CpState, int> index;
    std::deque<int> queue;
    auto intern = [&](const CpState& s) {
        auto it = index.find(s);
        if (it != index.end()) return it->second;
        int id = static_cast<int>(g.states.size());
        g.states.push_back(s);
        g.out.emplace_back();
        index.emplace(s, id);
        queue.push_back(id);
        return id;
    };

    for (int l : a.initial)
        g.initial.push_back(intern({l, PointedRegion::point(0), false}));

    while (!queue.empty()) {
        int sid = queue.front();
        queue.pop_front();
        CpState s = g.states[sid];  // copy: g.states may reallocate below
        bool acc = a.accepting.count(s.location) > 0;

        // Idling transition (unique); reward 1 when the corner advances
        // inside the same region, i.e. one abstract time unit elapses.
        PointedRegion succ = s.pr.successor(g.max_constant);
        bool advance = s.pr.successor_in_same_region();
        int tid = intern({s.location, succ, false});
        g.out[sid].push_back(static_cast<int>(g.edges.size()));
        g.edges.push_back({sid, tid, -1, advance && acc ? 1 : 0, advance ? 1 : 0});

        // Discrete transitions; forbidden from freshly-entered punctual
        // regions (they would take zero time).
        if (s.needs_delay) continue;
        for (std::size_t ei = 0; ei < a.edges.size(); ++ei) {
            const Edge& e = a.edges[ei];
            if (e.source != s.location || !e.guard.allows_region(s.pr.region)) continue;
            PointedRegion tpr = e.resets_clock() ? PointedRegion::point(0) : s.pr;
            CpState t{e.target, tpr, tpr.region.is_punctual()};
            int target = intern(t);
            g.out[sid].push_back(static_cast<int>(g.edges.size()));
            g.edges.push_back({sid, target, static_cast<int>(ei), 0, 0});
        }
    }
    return g;
}

std::vector<std::string> CornerPointGraph::projected_nodes() const {
    std::set<std::string> nodes;
    for (std::size_t i = 0; i < states.size(); ++i)
        nodes.insert(state_name(static_cast<int>(i), false));
    return {nodes.begin(), nodes.end()};
}

std::vector<std::string> CornerPointGraph::projected_edges() const {
    std::set<std::string> out;
    for (const CpEdge& e : edges) {
        std::string label = e.discrete() ? automaton.edges[e.edge].action : "eps";
        std::ostringstream line;
        line << state_name(e.source, false) << " --" << label << "," << e.cost << "/"
             << e.reward << "--> " << state_name(e.target, false);
        out.insert(line.str());
    }
    return {out.begin(), out.end()};
}

// ---------------------------------------------------------------------------
// Paths
// ---------------------------------------------------------------------------

std::pair<Int, Int> path_weights(const CornerPointGraph& g, const CpPath& p) {
    Int cost = 0, reward = 0;
    for (int e : p.edges) {
        cost += g.edges[e].cost;
        reward += g.edges[e].reward;
    }
    return {cost, reward};
}

std::optional<Rat> path_ratio(const CornerPointGraph& g, const CpPath& p) {
    auto [cost, reward] = path_weights(g, p);
    if (reward == 0) return std::nullopt;
    return Rat(cost, reward);
}

namespace {

// Abstract integer value attached while walking a path: the corner value in
// bounded regions, the reward count since the last {0} in the unbounded one.
void apply_idle(const CornerPointGraph& g, const CpEdge& e, Int& a) {
    const PointedRegion& tpr = g.states[e.target].pr;
    if (tpr.corner == Corner::Bottom)
        a += e.reward;  // {M} -> bot keeps M; the bot self-loop counts up
    else
        a = tpr.corner_value();
}

bool path_connected(const CornerPointGraph& g, const CpPath& p) {
    int cur = p.start;
    if (cur < 0 || cur >= static_cast<int>(g.states.size())) return false;
    for (int ei : p.edges) {
        if (ei < 0 || ei >= static_cast<int>(g.edges.size())) return false;
        if (g.edges[ei].source != cur) return false;
        cur = g.edges[ei].target;
    }
    return true;
}

}  // namespace

bool is_projection(const CornerPointGraph& g, const CpPath& path, const TimedRun& run) {
    if (!path_connected(g, path)) return false;
    std::vector<State> visited;
    try {
        visited = replay(g.automaton, run);
    } catch (const ModelError&) {
        return false;
    }

    std::size_t pos = 0;  // index into path.edges
    int cur = path.start;
    Int a = g.states[cur].pr.corner == Corner::Bottom ? rat_floor(visited[0].value)
                                                      : Int(g.states[cur].pr.corner_value());
    for (std::size_t n = 0; n < run.steps.size(); ++n) {
        // v_n must lie in the first region of the n-th group.
        if (!g.states[cur].pr.region.contains(visited[n].value)) return false;
        // Idle prefix of the group.
        while (pos < path.edges.size() && !g.edges[path.edges[pos]].discrete()) {
            apply_idle(g, g.edges[path.edges[pos]], a);
            cur = g.edges[path.edges[pos]].target;
            ++pos;
        }
        if (pos == path.edges.size()) return false;  // missing discrete edge
        const CpEdge& fire = g.edges[path.edges[pos]];
        if (fire.edge != run.steps[n].edge) return false;
        Rat u = visited[n].value + run.steps[n].delay;
        const PointedRegion& at = g.states[fire.source].pr;
        if (!at.region.contains(u)) return false;
        if (at.corner == Corner::Bottom && a != rat_floor(u) && a != rat_ceil(u))
            return false;
        if (g.automaton.edges[fire.edge].resets_clock()) a = 0;
        cur = fire.target;
        ++pos;
    }
    return pos == path.edges.size();  // no trailing idles
}

namespace {

// Shared engine for contraction and dilatation: fire as late as possible
// from locations in the "late" class, as early as possible otherwise.
CpPath canonical_projection(const CornerPointGraph& g, const TimedRun& run,
                            bool late_on_accepting) {
    const TimedAutomaton& a = g.automaton;
    std::vector<State> visited = replay(a, run);
    if (run.start.value != 0 || !a.initial.count(run.start.location))
        throw ModelError("projection requires a run starting in an initial location at 0");

    CpPath path;
    path.start = g.state_index({run.start.location, PointedRegion::point(0), false});
    int cur = path.start;
    Int abstract = 0;

    auto take_idle = [&]() {
        for (int ei : g.out[cur])
            if (!g.edges[ei].discrete()) {
                path.edges.push_back(ei);
                apply_idle(g, g.edges[ei], abstract);
                cur = g.edges[ei].target;
                return;
            }
        throw ModelError("corner-point state without idling edge");
    };

    for (std::size_t n = 0; n < run.steps.size(); ++n) {
        const State& before = visited[n];
        Rat u = before.value + run.steps[n].delay;
        bool late = a.accepting.count(before.location)
                        ? late_on_accepting
                        : !late_on_accepting;

        if (u <= g.max_constant) {
            Region ru = Region::of(u, g.max_constant);
            PointedRegion target =
                ru.is_punctual()
                    ? PointedRegion::point(ru.base)
                    : (late ? PointedRegion::right(ru.base) : PointedRegion::left(ru.base));
            // Never step backwards inside the current region: if we already
            // sit at the right corner of u's region, fire from there.
            const PointedRegion& at = g.states[cur].pr;
            if (at.region == target.region && at.corner == Corner::Right) target = at;
            int guard = 0;
            while (g.states[cur].pr != target) {
                take_idle();
                if (++guard > 4 * (g.max_constant + 2))
                    throw ModelError("projection cannot reach the firing region");
            }
        } else {
            while (g.states[cur].pr.corner != Corner::Bottom) take_idle();
            Int want = late ? rat_ceil(u) : rat_floor(u);
            while (abstract < want) take_idle();  // bot self-loops, reward 1 each
        }

        bool fired = false;
        for (int ei : g.out[cur])
            if (g.edges[ei].edge == run.steps[n].edge) {
                path.edges.push_back(ei);
                if (a.edges[run.steps[n].edge].resets_clock()) abstract = 0;
                cur = g.edges[ei].target;
                fired = true;
                break;
            }
        if (!fired)
            throw ModelError("discrete corner-point edge missing for run step " +
                             std::to_string(n));
    }
    return path;
}

}  // namespace

CpPath dilate(const CornerPointGraph& g, const TimedRun& run) {
    return canonical_projection(g, run, true);
}

CpPath contract(const CornerPointGraph& g, const TimedRun& run) {
    return canonical_projection(g, run, false);
}

// ---------------------------------------------------------------------------
// Realization
// ---------------------------------------------------------------------------

TimedRun realize_prefix(const CornerPointGraph& g, const CpPath& path, const Rat& epsilon) {
    if (!path_connected(g, path)) throw Unrealizable("not a path of the graph");
    if (epsilon <= 0) throw Unrealizable("epsilon must be positive");
    if (g.states[path.start].pr != PointedRegion::point(0))
        throw Unrealizable("realization starts from ({0},.) states");

    // Collect the discrete fires with their firing pointed region and
    // abstract value.
    struct Fire {
        PointedRegion pr;
        Int abstract;
        int edge;   // automaton edge
        bool reset;
    };
    std::vector<Fire> fires;
    int cur = path.start;
    Int abstract = 0;
    for (int ei : path.edges) {
        const CpEdge& e = g.edges[ei];
        if (!e.discrete()) {
            apply_idle(g, e, abstract);
        } else {
            fires.push_back({g.states[cur].pr, abstract, e.edge,
                             g.automaton.edges[e.edge].resets_clock()});
            if (g.automaton.edges[e.edge].resets_clock()) abstract = 0;
        }
        cur = e.target;
    }

    TimedRun run;
    run.start = {g.states[path.start].location, Rat(0)};

    // Assign fired valuations blockwise: consecutive fires from the same
    // pointed region and abstract value share a shrinking slack band next to
    // the corner, chosen from the last fire of the block so every member
    // meets its own eps*2^-n bound.
    Rat v_prev = 0;
    std::size_t i = 0;
    Rat cap(1, 4);
    while (i < fires.size()) {
        std::size_t j = i;
        while (j + 1 < fires.size() && !fires[j].reset &&
               fires[j + 1].pr == fires[i].pr && fires[j + 1].abstract == fires[i].abstract)
            ++j;
        Rat slack = epsilon;
        for (std::size_t k = 0; k <= j; ++k) slack /= 2;
        if (slack > cap) slack = cap;
        std::size_t len = j - i + 1;
        for (std::size_t k = 0; k < len; ++k) {
            const Fire& f = fires[i + k];
            Rat u;
            switch (f.pr.corner) {
                case Corner::Point:
                    u = Rat(f.pr.region.base);
                    if (v_prev >= u)
                        throw Unrealizable("zero-delay fire from punctual region");
                    break;
                case Corner::Left:
                    u = Rat(f.pr.region.base) +
                        slack * Rat(static_cast<long long>(k) + 1,
                                    static_cast<long long>(len) + 1);
                    break;
                case Corner::Right:
                    u = Rat(f.pr.region.base + 1) -
                        slack / Rat(static_cast<long long>(k) + 2);
                    break;
                case Corner::Bottom:
                    u = Rat(f.abstract) +
                        slack * Rat(static_cast<long long>(k) + 1,
                                    static_cast<long long>(len) + 1);
                    break;
            }
            if (u <= v_prev) throw Unrealizable("valuations not increasing");
            run.steps.push_back({u - v_prev, f.edge});
            v_prev = f.reset ? Rat(0) : u;
        }
        i = j + 1;
    }
    return run;
}

}  // namespace tafreq
