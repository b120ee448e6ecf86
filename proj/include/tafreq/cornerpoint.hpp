#ifndef TAFREQ_CORNERPOINT_HPP
#define TAFREQ_CORNERPOINT_HPP

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "tafreq/model.hpp"

namespace tafreq {

// ---------------------------------------------------------------------------
// Pointed regions
// ---------------------------------------------------------------------------

/// Corner decoration of a region: the single corner of a point {i}, the left
/// (•–) or right (–•) corner of an open interval, or the anonymous corner of
/// the unbounded region.
enum class Corner { Point, Left, Right, Bottom };

struct PointedRegion {
    Region region;
    Corner corner = Corner::Point;

    static PointedRegion point(long long i) { return {Region::point(i), Corner::Point}; }
    static PointedRegion left(long long i) { return {Region::interval(i), Corner::Left}; }
    static PointedRegion right(long long i) { return {Region::interval(i), Corner::Right}; }
    static PointedRegion unbounded(long long m) {
        return {Region::unbounded(m), Corner::Bottom};
    }

    bool valid() const;
    /// Time successor (R,α)+1; every pointed region has one ((⊥,α_⊥) is its
    /// own successor).
    PointedRegion successor(long long max_constant) const;
    /// True when the successor stays in the same region (the transition that
    /// carries reward 1): left→right corner of an interval, or the unbounded
    /// self-loop.
    bool successor_in_same_region() const {
        return corner == Corner::Left || corner == Corner::Bottom;
    }
    /// Integer value of the corner for bounded regions ({i} ↦ i, •– ↦ i,
    /// –• ↦ i+1); not meaningful for the unbounded corner.
    long long corner_value() const;

    bool operator==(const PointedRegion&) const = default;
    auto operator<=>(const PointedRegion&) const = default;
    std::string to_string() const;
};

// ---------------------------------------------------------------------------
// Corner-point graph
// ---------------------------------------------------------------------------

/// State of the corner-point abstraction.  `needs_delay` is true when the
/// state was entered by a discrete transition into a punctual region: a
/// second discrete transition would take zero time, so flagged states carry
/// no discrete edges and only the idling edge leaves them.
struct CpState {
    int location = -1;
    PointedRegion pr;
    bool needs_delay = false;

    bool operator==(const CpState&) const = default;
    auto operator<=>(const CpState&) const = default;
};

/// Weighted edge: idling (edge = -1, action ε) or discrete (edge = index of
/// the automaton edge).  reward marks one abstract time unit, cost marks an
/// accepting abstract time unit.
struct CpEdge {
    int source = -1;
    int target = -1;
    int edge = -1;
    int cost = 0;
    int reward = 0;

    bool discrete() const { return edge >= 0; }
};

struct CornerPointGraph {
    TimedAutomaton automaton;  ///< source automaton (single clock)
    long long max_constant = 0;
    std::vector<CpState> states;   ///< reachable states only
    std::vector<int> initial;      ///< indices into `states`
    std::vector<CpEdge> edges;
    std::vector<std::vector<int>> out;  ///< adjacency: state -> edge indices

    int state_index(const CpState& s) const;  ///< -1 when absent
    bool state_accepting(int s) const {
        return automaton.accepting.count(states[s].location) > 0;
    }
    std::string state_name(int s, bool with_flag = false) const;

    /// Distinct (location, pointed region) projections of the states, and
    /// the deduplicated projected edge multiset (flag copies merged) -- the
    /// natural view for rendering.  Strings are stable and sorted.
    std::vector<std::string> projected_nodes() const;
    std::vector<std::string> projected_edges() const;
};

/// Builds the reachable weighted corner-point abstraction of a single-clock
/// automaton.  Throws ModelError on multi-clock input.
CornerPointGraph build_cornerpoint(const TimedAutomaton& a);

/// Path in the corner-point graph: a start state and consecutive edges.
struct CpPath {
    int start = -1;
    std::vector<int> edges;  ///< indices into graph.edges; consecutive
};

/// Accumulated (cost, reward) of the path.
std::pair<Int, Int> path_weights(const CornerPointGraph& g, const CpPath& p);

/// cost/reward of the path; nullopt when the reward is zero.
std::optional<Rat> path_ratio(const CornerPointGraph& g, const CpPath& p);

/// Membership of `path` in Proj_cp(run): connectivity, idling successors,
/// discrete edges matching the run's edges, region membership of the start
/// and fired valuations, and the unbounded-region integer condition
/// μ_n ∈ {⌊v_n+τ_n⌋, ⌈v_n+τ_n⌉}.
bool is_projection(const CornerPointGraph& g, const CpPath& path, const TimedRun& run);

/// Canonical maximal-ratio projection: fire late from accepting locations,
/// early from the others.  The run must start in an initial location with
/// valuation 0.
CpPath dilate(const CornerPointGraph& g, const TimedRun& run);

/// Canonical minimal-ratio projection (dilatation w.r.t. the complement).
CpPath contract(const CornerPointGraph& g, const TimedRun& run);

struct Unrealizable : ModelError {
    using ModelError::ModelError;
};

/// Concrete run with path ∈ Proj_cp(result); fired valuations stay within
/// ε·2^{-n} of the path's abstract corner values.  Throws Unrealizable when
/// the path fires twice without delay from a punctual region (such paths do
/// not occur in the flag-augmented graph).
TimedRun realize_prefix(const CornerPointGraph& g, const CpPath& path, const Rat& epsilon);

}  // namespace tafreq

#endif  // TAFREQ_CORNERPOINT_HPP
