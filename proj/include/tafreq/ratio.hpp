#ifndef TAFREQ_RATIO_HPP
#define TAFREQ_RATIO_HPP

#include <optional>
#include <string>
#include <vector>

#include "tafreq/cornerpoint.hpp"

namespace tafreq {

/// Run/word classification by time divergence.
enum class WordClass { All, NonZeno, Zeno };

std::string word_class_name(WordClass c);
std::optional<WordClass> word_class_from_name(const std::string& name);

/// Strongly connected component of the corner-point graph (trivial SCCs
/// without a self-loop are dropped).
struct Scc {
    std::vector<int> states;           ///< sorted state indices
    std::vector<int> internal_edges;   ///< edges with both endpoints inside
};

/// Tarjan-style decomposition restricted to the reachable part (the whole
/// graph is reachable by construction).  Deterministic order.
std::vector<Scc> reachable_sccs(const CornerPointGraph& g);

/// Simple cycle achieving an extremal ratio, as consecutive edge indices.
struct CycleWitness {
    std::vector<int> edges;
    Rat ratio;
};

/// Exact minimal/maximal cost/reward ratios over reward-diverging cycles of
/// one SCC; absent when the SCC has no cycle of positive reward.
struct ExtremalRatios {
    std::optional<CycleWitness> min;
    std::optional<CycleWitness> max;
    bool reward_diverging() const { return min.has_value(); }
};

/// Parametric negative-cycle search with Stern–Brocot refinement; ratios are
/// exact rationals with denominator bounded by the SCC size.
ExtremalRatios extremal_cycle_ratios(const CornerPointGraph& g, const Scc& scc);

/// True when the SCC contains a discrete internal edge.  Runs consist of
/// infinitely many moves, so only such SCCs can host the tail of a run;
/// components made of idling self-loops alone (the unbounded-region loop)
/// are excluded from the non-Zeno frequency set.
bool scc_has_discrete_edge(const CornerPointGraph& g, const Scc& scc);

/// Closed interval of realizable non-Zeno frequencies.
struct FrequencyInterval {
    Rat lo;
    Rat hi;
};

/// Union of [m_i, M_i] over reachable SCCs containing a reward-diverging
/// cycle; sorted, overlapping/touching intervals merged.
std::vector<FrequencyInterval> nonzeno_frequency_set(const CornerPointGraph& g);

/// Cyclic schedule mixing the minimal and maximal cycles of one SCC to hit a
/// target ratio: exactly when the witness cycles share a state, within
/// `tolerance` otherwise (connecting paths included, repetition factor
/// chosen accordingly).
struct RatioWitness {
    CycleWitness min_cycle;
    CycleWitness max_cycle;
    Int min_reps = 0;              ///< min-cycle laps per round
    Int max_reps = 0;              ///< max-cycle laps per round
    Int factor = 1;                ///< extra rounds per connector traversal
    std::vector<int> link_min_to_max;  ///< empty in the shared-state case
    std::vector<int> link_max_to_min;
    Rat achieved;                  ///< exact ratio of the schedule
    bool exact = false;
    std::string describe(const CornerPointGraph& g) const;
};

RatioWitness compose_ratio_witness(const CornerPointGraph& g, const Scc& scc,
                                   const Rat& target, const Rat& tolerance);

/// Frequency bounds of one run class with attainability flags.
/// `has_runs` is false when the class is empty (no run of that kind exists);
/// bounds then default to 0/0 unattained.
struct FrequencyBounds {
    Rat inf;
    bool inf_attained = false;
    Rat sup;
    bool sup_attained = false;
    bool has_runs = false;

    bool operator==(const FrequencyBounds&) const = default;
};

FrequencyBounds frequency_bounds(const CornerPointGraph& g, WordClass cls);

/// Exact-realizability report for Zeno runs: for each candidate ratio (the
/// per-SCC r_min values and the endpoints 0 and 1), whether a Zeno run whose
/// contraction achieves exactly that ratio exists.
struct ZenoRealizability {
    struct Candidate {
        Rat ratio;
        bool realizable = false;
    };
    std::vector<Candidate> candidates;  ///< sorted by ratio, deduplicated
};

ZenoRealizability zeno_exact_realizability(const CornerPointGraph& g);

/// Whether some Zeno run achieves frequency exactly `ratio` (drives the
/// attainment flags of the Zeno bounds).
bool zeno_ratio_realizable(const CornerPointGraph& g, const Rat& ratio);

/// Same graph with the accepting set complemented and costs re-derived
/// (cost' = reward − cost); used to compute suprema via infima.
CornerPointGraph complement_accepting(const CornerPointGraph& g);

}  // namespace tafreq

#endif  // TAFREQ_RATIO_HPP
