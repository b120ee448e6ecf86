#pragma once

#include <map>
#include <set>
#include <vector>

#include "tafreq/decide.hpp"
#include "tafreq/ratio.hpp"

namespace tafreq {

struct TooLarge : ModelError {
    using ModelError::ModelError;
};

/// Exact cost/reward ratio of every reward-positive simple cycle of the SCC,
/// by blocked-DFS cycle enumeration.  Deliberately independent of the
/// parametric search in the ratio module.  Throws TooLarge beyond 40 states.
std::set<Rat> enumerate_simple_cycle_ratios(const CornerPointGraph& g, const Scc& scc);

struct SamplingConfig {
    int granularity = 4;  ///< delays drawn from {1/N, 2/N, ...}
    int depth = 50;       ///< steps per sampled run
    unsigned seed = 0;
};

struct SampleStats {
    int runs = 0;                 ///< runs with positive total time
    Rat min;                      ///< extremes over sampled prefix frequencies
    Rat max;
    std::map<int, int> histogram;  ///< decile bin (0..9) -> count
};

/// Frequencies of `runs` random prefix-depth runs (seeded, deterministic):
/// at each step one enabled (delay, edge) pair is drawn uniformly among all
/// pairs with delay in the granularity grid up to M+1.
SampleStats sample_run_frequencies(const TimedAutomaton& a, const SamplingConfig& cfg,
                                   int runs = 100);

/// Bounded universality oracle: true iff every lasso timed word with
/// stem+cycle length <= bound, delays on the 1/bound grid, admits a run
/// meeting the predicate.  Non-Zeno lasso words repeat the cycle verbatim;
/// Zeno lasso words halve the cycle's delays at every iteration (this family
/// only supports the positive-frequency predicate: threshold 0, strict).
bool lasso_word_check(const TimedAutomaton& a, const ThresholdQuery& predicate,
                      int bound);

}  // namespace tafreq
