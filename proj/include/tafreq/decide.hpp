#pragma once

#include "tafreq/frontend.hpp"
#include "tafreq/ratio.hpp"

namespace tafreq {

/// Threshold query: frequency > threshold (strict) or >= threshold.
struct ThresholdQuery {
    Rat threshold;
    bool strict = true;
    WordClass word_class = WordClass::All;
};

/// Language emptiness under the query predicate: answer = true means no word
/// of the class is accepted with the required frequency.  The witness (when
/// nonempty) describes a schedule or run whose exact frequency meets the
/// predicate.
DecisionRecord decide_emptiness(const TimedAutomaton& a, const ThresholdQuery& query);

/// Universality for deterministic automata: answer = true means every word
/// of the class is accepted with the required frequency.  Incomplete
/// automata yield answer = false with caveat "incomplete".  Throws
/// NotDeterministic / MultiClock.
DecisionRecord decide_universality_det(const TimedAutomaton& a,
                                       const ThresholdQuery& query);

}  // namespace tafreq
