#include "tafreq/decide.hpp"

#include <sstream>

namespace tafreq {

namespace {

void require_single_clock(const TimedAutomaton& a) {
    if (!a.single_clock())
        throw MultiClock("analysis requires a single clock, automaton has " +
                         std::to_string(a.clocks.size()));
}

// A witness description for a frequency meeting the predicate.  For the
// non-Zeno side this is an exact cyclic schedule; for Zeno attainment an
// exact realizable ratio; otherwise an approximation statement.
std::optional<std::string> find_witness(const CornerPointGraph& g,
                                        const ThresholdQuery& q,
                                        const FrequencyBounds& b) {
    // Exact schedule from an SCC whose maximal cycle ratio meets the
    // predicate (non-Zeno witnesses).
    if (q.word_class != WordClass::Zeno)
        for (const Scc& scc : reachable_sccs(g)) {
            if (!scc_has_discrete_edge(g, scc)) continue;
            ExtremalRatios ext = extremal_cycle_ratios(g, scc);
            if (!ext.reward_diverging()) continue;
            Rat hi = ext.max->ratio;
            if (q.strict ? hi <= q.threshold : hi < q.threshold) continue;
            RatioWitness w = compose_ratio_witness(g, scc, hi, Rat(1, 1000));
            if (w.exact &&
                (q.strict ? w.achieved > q.threshold : w.achieved >= q.threshold))
                return w.describe(g);
        }
    if (q.word_class != WordClass::NonZeno) {
        // Exact realizable Zeno ratio if one meets the predicate.
        for (const auto& cand : zeno_exact_realizability(g).candidates) {
            if (!cand.realizable) continue;
            if (q.strict ? cand.ratio > q.threshold : cand.ratio >= q.threshold) {
                std::ostringstream out;
                out << "Zeno run with frequency exactly " << rat_to_string(cand.ratio);
                return out.str();
            }
        }
        FrequencyBounds zb = frequency_bounds(g, WordClass::Zeno);
        if (zb.has_runs && (q.strict ? zb.sup > q.threshold : zb.sup >= q.threshold)) {
            std::ostringstream out;
            out << "Zeno runs approach frequency " << rat_to_string(zb.sup)
                << " arbitrarily closely";
            return out.str();
        }
    }
    (void)b;
    return std::nullopt;
}

}  // namespace

DecisionRecord decide_emptiness(const TimedAutomaton& a, const ThresholdQuery& query) {
    require_single_clock(a);
    CornerPointGraph g = build_cornerpoint(a);
    FrequencyBounds b = frequency_bounds(g, query.word_class);

    DecisionRecord d;
    d.kind = "emptiness";
    d.threshold = query.threshold;
    d.strict = query.strict;
    d.word_class = query.word_class;

    bool nonempty = false;
    if (b.has_runs) {
        if (b.sup > query.threshold)
            nonempty = true;
        else if (b.sup == query.threshold && !query.strict && b.sup_attained)
            nonempty = true;
    }
    d.answer = !nonempty;  // true = language is empty
    if (nonempty) d.witness = find_witness(g, query, b);
    return d;
}

DecisionRecord decide_universality_det(const TimedAutomaton& a,
                                       const ThresholdQuery& query) {
    require_single_clock(a);
    if (!is_deterministic(a))
        throw NotDeterministic("universality requires a deterministic automaton");

    DecisionRecord d;
    d.kind = "universality-deterministic";
    d.threshold = query.threshold;
    d.strict = query.strict;
    d.word_class = query.word_class;

    if (!is_complete(a)) {
        // Some timed word cannot be read at all, so it is not accepted.
        d.answer = false;
        d.caveats.push_back("incomplete");
        return d;
    }

    CornerPointGraph g = build_cornerpoint(a);
    FrequencyBounds b = frequency_bounds(g, query.word_class);
    if (!b.has_runs) {
        // No word of the class exists: universal vacuously.
        d.answer = true;
        d.caveats.push_back("class is empty");
        return d;
    }
    if (query.strict)
        d.answer = b.inf > query.threshold ||
                   (b.inf == query.threshold && !b.inf_attained);
    else
        d.answer = b.inf >= query.threshold;
    return d;
}

}  // namespace tafreq
