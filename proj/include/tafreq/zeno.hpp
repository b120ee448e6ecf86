#pragma once

#include <map>
#include <set>
#include <string>
#include <vector>

#include "tafreq/decide.hpp"
#include "tafreq/frontend.hpp"
#include "tafreq/model.hpp"

namespace tafreq {

/// Two-copy automaton B over L × {w, b}: the w-copy mirrors the source, a
/// transition into an accepting location may switch to the b-copy, and the
/// b-copy is closed.  Accepting (b-tagged) runs are exactly those spending
/// positive time in accepting locations.  Locations 0..n-1 are the w-copy,
/// n..2n-1 the b-copy of the source's locations.
struct TaggedAutomaton {
    TimedAutomaton automaton;  ///< the doubled automaton
    int base_locations = 0;    ///< n = |L| of the source

    bool b_tagged(int loc) const { return loc >= base_locations; }
    std::string tag_name(int loc) const;
};

TaggedAutomaton tag_double(const TimedAutomaton& a);

/// Finite Buechi automaton B_f for the tail of a Zeno word: states are
/// (tagged location, counter c in 0..M); an a-edge exists iff the interval
/// region I_c (I_c = (c, c+1) for c < M, I_M = (M, inf)) is included in the
/// guard; resets send the counter to 0, other edges preserve it.  Accepting
/// states are the b-tagged ones.
struct TailAutomaton {
    int locations = 0;      ///< tagged locations (2n)
    long long max_constant = 0;
    std::vector<std::string> alphabet;
    std::vector<bool> accepting;                    ///< per state
    std::vector<std::vector<std::vector<int>>> next;  ///< [action][state] -> targets

    int state_count() const { return static_cast<int>(accepting.size()); }
    int state_of(int tagged_loc, long long counter) const {
        return static_cast<int>(tagged_loc * (max_constant + 1) + counter);
    }
};

TailAutomaton build_tail_automaton(const TaggedAutomaton& b);

/// Buechi universality of B_f started from (any state of) q0: every infinite
/// word over the alphabet has an accepting run.  Ramsey-style test on the
/// transition monoid; the monoid is computed once per TailAutomaton.
class BadSetOracle {
  public:
    explicit BadSetOracle(const TailAutomaton& bf);
    bool universal(const std::set<int>& q0);

  private:
    const TailAutomaton& bf_;
    // A box maps state pairs to {unreachable, reachable, reachable via an
    // accepting state}; the monoid closure of the letter boxes.
    using Box = std::vector<signed char>;  // n*n entries, values -1/0/1
    std::vector<Box> monoid_;
    std::vector<std::pair<int, int>> linked_pairs_;  // indices into monoid_
    std::map<std::set<int>, bool> memo_;
};

bool buchi_universal(const TailAutomaton& bf, const std::set<int>& q0);

/// Abstract configuration of the reachable-state-set semantics of B: states
/// with integer clock value (gamma), states with fractional values grouped
/// by fractional part in increasing order (h; integer part recorded), and
/// states beyond M (gamma_prime).
struct AbstractConf {
    std::set<std::pair<int, long long>> gamma;              ///< (tagged loc, value)
    std::vector<std::set<std::pair<int, long long>>> h;     ///< letters, frac increasing
    std::set<int> gamma_prime;                              ///< tagged locs, value > M

    bool empty() const { return gamma.empty() && h.empty() && gamma_prime.empty(); }
    std::set<int> tail_states(const TailAutomaton& bf) const;  ///< set(Conf) in B_f
    std::string to_json() const;

    auto operator<=>(const AbstractConf&) const = default;
};

AbstractConf abstract_initial(const TaggedAutomaton& b);

/// All successors of `conf` under one action: every abstract delay class
/// followed by the simultaneous image of every tracked state under all
/// enabled edges (states with no enabled edge are dropped).  Empty results
/// are kept (they witness unreadable words).
std::vector<AbstractConf> abstract_successors(const AbstractConf& conf,
                                              const TaggedAutomaton& b,
                                              const std::string& action);

/// Well-structured embedding: gamma and gamma_prime by inclusion, h by
/// subword embedding with letter-wise inclusion.
bool conf_embeds(const AbstractConf& c1, const AbstractConf& c2);

/// Zeno-word universality with positive frequency (nondeterministic
/// single-clock automata).  `trace`, when non-null, receives one JSON line
/// per explored antichain configuration.
DecisionRecord zeno_universality(const TimedAutomaton& a,
                                 std::vector<std::string>* trace = nullptr);

}  // namespace tafreq
