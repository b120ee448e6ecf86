#include "tafreq/zeno.hpp"

#include <algorithm>
#include <deque>
#include <functional>
#include <sstream>

namespace tafreq {

// ---------------------------------------------------------------------------
// Two-copy construction
// ---------------------------------------------------------------------------

std::string TaggedAutomaton::tag_name(int loc) const {
    return automaton.locations[loc];
}

TaggedAutomaton tag_double(const TimedAutomaton& a) {
    if (!a.single_clock())
        throw MultiClock("tagging requires a single clock");
    TaggedAutomaton out;
    int n = static_cast<int>(a.locations.size());
    out.base_locations = n;
    TimedAutomaton& b = out.automaton;
    b.name = a.name + "_tagged";
    b.clocks = a.clocks;
    b.alphabet = a.alphabet;
    for (const std::string& l : a.locations) b.locations.push_back(l + "@w");
    for (const std::string& l : a.locations) b.locations.push_back(l + "@b");
    // A run has positive accepting time iff it dwells in an accepting
    // location at least once; the first dwell is in the initial location.
    for (int l : a.initial)
        b.initial.insert(a.accepting.count(l) ? l + n : l);
    for (int l = 0; l < n; ++l) b.accepting.insert(l + n);
    for (const Edge& e : a.edges) {
        Edge w = e;  // stay in the waiting copy
        b.edges.push_back(w);
        if (a.accepting.count(e.target)) {
            Edge to_b = e;  // switch on a transition into an accepting location
            to_b.target = e.target + n;
            b.edges.push_back(to_b);
        }
        Edge bb = e;  // the b-copy is closed
        bb.source = e.source + n;
        bb.target = e.target + n;
        b.edges.push_back(bb);
    }
    return out;
}

// ---------------------------------------------------------------------------
// Tail automaton
// ---------------------------------------------------------------------------

TailAutomaton build_tail_automaton(const TaggedAutomaton& b) {
    const TimedAutomaton& a = b.automaton;
    TailAutomaton bf;
    bf.locations = static_cast<int>(a.locations.size());
    bf.max_constant = a.max_constant();
    bf.alphabet = a.alphabet;
    long long m = bf.max_constant;
    int q = static_cast<int>(bf.locations * (m + 1));
    bf.accepting.assign(q, false);
    for (int l = 0; l < bf.locations; ++l)
        if (b.b_tagged(l))
            for (long long c = 0; c <= m; ++c) bf.accepting[bf.state_of(l, c)] = true;
    bf.next.assign(a.alphabet.size(), std::vector<std::vector<int>>(q));
    for (std::size_t ai = 0; ai < a.alphabet.size(); ++ai)
        for (const Edge& e : a.edges) {
            if (e.action != a.alphabet[ai]) continue;
            for (long long c = 0; c <= m; ++c) {
                Region ic = c < m ? Region::interval(c) : Region::unbounded(m);
                if (!e.guard.allows_region(ic)) continue;
                long long tc = e.resets_clock() ? 0 : c;
                bf.next[ai][bf.state_of(e.source, c)].push_back(bf.state_of(e.target, tc));
            }
        }
    for (auto& per_action : bf.next)
        for (auto& v : per_action) {
            std::sort(v.begin(), v.end());
            v.erase(std::unique(v.begin(), v.end()), v.end());
        }
    return bf;
}

// ---------------------------------------------------------------------------
// Ramsey-based Buechi universality
// ---------------------------------------------------------------------------

namespace {

// Box composition: best (accepting-visit-maximizing) two-step reachability.
std::vector<signed char> compose(const std::vector<signed char>& x,
                                 const std::vector<signed char>& y, int n) {
    std::vector<signed char> out(static_cast<std::size_t>(n) * n, -1);
    for (int i = 0; i < n; ++i)
        for (int k = 0; k < n; ++k) {
            signed char xv = x[i * n + k];
            if (xv < 0) continue;
            for (int j = 0; j < n; ++j) {
                signed char yv = y[k * n + j];
                if (yv < 0) continue;
                signed char v = std::max(xv, yv);
                if (v > out[i * n + j]) out[i * n + j] = v;
            }
        }
    return out;
}

}  // namespace

BadSetOracle::BadSetOracle(const TailAutomaton& bf) : bf_(bf) {
    int n = bf.state_count();
    std::vector<Box> letters;
    for (std::size_t ai = 0; ai < bf.alphabet.size(); ++ai) {
        Box box(static_cast<std::size_t>(n) * n, -1);
        for (int s = 0; s < n; ++s)
            for (int t : bf.next[ai][s])
                box[s * n + t] = bf.accepting[t] ? 1 : 0;
        letters.push_back(std::move(box));
    }
    // Monoid closure under composition.
    std::set<Box> seen(letters.begin(), letters.end());
    monoid_.assign(seen.begin(), seen.end());
    std::deque<Box> work(monoid_.begin(), monoid_.end());
    while (!work.empty()) {
        Box x = work.front();
        work.pop_front();
        for (const Box& l : letters) {
            for (Box z : {compose(x, l, n), compose(l, x, n)}) {
                if (seen.insert(z).second) {
                    monoid_.push_back(z);
                    work.push_back(z);
                }
            }
        }
    }
    // Linked pairs (Y, Z): Y.Z = Y and Z.Z = Z.  Every ultimately periodic
    // word maps onto one by Ramsey's theorem.
    for (std::size_t yi = 0; yi < monoid_.size(); ++yi)
        for (std::size_t zi = 0; zi < monoid_.size(); ++zi) {
            if (compose(monoid_[zi], monoid_[zi], n) != monoid_[zi]) continue;
            if (compose(monoid_[yi], monoid_[zi], n) != monoid_[yi]) continue;
            linked_pairs_.push_back({static_cast<int>(yi), static_cast<int>(zi)});
        }
}

bool BadSetOracle::universal(const std::set<int>& q0) {
    auto it = memo_.find(q0);
    if (it != memo_.end()) return it->second;
    // Monotone shortcuts: universality is upward-closed in q0.
    for (const auto& [known, verdict] : memo_) {
        if (verdict && std::includes(q0.begin(), q0.end(), known.begin(), known.end()))
            return memo_[q0] = true;
        if (!verdict && std::includes(known.begin(), known.end(), q0.begin(), q0.end()))
            return memo_[q0] = false;
    }
    int n = bf_.state_count();
    bool universal = !q0.empty() && !bf_.alphabet.empty();
    for (const auto& [yi, zi] : linked_pairs_) {
        if (!universal) break;
        const Box& y = monoid_[yi];
        const Box& z = monoid_[zi];
        // The word Y.Z^omega is accepted iff some q0 -> q (via Y) admits an
        // accepting Z-loop q -> q.
        bool accepted = false;
        for (int s : q0) {
            for (int q = 0; q < n && !accepted; ++q)
                accepted = y[s * n + q] >= 0 && z[q * n + q] == 1;
            // Z^omega alone (empty prefix): the pair with Y = Z covers it.
            if (accepted) break;
        }
        universal = accepted;
    }
    return memo_[q0] = universal;
}

bool buchi_universal(const TailAutomaton& bf, const std::set<int>& q0) {
    BadSetOracle oracle(bf);
    return oracle.universal(q0);
}

// ---------------------------------------------------------------------------
// Abstract configurations
// ---------------------------------------------------------------------------

std::set<int> AbstractConf::tail_states(const TailAutomaton& bf) const {
    std::set<int> out;
    for (const auto& [l, c] : gamma) out.insert(bf.state_of(l, c));
    for (const auto& letter : h)
        for (const auto& [l, c] : letter) out.insert(bf.state_of(l, c));
    for (int l : gamma_prime) out.insert(bf.state_of(l, bf.max_constant));
    return out;
}

std::string AbstractConf::to_json() const {
    std::ostringstream out;
    out << "{\"gamma\":[";
    bool first = true;
    for (const auto& [l, c] : gamma) {
        out << (first ? "" : ",") << "[" << l << "," << c << "]";
        first = false;
    }
    out << "],\"h\":[";
    for (std::size_t i = 0; i < h.size(); ++i) {
        out << (i ? ",[" : "[");
        bool f2 = true;
        for (const auto& [l, c] : h[i]) {
            out << (f2 ? "" : ",") << "[" << l << "," << c << "]";
            f2 = false;
        }
        out << "]";
    }
    out << "],\"gamma_prime\":[";
    first = true;
    for (int l : gamma_prime) {
        out << (first ? "" : ",") << l;
        first = false;
    }
    out << "]}";
    return out.str();
}

AbstractConf abstract_initial(const TaggedAutomaton& b) {
    AbstractConf conf;
    for (int l : b.automaton.initial) conf.gamma.insert({l, 0});
    return conf;
}

namespace {

// All distinct abstract configurations reachable by a positive delay:
// dissolve integer values into a fresh smallest-fraction letter (or past M),
// then alternately stop between events and wrap the largest-fraction letter
// past the next integer.
std::vector<AbstractConf> delay_classes(const AbstractConf& conf, long long m) {
    std::vector<AbstractConf> out;
    AbstractConf cur = conf;
    std::set<AbstractConf> seen;
    while (true) {
        if (!cur.gamma.empty()) {
            std::set<std::pair<int, long long>> fresh;
            for (const auto& [l, c] : cur.gamma) {
                if (c >= m)
                    cur.gamma_prime.insert(l);
                else
                    fresh.insert({l, c});
            }
            cur.gamma.clear();
            if (!fresh.empty()) cur.h.insert(cur.h.begin(), fresh);
        }
        if (seen.insert(cur).second) out.push_back(cur);  // between events
        if (cur.h.empty()) break;
        std::set<std::pair<int, long long>> wrapped;
        for (const auto& [l, c] : cur.h.back()) wrapped.insert({l, c + 1});
        cur.h.pop_back();
        cur.gamma = wrapped;
        if (seen.insert(cur).second) out.push_back(cur);  // at the event
    }
    return out;
}

}  // namespace

std::vector<AbstractConf> abstract_successors(const AbstractConf& conf,
                                              const TaggedAutomaton& b,
                                              const std::string& action) {
    const TimedAutomaton& a = b.automaton;
    long long m = a.max_constant();
    std::vector<AbstractConf> out;
    for (const AbstractConf& d : delay_classes(conf, m)) {
        AbstractConf next;
        auto fire = [&](int loc, const std::function<bool(const Guard&)>& enabled,
                        const std::function<void(int)>& keep_slot) {
            for (const Edge& e : a.edges) {
                if (e.source != loc || e.action != action) continue;
                if (!enabled(e.guard)) continue;
                if (e.resets_clock())
                    next.gamma.insert({e.target, 0});
                else
                    keep_slot(e.target);
            }
        };
        for (const auto& [l, c] : d.gamma) {
            long long cc = c;
            fire(
                l, [&](const Guard& g) { return g.satisfied(Rat(cc)); },
                [&](int t) { next.gamma.insert({t, cc}); });
        }
        std::vector<std::set<std::pair<int, long long>>> letters(d.h.size());
        for (std::size_t i = 0; i < d.h.size(); ++i)
            for (const auto& [l, c] : d.h[i]) {
                long long cc = c;
                fire(
                    l,
                    [&](const Guard& g) { return g.allows_region(Region::interval(cc)); },
                    [&](int t) { letters[i].insert({t, cc}); });
            }
        for (int l : d.gamma_prime)
            fire(
                l, [&](const Guard& g) { return g.allows_region(Region::unbounded(m)); },
                [&](int t) { next.gamma_prime.insert(t); });
        for (auto& letter : letters)
            if (!letter.empty()) next.h.push_back(std::move(letter));
        out.push_back(std::move(next));
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

bool conf_embeds(const AbstractConf& c1, const AbstractConf& c2) {
    if (!std::includes(c2.gamma.begin(), c2.gamma.end(), c1.gamma.begin(),
                       c1.gamma.end()))
        return false;
    if (!std::includes(c2.gamma_prime.begin(), c2.gamma_prime.end(),
                       c1.gamma_prime.begin(), c1.gamma_prime.end()))
        return false;
    // Greedy subword embedding with letter-wise inclusion.
    std::size_t j = 0;
    for (const auto& letter : c1.h) {
        while (j < c2.h.size() &&
               !std::includes(c2.h[j].begin(), c2.h[j].end(), letter.begin(),
                              letter.end()))
            ++j;
        if (j == c2.h.size()) return false;
        ++j;
    }
    return true;
}

// ---------------------------------------------------------------------------
// Zeno universality
// ---------------------------------------------------------------------------

DecisionRecord zeno_universality(const TimedAutomaton& a,
                                 std::vector<std::string>* trace) {
    DecisionRecord d;
    d.kind = "zeno-universality";
    d.threshold = 0;
    d.strict = true;
    d.word_class = WordClass::Zeno;

    if (!a.single_clock()) throw MultiClock("zeno universality requires a single clock");
    if (a.accepting.empty() || a.initial.empty() || a.alphabet.empty()) {
        d.answer = false;
        if (a.accepting.empty()) d.caveats.push_back("no accepting location");
        return d;
    }

    TaggedAutomaton b = tag_double(a);
    TailAutomaton bf = build_tail_automaton(b);
    BadSetOracle oracle(bf);

    // Forward exploration of the abstract reachable-set system, keeping an
    // antichain of embedding-minimal configurations.  Bad = some finite word
    // leads to a configuration whose tail language is not universal (or
    // cannot be read at all).
    std::vector<AbstractConf> antichain;
    std::deque<AbstractConf> work;
    auto offer = [&](const AbstractConf& c) {
        for (const AbstractConf& kept : antichain)
            if (conf_embeds(kept, c)) return;  // subsumed by a smaller conf
        antichain.erase(std::remove_if(antichain.begin(), antichain.end(),
                                       [&](const AbstractConf& kept) {
                                           return conf_embeds(c, kept);
                                       }),
                        antichain.end());
        antichain.push_back(c);
        work.push_back(c);
        if (trace) trace->push_back(c.to_json());
    };

    offer(abstract_initial(b));
    while (!work.empty()) {
        AbstractConf conf = work.front();
        work.pop_front();
        // Subsumption may have evicted it since queuing.
        if (std::find(antichain.begin(), antichain.end(), conf) == antichain.end())
            continue;
        if (conf.empty() || !oracle.universal(conf.tail_states(bf))) {
            d.answer = false;
            d.witness = "counterexample configuration: " + conf.to_json();
            return d;
        }
        for (const std::string& action : a.alphabet)
            for (const AbstractConf& succ : abstract_successors(conf, b, action))
                offer(succ);
    }
    d.answer = true;
    return d;
}

}  // namespace tafreq
