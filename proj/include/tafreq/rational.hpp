#ifndef TAFREQ_RATIONAL_HPP
#define TAFREQ_RATIONAL_HPP

#include <boost/multiprecision/cpp_int.hpp>
#include <stdexcept>
#include <string>

namespace tafreq {

/// Arbitrary-precision integers and rationals.  All frequency and ratio
/// arithmetic in the library is exact; doubles only appear in user-facing
/// approximations.
using Int = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

/// Canonical "p/q" rendering (gcd 1, q > 0); integers render as "p/1" when
/// `always_fraction` is set, which is the convention used in JSON reports.
inline std::string rat_to_string(const Rat& r, bool always_fraction = true) {
    std::string p = numerator(r).str();
    std::string q = denominator(r).str();
    if (!always_fraction && q == "1") return p;
    return p + "/" + q;
}

/// Parses "p", "-p" or "p/q".  Throws std::invalid_argument on garbage or a
/// zero denominator.
inline Rat rat_from_string(const std::string& text) {
    auto bad = [&]() -> std::invalid_argument {
        return std::invalid_argument("malformed rational: '" + text + "'");
    };
    std::string::size_type slash = text.find('/');
    try {
        if (slash == std::string::npos) return Rat(Int(text));
        Int p(text.substr(0, slash));
        Int q(text.substr(slash + 1));
        if (q == 0) throw bad();
        return Rat(p, q);
    } catch (const std::runtime_error&) {
        throw bad();
    }
}

/// Largest integer <= r.
inline Int rat_floor(const Rat& r) {
    Int q = numerator(r) / denominator(r);
    if (r < 0 && q * denominator(r) != numerator(r)) --q;
    return q;
}

/// Smallest integer >= r.
inline Int rat_ceil(const Rat& r) {
    Int f = rat_floor(r);
    return f == r ? f : f + 1;
}

inline double rat_to_double(const Rat& r) { return r.convert_to<double>(); }

}  // namespace tafreq

#endif  // TAFREQ_RATIONAL_HPP
