#pragma once

#include <gmpxx.h>
#include <stdexcept>
#include <string>

namespace integrax {

// Arbitrary-precision rational. GMP keeps every value canonical
// (gcd(|num|, den) = 1, den > 0), which is exactly the invariant we need.
using Rat = mpq_class;

inline Rat rat(long num, long den = 1) {
    if (den == 0) throw std::invalid_argument("rational with zero denominator");
    Rat r(num, den);
    r.canonicalize();
    return r;
}

// Parses "p/q" or "p". Throws on malformed input or zero denominator.
inline Rat rat_from_string(const std::string& s) {
    Rat r;
    if (r.set_str(s, 10) != 0)
        throw std::invalid_argument("malformed rational: '" + s + "'");
    if (r.get_den() == 0)
        throw std::invalid_argument("rational with zero denominator: '" + s + "'");
    r.canonicalize();
    return r;
}

// Canonical form: "p/q", or "p" alone when q = 1.
inline std::string rat_to_string(const Rat& r) {
    return r.get_str();
}

inline bool is_integer(const Rat& r) {
    return r.get_den() == 1;
}

}  // namespace integrax
