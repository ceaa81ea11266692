#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <stdexcept>
#include <string>

namespace muforge {

using Int = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

/// Domain failure (bad input, undecidable query, violated precondition).
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

inline Int rat_num(const Rat& r) { return boost::multiprecision::numerator(r); }
inline Int rat_den(const Rat& r) { return boost::multiprecision::denominator(r); }

// Floor division, b > 0.
inline Int floor_div(const Int& a, const Int& b) {
    Int q = a / b;
    if (a % b != 0 && a < 0) --q;
    return q;
}

/// Representative of r mod 1 in [0, 1).
inline Rat mod1(const Rat& r) {
    return r - Rat(floor_div(rat_num(r), rat_den(r)));
}

inline bool is_integer(const Rat& r) { return rat_den(r) == 1; }

inline int rat_sign(const Rat& r) { return r > 0 ? 1 : (r < 0 ? -1 : 0); }

inline Rat rat_abs(const Rat& r) { return r < 0 ? Rat(-r) : r; }

Rat parse_rat(const std::string& s);
std::string rat_str(const Rat& r);
Rat rat_pow(const Rat& base, long long e);

} // namespace muforge
