// Arbitrary-precision integer alias and the handful of integer helpers the
// rest of the library leans on.
#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <string>

#include "charsub/errors.hpp"

namespace charsub {

using BigInt = boost::multiprecision::cpp_int;

inline const BigInt& bmin(const BigInt& a, const BigInt& b) { return a <= b ? a : b; }
inline const BigInt& bmax(const BigInt& a, const BigInt& b) { return a >= b ? a : b; }

inline BigInt big_gcd(const BigInt& a, const BigInt& b) {
    return boost::multiprecision::gcd(a, b);
}

// Floor division, b > 0.
inline BigInt floor_div(const BigInt& a, const BigInt& b) {
    BigInt q = a / b;
    if (a % b != 0 && ((a < 0) != (b < 0))) --q;
    return q;
}

// Representative of a mod m in [0, m), m > 0.
inline BigInt mod_floor(const BigInt& a, const BigInt& m) {
    BigInt r = a % m;
    if (r < 0) r += m;
    return r;
}

inline std::uint64_t to_u64(const BigInt& a, const char* what = "value") {
    if (a < 0 || a > BigInt(UINT64_MAX))
        throw OutOfHorizon(std::string(what) + " does not fit in 64 bits");
    return a.convert_to<std::uint64_t>();
}

inline BigInt parse_bigint(const std::string& s) {
    if (s.empty()) throw ParseError("empty integer literal");
    bool negative = s[0] == '-';
    std::size_t start = (s[0] == '-' || s[0] == '+') ? 1 : 0;
    if (start == s.size()) throw ParseError("bad integer literal: " + s);
    for (std::size_t i = start; i < s.size(); ++i)
        if (s[i] < '0' || s[i] > '9') throw ParseError("bad integer literal: " + s);
    BigInt v(s.substr(start));
    return negative ? BigInt(-v) : v;
}

}  // namespace charsub
