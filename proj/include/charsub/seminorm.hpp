// The circle seminorm: distance from a real to the nearest integer,
// evaluated exactly on rationals.
#pragma once

#include <utility>

#include "charsub/bigint.hpp"
#include "charsub/errors.hpp"
#include "charsub/rational.hpp"

namespace charsub {

// A value of the seminorm; always in [0, 1/2].
struct SeminormValue {
    Rational value;

    bool operator==(const SeminormValue& o) const { return value == o.value; }
};

// min over integers k of |x - k|. For reduced p/q this is min(m, q-m)/q with
// m = p mod q, so the result's denominator always divides q and the value is
// zero exactly when q | p.
inline SeminormValue seminorm(const Rational& x) {
    const BigInt& q = x.den();
    BigInt m = mod_floor(x.num(), q);
    BigInt other = q - m;
    return SeminormValue{Rational(bmin(m, other), q)};
}

// The pair (‖v·z‖, ‖v·‖z‖‖), v >= 1. The two components are provably equal;
// both are computed independently so that equality stays a checkable fact
// rather than an assumption.
inline std::pair<SeminormValue, SeminormValue> scaled_seminorm(const BigInt& v, const Rational& z) {
    if (v < 1) throw Error("scaled_seminorm: v must be >= 1");
    const BigInt& q = z.den();
    BigInt p0 = mod_floor(z.num(), q);
    BigInt m0 = (v * p0) % q;
    BigInt pn = bmin(p0, BigInt(q - p0));  // numerator of ‖z‖
    BigInt m1 = (v * pn) % q;
    auto fold = [&q](const BigInt& m) {
        BigInt other = q - m;
        return SeminormValue{Rational(bmin(m, other), q)};
    };
    return {fold(m0), fold(m1)};
}

// A point of the circle group, represented by its canonical rational
// representative in [0, 1).
class CirclePoint {
public:
    CirclePoint() : value_(Rational(0)) {}
    explicit CirclePoint(const Rational& x) : value_(x.frac()) {}

    static CirclePoint parse(std::string_view s) { return CirclePoint(Rational::parse(s)); }

    const Rational& value() const { return value_; }
    const BigInt& num() const { return value_.num(); }
    const BigInt& den() const { return value_.den(); }
    bool is_zero() const { return value_.is_zero(); }
    std::string str() const { return value_.str(); }

    bool operator==(const CirclePoint& o) const { return value_ == o.value_; }

private:
    Rational value_;
};

}  // namespace charsub
