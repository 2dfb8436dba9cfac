// Exact reduced fractions. Every point, threshold and density in the library
// is carried by this type; there is no floating point on any decision path.
#pragma once

#include <string>
#include <string_view>

#include "charsub/bigint.hpp"
#include "charsub/errors.hpp"

namespace charsub {

class Rational {
public:
    Rational() = default;
    Rational(const BigInt& n) : num_(n), den_(1) {}          // NOLINT(google-explicit-constructor)
    Rational(long long n) : num_(n), den_(1) {}              // NOLINT(google-explicit-constructor)
    Rational(const BigInt& n, const BigInt& d) : num_(n), den_(d) { normalize(); }
    Rational(long long n, long long d) : num_(n), den_(d) { normalize(); }

    static Rational raw_reduced(BigInt n, BigInt d) {
        // Caller guarantees gcd(|n|, d) = 1 and d >= 1.
        Rational r;
        r.num_ = std::move(n);
        r.den_ = std::move(d);
        return r;
    }

    const BigInt& num() const { return num_; }
    const BigInt& den() const { return den_; }

    bool is_zero() const { return num_ == 0; }
    bool is_integer() const { return den_ == 1; }
    int sign() const { return num_ < 0 ? -1 : (num_ > 0 ? 1 : 0); }

    BigInt floor() const { return floor_div(num_, den_); }
    BigInt ceil() const { return -floor_div(-num_, den_); }

    // x - floor(x), in [0, 1). Stays reduced: shifting by an integer cannot
    // introduce a common factor with the denominator.
    Rational frac() const { return raw_reduced(mod_floor(num_, den_), den_); }

    friend Rational operator+(const Rational& a, const Rational& b) {
        return Rational(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
    }
    friend Rational operator-(const Rational& a, const Rational& b) {
        return Rational(a.num_ * b.den_ - b.num_ * a.den_, a.den_ * b.den_);
    }
    friend Rational operator*(const Rational& a, const Rational& b) {
        return Rational(a.num_ * b.num_, a.den_ * b.den_);
    }
    friend Rational operator/(const Rational& a, const Rational& b) {
        if (b.num_ == 0) throw Error("division by zero rational");
        return Rational(a.num_ * b.den_, a.den_ * b.num_);
    }
    Rational operator-() const { return raw_reduced(-num_, den_); }

    friend bool operator==(const Rational& a, const Rational& b) {
        return a.num_ == b.num_ && a.den_ == b.den_;
    }
    friend bool operator!=(const Rational& a, const Rational& b) { return !(a == b); }
    friend bool operator<(const Rational& a, const Rational& b) {
        return a.num_ * b.den_ < b.num_ * a.den_;
    }
    friend bool operator<=(const Rational& a, const Rational& b) {
        return a.num_ * b.den_ <= b.num_ * a.den_;
    }
    friend bool operator>(const Rational& a, const Rational& b) { return b < a; }
    friend bool operator>=(const Rational& a, const Rational& b) { return b <= a; }

    // Serialized form everywhere: "p/q", reduced, q >= 1.
    std::string str() const {
        return num_.str() + "/" + den_.str();
    }

    // Accepts "p/q" or a bare integer "p".
    static Rational parse(std::string_view s) {
        auto slash = s.find('/');
        if (slash == std::string_view::npos)
            return Rational(parse_bigint(std::string(s)));
        BigInt n = parse_bigint(std::string(s.substr(0, slash)));
        BigInt d = parse_bigint(std::string(s.substr(slash + 1)));
        if (d == 0) throw ParseError("zero denominator: " + std::string(s));
        return Rational(n, d);
    }

    // Nearest double, for log output only; never used in comparisons.
    double approx() const { return num_.convert_to<double>() / den_.convert_to<double>(); }

private:
    void normalize() {
        if (den_ == 0) throw Error("rational with zero denominator");
        if (den_ < 0) {
            den_ = -den_;
            num_ = -num_;
        }
        BigInt g = big_gcd(num_ < 0 ? BigInt(-num_) : num_, den_);
        if (g > 1) {
            num_ /= g;
            den_ /= g;
        }
    }

    BigInt num_{0};
    BigInt den_{1};
};

inline const Rational& rmin(const Rational& a, const Rational& b) { return a <= b ? a : b; }
inline const Rational& rmax(const Rational& a, const Rational& b) { return a >= b ? a : b; }

}  // namespace charsub
