// Dyadic rationals and outward-rounded interval enclosures. These exist only
// so callers can explore seminorm orbits of points that are not exactly
// representable; no membership verdict is ever derived from an interval.
#pragma once

#include <cstdint>
#include <string>

#include "charsub/bigint.hpp"
#include "charsub/errors.hpp"
#include "charsub/rational.hpp"

namespace charsub {

// mant * 2^exp with mant odd or zero (zero keeps exp = 0).
class Dyadic {
public:
    Dyadic() = default;
    Dyadic(BigInt mant, std::int64_t exp) : mant_(std::move(mant)), exp_(exp) { canonicalize(); }

    static Dyadic from_int(const BigInt& n) { return Dyadic(n, 0); }

    const BigInt& mant() const { return mant_; }
    std::int64_t exp2() const { return exp_; }
    bool is_zero() const { return mant_ == 0; }
    int sign() const { return mant_ < 0 ? -1 : (mant_ > 0 ? 1 : 0); }

    Rational to_rational() const {
        if (exp_ >= 0) return Rational(mant_ << exp_);
        return Rational(mant_, BigInt(1) << (-exp_));
    }

    friend Dyadic operator+(const Dyadic& a, const Dyadic& b) {
        std::int64_t e = a.exp_ < b.exp_ ? a.exp_ : b.exp_;
        return Dyadic((a.mant_ << (a.exp_ - e)) + (b.mant_ << (b.exp_ - e)), e);
    }
    friend Dyadic operator-(const Dyadic& a, const Dyadic& b) { return a + (-b); }
    Dyadic operator-() const {
        Dyadic r;
        r.mant_ = -mant_;
        r.exp_ = exp_;
        return r;
    }
    Dyadic scaled_by(const BigInt& c) const { return Dyadic(mant_ * c, exp_); }

    friend bool operator==(const Dyadic& a, const Dyadic& b) {
        return a.mant_ == b.mant_ && (a.mant_ == 0 || a.exp_ == b.exp_);
    }
    friend bool operator!=(const Dyadic& a, const Dyadic& b) { return !(a == b); }
    friend bool operator<(const Dyadic& a, const Dyadic& b) { return (a - b).sign() < 0; }
    friend bool operator<=(const Dyadic& a, const Dyadic& b) { return (a - b).sign() <= 0; }
    friend bool operator>(const Dyadic& a, const Dyadic& b) { return b < a; }
    friend bool operator>=(const Dyadic& a, const Dyadic& b) { return b <= a; }

    BigInt floor() const {
        if (exp_ >= 0) return mant_ << exp_;
        return floor_div(mant_, BigInt(1) << (-exp_));
    }

    // Round to the grid of multiples of 2^-bits.
    Dyadic round_down(unsigned bits) const {
        std::int64_t grid = -static_cast<std::int64_t>(bits);
        if (exp_ >= grid || mant_ == 0) return *this;
        BigInt unit = BigInt(1) << (grid - exp_);
        return Dyadic(floor_div(mant_, unit), grid);
    }
    Dyadic round_up(unsigned bits) const { return -((-*this).round_down(bits)); }

    std::string str() const { return to_rational().str(); }

private:
    void canonicalize() {
        if (mant_ == 0) {
            exp_ = 0;
            return;
        }
        while ((mant_ & 1) == 0) {
            mant_ >>= 1;
            ++exp_;
        }
    }

    BigInt mant_{0};
    std::int64_t exp_{0};
};

inline const Dyadic& dmin(const Dyadic& a, const Dyadic& b) { return a <= b ? a : b; }
inline const Dyadic& dmax(const Dyadic& a, const Dyadic& b) { return a >= b ? a : b; }

struct DyadicInterval {
    Dyadic low;
    Dyadic high;

    DyadicInterval(Dyadic lo, Dyadic hi) : low(std::move(lo)), high(std::move(hi)) {
        if (high < low) throw Error("interval with high < low");
    }

    Dyadic width() const { return high - low; }

    bool contains(const Rational& x) const {
        return low.to_rational() <= x && x <= high.to_rational();
    }
    bool contains(const DyadicInterval& inner) const {
        return low <= inner.low && inner.high <= high;
    }

    DyadicInterval rounded_out(unsigned bits) const {
        return DyadicInterval(low.round_down(bits), high.round_up(bits));
    }
};

inline constexpr unsigned kDefaultEnclosureBits = 256;

// Outward-rounded enclosure of an exact rational at the given precision.
inline DyadicInterval enclose(const Rational& x, unsigned bits = kDefaultEnclosureBits) {
    BigInt scaled_num = x.num() << bits;
    BigInt lo = floor_div(scaled_num, x.den());
    BigInt hi = -floor_div(-scaled_num, x.den());
    std::int64_t e = -static_cast<std::int64_t>(bits);
    return DyadicInterval(Dyadic(lo, e), Dyadic(hi, e));
}

// Exact image of the interval under the circle seminorm. The map is
// 1-Lipschitz, so the output never widens, and all endpoint arithmetic stays
// dyadic, so no rounding is involved.
inline DyadicInterval seminorm_enclosure(const DyadicInterval& in) {
    static const Dyadic kHalf(1, -1);
    static const Dyadic kOne(1, 0);
    if (!(in.width() < kHalf))
        throw ImpreciseInput("seminorm_enclosure: interval width must be < 1/2");
    BigInt k = in.low.floor();
    Dyadic shift = Dyadic::from_int(k);
    Dyadic a = in.low - shift;   // in [0, 1)
    Dyadic b = in.high - shift;  // in [a, a + 1/2) (strictly below 3/2)

    bool contains_integer = a.is_zero() || b >= kOne;
    bool contains_half = a <= kHalf && kHalf <= b;

    Dyadic norm_a = dmin(a, kOne - a);
    Dyadic norm_b = b < kOne ? dmin(b, kOne - b) : b - kOne;

    Dyadic lo = contains_integer ? Dyadic() : dmin(norm_a, norm_b);
    Dyadic hi = contains_half ? kHalf : dmax(norm_a, norm_b);
    return DyadicInterval(lo, hi);
}

// Enclosure of ‖u·y‖ over all y in the input, outward-rounded at `bits`.
// Needs the scaled interval to stay narrower than 1/2, i.e. roughly
// log2(u) guard bits in the input.
inline DyadicInterval scaled_seminorm_enclosure(const DyadicInterval& in, const BigInt& u,
                                                unsigned bits = kDefaultEnclosureBits) {
    DyadicInterval scaled(in.low.scaled_by(u), in.high.scaled_by(u));
    return seminorm_enclosure(scaled).rounded_out(bits);
}

}  // namespace charsub
