// Membership deciders for rational circle points, with machine-checkable
// certificates.
//
// For x = p/q reduced and a divisibility chain (a_n), the orbit value
// ‖a_n x‖ lives in the discrete set {j/q}, so convergence to 0 means the
// orbit is eventually exactly 0, which happens iff q | a_n for some n.
// That question is decided by stabilization of g_n = gcd(q, a_n): the g_n
// are nondecreasing divisors of q, and the descriptor's tail structure
// tells us which primes can still grow once the explicit part is past.
#pragma once

#include <cstdint>
#include <optional>
#include <utility>
#include <variant>
#include <vector>

#include "charsub/bigint.hpp"
#include "charsub/errors.hpp"
#include "charsub/rational.hpp"
#include "charsub/seminorm.hpp"
#include "charsub/sequences.hpp"

namespace charsub {

enum class MemberStatus { Member, NonMember, Undecided };

struct EventuallyZero {
    BigInt from_index;  // orbit is exactly 0 from this index on
};
struct DividesTerm {
    std::size_t n;  // minimal n with q | a_n
};
struct PersistentResidue {
    BigInt modulus;  // m* = q / gcd(q, a_n) for all n past stabilization; >= 2
    std::size_t stabilization_index;
};
struct DensityLowerBound {
    Rational bound;  // certified lower bound on partial densities of the nonzero set
    BigInt horizon;  // block-end index at which the bound was evaluated
};
struct HorizonEvidence {
    std::size_t horizon;
    std::optional<std::size_t> last_nonzero;  // last checked index with ‖a_n x‖ != 0
};

using Certificate =
    std::variant<EventuallyZero, DividesTerm, PersistentResidue, DensityLowerBound, HorizonEvidence>;

struct MembershipVerdict {
    MemberStatus status;
    Certificate certificate;
};

struct SatYes {
    std::size_t witness;  // minimal materializable n with m | a_n
};
struct SatNever {
    BigInt obstructing_prime;  // divides m but no ratio in the tail structure
    std::size_t stabilization_index;
    BigInt stable_gcd;  // gcd(m, a_n) for every n past stabilization
};
struct SatUnknown {
    std::size_t horizon;
};

using SaturationAnswer = std::variant<SatYes, SatNever, SatUnknown>;

namespace detail {

// Modular exponentiation; modulus >= 1.
inline BigInt pow_mod(BigInt base, std::size_t exp, const BigInt& mod) {
    if (mod == 1) return 0;
    BigInt result = 1;
    base = mod_floor(base, mod);
    while (exp > 0) {
        if (exp & 1) result = (result * base) % mod;
        base = (base * base) % mod;
        exp >>= 1;
    }
    return result;
}

// lim_n gcd(m, a_n), computable from the descriptor alone; nullopt when the
// tail gives no guarantee (finite chains). Raising the tail content to
// bit-length-of-m many copies saturates every achievable prime exponent.
inline std::optional<BigInt> eventual_gcd(const SeqDescriptor& d, const BigInt& m) {
    std::size_t exp = boost::multiprecision::msb(m) + 2;
    switch (d.kind) {
        case SeqDescriptor::Kind::Factorial:
            return m;  // every prime power eventually divides n!
        case SeqDescriptor::Kind::Geometric:
            return big_gcd(m, pow_mod(d.base, exp, m));
        case SeqDescriptor::Kind::RatioChain: {
            if (d.tail == Tail::None) return std::nullopt;
            BigInt content;  // gcd(m, content) = gcd(m, eventual chain content)
            if (d.tail == Tail::Repeat) {
                BigInt cycle = 1;
                for (const auto& r : d.ratios) cycle = mod_floor(cycle * r, m);
                content = pow_mod(cycle, exp, m);
            } else {
                // Pow2Exponents: a_n = (product of explicit ratios) * 2^(growing)
                BigInt fixed = 1;
                for (const auto& r : d.ratios) fixed = mod_floor(fixed * r, m);
                content = mod_floor(fixed * pow_mod(2, exp, m), m);
            }
            return big_gcd(m, content);
        }
        case SeqDescriptor::Kind::Explicit: return std::nullopt;
    }
    return std::nullopt;
}

// Smallest prime factor by trial division. Sufficient for every modulus the
// deciders meet; inputs without a factor below 10^6 must be prime and below
// 10^12 or we refuse.
inline BigInt smallest_prime_factor(const BigInt& n) {
    if (n < 2) throw Error("no prime factor of " + n.str());
    if (n % 2 == 0) return 2;
    if (n % 3 == 0) return 3;
    for (BigInt f = 5; f * f <= n && f <= 1000000; f += 6) {
        if (n % f == 0) return f;
        if (n % (f + 2) == 0) return f + 2;
    }
    if (n <= BigInt("1000000000000")) return n;  // no factor <= 10^6, n < (10^6)^2: prime
    throw Error("cannot determine a prime factor of " + n.str());
}

inline constexpr std::size_t kScanCap = 1 << 20;

}  // namespace detail

// Decides whether m | a_n for some n. Yes carries the minimal witness found
// by linear scan; Never carries a prime of m that the tail structure can
// never contribute, plus the index from which gcd(m, a_n) is constant. The
// scans walk a_n mod m through the ratio stream, so nothing is materialized.
inline SaturationAnswer divides_some_term(const ArithChain& a, const BigInt& m) {
    if (m < 1) throw Error("divides_some_term: m must be >= 1");
    if (m == 1) return SatYes{1};

    auto limit = detail::eventual_gcd(a.descriptor(), m);
    if (!limit) {
        for (std::size_t n = 1; n <= a.size(); ++n)
            if (a.term(n) % m == 0) return SatYes{n};
        return SatUnknown{a.size()};
    }

    BigInt residue = 1;  // a_n mod m
    if (*limit == m) {
        for (std::size_t n = 1; n <= detail::kScanCap; ++n) {
            residue = (residue * mod_floor(a.ratio_value(n), m)) % m;
            if (residue == 0) return SatYes{n};
        }
        throw Error("saturation witness not reached within scan cap");
    }

    for (std::size_t n = 1; n <= detail::kScanCap; ++n) {
        residue = (residue * mod_floor(a.ratio_value(n), m)) % m;
        if (big_gcd(m, residue) == *limit) {
            BigInt cofactor = m / *limit;
            return SatNever{detail::smallest_prime_factor(cofactor), n, *limit};
        }
    }
    throw Error("gcd stabilization not reached within scan cap");
}

// Membership of x in the subgroup generated by {1/a_n} (its image under the
// quotient map): x = p/q reduced belongs iff q divides some a_n.
inline MembershipVerdict member_generated(const ArithChain& a, const CirclePoint& x) {
    const BigInt& q = x.den();
    SaturationAnswer sat = divides_some_term(a, q);
    if (auto* yes = std::get_if<SatYes>(&sat))
        return {MemberStatus::Member, DividesTerm{yes->witness}};
    if (auto* never = std::get_if<SatNever>(&sat))
        return {MemberStatus::NonMember,
                PersistentResidue{q / never->stable_gcd, never->stabilization_index}};
    auto unknown = std::get<SatUnknown>(sat);
    std::optional<std::size_t> last_nonzero;
    for (std::size_t n = 1; n <= unknown.horizon; ++n)
        if ((mod_floor(a.term(n), q) * x.num()) % q != 0) last_nonzero = n;
    return {MemberStatus::Undecided, HorizonEvidence{unknown.horizon, last_nonzero}};
}

inline constexpr long long kDefaultRatioCap = 1024;

namespace detail {

// t_u is a statement about the infinite sequence; a finite prefix can only
// report horizon evidence, whatever it contains.
inline MembershipVerdict horizon_verdict(const ArithChain& a, const CirclePoint& x) {
    const BigInt& q = x.den();
    std::optional<std::size_t> last_nonzero;
    for (std::size_t n = 1; n <= a.size(); ++n)
        if ((mod_floor(a.term(n), q) * x.num()) % q != 0) last_nonzero = n;
    return {MemberStatus::Undecided, HorizonEvidence{a.size(), last_nonzero}};
}

}  // namespace detail

// Membership of x in t_u(T) for a chain u with bounded ratios evidenced on
// the materialized prefix. For rational x the verdict coincides with
// member_generated; Member certificates carry the index from which the
// orbit vanishes identically. Finite descriptors stay Undecided: the prefix
// cannot certify anything about the infinite sequence.
inline MembershipVerdict decide_t_u(const ArithChain& a, const CirclePoint& x,
                                    const BigInt& ratio_cap = kDefaultRatioCap) {
    Rational sup = ratio_bound(a, a.size());
    if (sup > Rational(ratio_cap))
        throw UnboundedRatiosAtHorizon("prefix ratio sup " + sup.str() + " exceeds cap " +
                                       ratio_cap.str());
    if (!a.descriptor().infinite()) return detail::horizon_verdict(a, x);
    MembershipVerdict v = member_generated(a, x);
    if (v.status == MemberStatus::Member)
        v.certificate = EventuallyZero{BigInt(std::get<DividesTerm>(v.certificate).n)};
    return v;
}

// Same decision on the derived sequence. Its consecutive ratios never exceed
// 2, so the boundedness hypothesis holds structurally and the verdict equals
// member_generated on the source chain.
inline MembershipVerdict decide_t_u(DerivedSeq& d, const CirclePoint& x) {
    if (!d.chain().descriptor().infinite()) return detail::horizon_verdict(d.chain(), x);
    MembershipVerdict v = member_generated(d.chain(), x);
    if (v.status != MemberStatus::Member) return v;
    std::size_t w = std::get<DividesTerm>(v.certificate).n;
    if (d.block_count() < w) d.extend(w);
    // every index >= n_w is zero; extend the zero run backwards over the
    // trailing zeros of the preceding blocks
    const BigInt& q = x.den();
    BigInt from = d.anchor(w);
    while (from > 1) {
        BigInt prev = from - 1;
        auto [k, r] = d.block_of(prev);
        BigInt residue = (r * ((mod_floor(d.block_base(k), q) * x.num()) % q)) % q;
        if (residue != 0) break;
        from = prev;
    }
    v.certificate = EventuallyZero{from};
    return v;
}

// Exact orbit ‖u_n x‖ for n in [from, to].
inline std::vector<SeminormValue> orbit(const ArithChain& u, const CirclePoint& x,
                                        std::size_t from, std::size_t to) {
    if (from < 1 || from > to) throw OutOfHorizon("bad orbit range");
    if (to > u.size()) throw OutOfHorizon("orbit range beyond materialized prefix");
    const BigInt& q = x.den();
    std::vector<SeminormValue> out;
    out.reserve(to - from + 1);
    BigInt res = 1;  // a_n mod q, built incrementally
    for (std::size_t n = 1; n <= to; ++n) {
        res = (res * mod_floor(u.ratio(n), q)) % q;
        if (n >= from) {
            BigInt m = (res * mod_floor(x.num(), q)) % q;
            out.push_back(SeminormValue{Rational(bmin(m, BigInt(q - m)), q)});
        }
    }
    return out;
}

inline std::vector<SeminormValue> orbit(const StrictSeq& u, const CirclePoint& x,
                                        std::size_t from, std::size_t to) {
    if (from < 1 || from > to) throw OutOfHorizon("bad orbit range");
    if (to > u.size()) throw OutOfHorizon("orbit range beyond materialized prefix");
    const BigInt& q = x.den();
    std::vector<SeminormValue> out;
    out.reserve(to - from + 1);
    for (std::size_t n = from; n <= to; ++n) {
        BigInt m = (mod_floor(u.term(n), q) * mod_floor(x.num(), q)) % q;
        out.push_back(SeminormValue{Rational(bmin(m, BigInt(q - m)), q)});
    }
    return out;
}

inline std::vector<SeminormValue> orbit(const DerivedSeq& u, const CirclePoint& x,
                                        const BigInt& from, const BigInt& to) {
    if (from < 1 || from > to) throw OutOfHorizon("bad orbit range");
    if (to > u.horizon()) throw OutOfHorizon("orbit range beyond materialized blocks");
    const BigInt& q = x.den();
    std::vector<SeminormValue> out;
    auto push = [&](const BigInt& residue) {
        BigInt m = residue;
        out.push_back(SeminormValue{Rational(bmin(m, BigInt(q - m)), q)});
    };
    BigInt n = from;
    while (n <= to) {
        if (n == u.horizon()) {
            push((mod_floor(u.chain().term(u.block_count() + 1), q) * x.num()) % q);
            break;
        }
        auto [k, r] = u.block_of(n);
        BigInt step = (mod_floor(u.block_base(k), q) * mod_floor(x.num(), q)) % q;
        BigInt residue = (r * step) % q;
        BigInt block_end = u.anchor(k + 1) - 1;
        for (; n <= to && n <= block_end; ++n) {
            push(residue);
            residue += step;
            if (residue >= q) residue -= q;
        }
    }
    return out;
}

struct T0Report {
    Rational ratio_sup;
    bool divisibility_ok = true;
    std::size_t pairs_checked = 0;
    std::vector<std::pair<std::size_t, std::size_t>> failures;  // (n_k, i) with u_{n_k} ∤ u_i
};

// Checks, exactly and on the prefix only, the two hypotheses of the union
// theorem: bounded ratios and the divisor-subsequence property a_k | u_i for
// i >= n_k.
inline T0Report verify_T0_hypotheses(const StrictSeq& u, const std::vector<std::size_t>& anchors,
                                     std::size_t horizon) {
    if (horizon < 1 || horizon > u.size())
        throw OutOfHorizon("horizon beyond materialized prefix");
    T0Report rep;
    rep.ratio_sup = ratio_bound(u, horizon);
    for (std::size_t nk : anchors) {
        if (nk < 1 || nk > horizon) throw OutOfHorizon("anchor outside horizon");
        const BigInt& base = u.term(nk);
        for (std::size_t i = nk; i <= horizon; ++i) {
            ++rep.pairs_checked;
            if (u.term(i) % base != 0) {
                rep.divisibility_ok = false;
                rep.failures.emplace_back(nk, i);
            }
        }
    }
    return rep;
}

}  // namespace charsub
