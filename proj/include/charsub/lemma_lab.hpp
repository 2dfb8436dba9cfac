// Brute-force verifiers for the quantitative lemmas and for the threshold
// quantities inside the two main proofs. Sweeps never short-circuit: every
// case contributes to the minimum slack so near-violations stay visible.
#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "charsub/bigint.hpp"
#include "charsub/density.hpp"
#include "charsub/errors.hpp"
#include "charsub/membership.hpp"
#include "charsub/parallel.hpp"
#include "charsub/rational.hpp"
#include "charsub/seminorm.hpp"
#include "charsub/sequences.hpp"

namespace charsub {

struct L1Result {
    BigInt count;    // |alpha*Z ∩ I|
    Rational lower;  // l/alpha - 1
    Rational upper;  // l/alpha + 1
    bool holds;
};

// Counts multiples of alpha in the closed interval [lo, hi] and evaluates the
// two-sided bound exactly.
inline L1Result verify_L1(const Rational& lo, const Rational& hi, const Rational& alpha) {
    if (!(alpha > Rational(0))) throw Error("verify_L1 needs alpha > 0");
    if (hi < lo) throw Error("verify_L1 needs a nonempty interval");
    BigInt count = (hi / alpha).floor() - (lo / alpha).ceil() + 1;
    if (count < 0) count = 0;
    Rational ratio = (hi - lo) / alpha;
    L1Result res{count, ratio - Rational(1), ratio + Rational(1), false};
    res.holds = res.lower <= Rational(count) && Rational(count) <= res.upper;
    return res;
}

// |{r <= p : ‖r*alpha‖ >= eps}| for alpha = s/t, via one residue period.
inline BigInt l2_count(const Rational& alpha, std::uint64_t p, const Rational& eps) {
    const BigInt& t = alpha.den();
    BigInt L = (Rational(t) * eps).ceil();  // qualifying residues: L <= rho <= t - L
    std::uint64_t period = to_u64(t, "alpha denominator");
    std::vector<std::uint64_t> prefix(period + 1, 0);
    BigInt rho = 0;
    BigInt step = mod_floor(alpha.num(), t);
    for (std::uint64_t r = 1; r <= period; ++r) {
        rho += step;
        if (rho >= t) rho -= t;
        prefix[r] = prefix[r - 1] + (rho >= L && t - rho >= L ? 1 : 0);
    }
    return BigInt(p / period) * prefix[period] + prefix[p % period];
}

struct L2Failure {
    Rational alpha;
    std::uint64_t p;
    Rational eps;
    BigInt count;
};

struct SweepReport {
    std::uint64_t cases_checked = 0;
    std::vector<L2Failure> failures;
    std::optional<Rational> min_slack;  // min over all cases of count - p/9

    void merge(SweepReport other) {
        cases_checked += other.cases_checked;
        failures.insert(failures.end(), other.failures.begin(), other.failures.end());
        if (other.min_slack && (!min_slack || *other.min_slack < *min_slack))
            min_slack = other.min_slack;
    }
};

// Exhaustive sweep of the counting lemma: all reduced alpha = s/t with
// t <= den_max and 0 < alpha <= 1/2, all listed eps, all p <= p_max with
// p*alpha >= 1/4; asserts count >= p/9 case by case.
inline SweepReport sweep_L2(std::uint64_t p_max, std::uint64_t den_max,
                            const std::vector<Rational>& eps_list,
                            unsigned workers = 1) {
    if (den_max < 2) throw Error("sweep_L2 needs den_max >= 2");
    if (eps_list.empty()) throw Error("sweep_L2 needs at least one eps");
    for (const auto& eps : eps_list)
        if (!(eps > Rational(0)) || !(eps < Rational(1, 9)))
            throw InvalidEpsilon("eps must satisfy 0 < eps < 1/9, got " + eps.str());

    // one task per alpha-denominator; reports merge associatively in t-order
    std::vector<SweepReport> parts(den_max - 1);
    parallel_for(den_max - 1, workers, [&](std::size_t idx) {
        std::uint64_t t = idx + 2;
        SweepReport& part = parts[idx];
        for (std::uint64_t s = 1; 2 * s <= t; ++s) {
            if (big_gcd(BigInt(s), BigInt(t)) != 1) continue;
            Rational alpha{BigInt(s), BigInt(t)};
            // p*alpha >= 1/4  <=>  p >= t/(4s)
            std::uint64_t p_min = static_cast<std::uint64_t>((t + 4 * s - 1) / (4 * s));
            if (p_min < 1) p_min = 1;
            for (const auto& eps : eps_list) {
                // prefix counts over one period of r*s mod t
                BigInt L = (Rational(t) * eps).ceil();
                std::vector<std::uint64_t> prefix(t + 1, 0);
                std::uint64_t rho = 0;
                for (std::uint64_t r = 1; r <= t; ++r) {
                    rho += s;
                    if (rho >= t) rho -= t;
                    bool ok = BigInt(rho) >= L && BigInt(t - rho) >= L;
                    prefix[r] = prefix[r - 1] + (ok ? 1 : 0);
                }
                for (std::uint64_t p = p_min; p <= p_max; ++p) {
                    BigInt count = BigInt(p / t) * prefix[t] + prefix[p % t];
                    Rational slack = Rational(count) - Rational(BigInt(p), BigInt(9));
                    ++part.cases_checked;
                    if (!part.min_slack || slack < *part.min_slack) part.min_slack = slack;
                    if (slack.sign() < 0)
                        part.failures.push_back(L2Failure{alpha, p, eps, count});
                }
            }
        }
    });

    SweepReport total;
    for (auto& part : parts) total.merge(std::move(part));
    return total;
}

struct Basic1Witness {
    std::size_t m;        // minimal index with v_m*‖z‖ > gamma
    Rational value;       // ‖v_m z‖ = v_m*‖z‖
    Rational gamma;       // 1/(2q)
};

// Finds the escape witness of the doubling lemma and checks the proof's
// sandwich v_{m-1}‖z‖ <= gamma < v_m‖z‖ <= 1/2 with exact comparisons.
inline Basic1Witness verify_basic1(const StrictSeq& v, const Rational& z) {
    if (!v.claimed_ratio_bound())
        throw Error("verify_basic1 needs a sequence with a ratio bound record");
    const Rational& q = *v.claimed_ratio_bound();
    Rational gamma = Rational(1) / (Rational(2) * q);
    Rational norm_z = seminorm(z).value;
    if (!(norm_z > Rational(0)) || !(norm_z <= gamma))
        throw Error("verify_basic1 needs 0 < ‖z‖ <= 1/(2q), got ‖z‖ = " + norm_z.str());

    for (std::size_t m = 1; m <= v.size(); ++m) {
        Rational scaled = Rational(v.term(m)) * norm_z;
        if (scaled > gamma) {
            Rational prev = m == 1 ? norm_z : Rational(v.term(m - 1)) * norm_z;
            if (!(prev <= gamma)) throw Error("minimality violated at witness " + std::to_string(m));
            if (!(scaled <= Rational(1, 2)))
                throw Error("witness escaped past 1/2; ratio bound record must be wrong");
            auto [norm_vz, folded] = scaled_seminorm(v.term(m), z);
            if (norm_vz.value != scaled || folded.value != scaled)
                throw Error("‖v_m z‖ != v_m‖z‖ below 1/2; seminorm identity violated");
            return {m, scaled, gamma};
        }
    }
    throw HorizonExhausted("no escape witness within " + std::to_string(v.size()) + " terms");
}

// Least block k >= l whose eps-large part fills at least a ninth of the
// block; the lemma guarantees one exists when x avoids the generated
// subgroup, so exhausting the horizon is a hard failure.
inline std::size_t verify_L3(ArithChain& a, const CirclePoint& x, const Rational& eps,
                             std::size_t l, std::size_t block_horizon) {
    if (!(eps > Rational(0)) || !(eps < Rational(1, 9)))
        throw InvalidEpsilon("eps must satisfy 0 < eps < 1/9, got " + eps.str());
    if (l < 1 || l > block_horizon) throw Error("need 1 <= l <= block_horizon");
    if (member_generated(a, x).status != MemberStatus::NonMember)
        throw Error("lemma hypothesis needs x outside the generated subgroup");
    auto counts = block_counts(a, x, eps, block_horizon);
    for (std::size_t k = l; k <= block_horizon; ++k)
        if (9 * counts[k - 1].count_at_least_eps >= counts[k - 1].size) return k;
    throw HorizonExhausted("no block with |N_k(eps)| >= |N_k|/9 within horizon " +
                           std::to_string(block_horizon));
}

struct T1Entry {
    std::size_t k;
    std::uint64_t block_end;  // n_{k+1} - 1
    Rational density;         // |E(eps) ∩ [1, block_end]| / block_end, exact
    bool exceeds_delta;
    bool at_least_ninth;      // density >= (1/9)(1 - 1/tau)
};

struct T1Report {
    Rational tau;    // prefix tau_inf
    Rational delta;  // (1/10)(1 - 1/tau)
    Rational eps;
    std::vector<T1Entry> entries;
    bool all_exceed_delta = true;
    std::size_t count_at_least_ninth = 0;
};

// Replays the threshold argument of the (C1) theorem: with delta a tenth of
// (1 - 1/tau), the partial density of E(eps) at block ends must exceed delta
// (the proof derives a contradiction from density <= delta via the 1/9
// lemma).
inline T1Report t1_threshold_experiment(ArithChain& a, const CirclePoint& x, const Rational& eps,
                                        std::size_t block_horizon) {
    if (!(eps > Rational(0)) || !(eps < Rational(1, 9)))
        throw InvalidEpsilon("eps must satisfy 0 < eps < 1/9, got " + eps.str());
    if (member_generated(a, x).status != MemberStatus::NonMember)
        throw Error("threshold experiment needs x outside the generated subgroup");

    DerivedSeq d(a, block_horizon);
    T1Report rep;
    rep.tau = check_C1(d, block_horizon).tau_inf;
    rep.delta = (Rational(1) - Rational(1) / rep.tau) * Rational(1, 10);
    rep.eps = eps;
    Rational ninth = (Rational(1) - Rational(1) / rep.tau) * Rational(1, 9);

    auto counts = block_counts(a, x, eps, block_horizon);
    BigInt cumulative = 0;
    for (std::size_t k = 1; k <= block_horizon; ++k) {
        cumulative += counts[k - 1].count_at_least_eps;
        std::uint64_t block_end = to_u64(BigInt(d.anchor(k + 1) - 1), "block end");
        Rational density(cumulative, BigInt(block_end));
        T1Entry entry{k, block_end, density, density > rep.delta, density >= ninth};
        rep.all_exceed_delta = rep.all_exceed_delta && entry.exceeds_delta;
        if (entry.at_least_ninth) ++rep.count_at_least_ninth;
        rep.entries.push_back(std::move(entry));
    }
    return rep;
}

}  // namespace charsub
