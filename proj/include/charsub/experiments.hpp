// Seeded randomized sweeps and the reproduction experiments exposed by the
// CLI. Inputs are generated serially from the seed before any parallel
// evaluation, so reports are identical for every worker count.
#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "charsub/bigint.hpp"
#include "charsub/density.hpp"
#include "charsub/lemma_lab.hpp"
#include "charsub/membership.hpp"
#include "charsub/parallel.hpp"
#include "charsub/rational.hpp"
#include "charsub/rng.hpp"
#include "charsub/sequences.hpp"

namespace charsub {

struct L1Failure {
    Rational lo, hi, alpha;
    BigInt count;
};

struct L1RandomReport {
    std::uint64_t cases_checked = 0;
    std::vector<L1Failure> failures;
    std::optional<Rational> min_slack;  // min distance of the count to either bound
    std::uint64_t seed = 0;
};

// Random closed intervals and spacings with denominators <= 10^3; checks the
// two-sided bound and its integer-rounded form.
inline L1RandomReport l1_randomized(std::uint64_t cases, std::uint64_t seed) {
    Rng rng(seed);
    L1RandomReport rep;
    rep.seed = seed;
    for (std::uint64_t i = 0; i < cases; ++i) {
        Rational lo{BigInt(rng.in(0, 10000)) - 5000, BigInt(rng.in(1, 1000))};
        Rational width{BigInt(rng.in(0, 8000)), BigInt(rng.in(1, 1000))};
        Rational hi = lo + width;
        Rational alpha{BigInt(rng.in(1, 3000)), BigInt(rng.in(1, 1000))};
        auto res = verify_L1(lo, hi, alpha);
        bool ceil_form = (width / alpha).ceil() - 1 <= res.count;
        ++rep.cases_checked;
        if (!res.holds || !ceil_form) {
            rep.failures.push_back(L1Failure{lo, hi, alpha, res.count});
            continue;
        }
        Rational slack = rmin(Rational(res.count) - res.lower, res.upper - Rational(res.count));
        if (!rep.min_slack || slack < *rep.min_slack) rep.min_slack = slack;
    }
    return rep;
}

struct B1Failure {
    Rational z;
    std::uint64_t ratio_bound;
    std::string reason;
};

struct B1RandomReport {
    std::uint64_t cases_checked = 0;
    std::vector<B1Failure> failures;
    std::size_t max_witness_index = 0;
    std::uint64_t seed = 0;
};

// Random ratio-bounded sequences (bound q <= 10) and points with
// 0 < ‖z‖ <= 1/(2q); the escape witness must exist and satisfy the sandwich,
// which verify_basic1 checks case by case.
inline B1RandomReport b1_randomized(std::uint64_t cases, std::uint64_t seed) {
    Rng rng(seed);
    B1RandomReport rep;
    rep.seed = seed;
    for (std::uint64_t i = 0; i < cases; ++i) {
        std::uint64_t q = rng.in(2, 10);
        std::vector<BigInt> terms;
        BigInt prev = 1;
        for (int n = 0; n < 64; ++n) {
            BigInt span = prev * q - prev;  // choices in [prev+1, prev*q]
            std::uint64_t pick = rng.below(
                span > 1000000 ? 1000000 : span.convert_to<std::uint64_t>());
            terms.push_back(prev + 1 + BigInt(pick));
            prev = terms.back();
        }
        StrictSeq v(std::move(terms), Rational(BigInt(q)));
        std::uint64_t den = rng.in(2 * q + 1, 1000000);
        std::uint64_t num = rng.in(1, den / (2 * q));
        Rational z{BigInt(num), BigInt(den)};
        if (rng.coin()) z = Rational(BigInt(rng.in(0, 4))) - z;
        ++rep.cases_checked;
        try {
            auto w = verify_basic1(v, z);
            if (w.m > rep.max_witness_index) rep.max_witness_index = w.m;
        } catch (const Error& e) {
            rep.failures.push_back(B1Failure{z, q, e.what()});
        }
    }
    return rep;
}

struct KunenReport {
    std::uint64_t q_max = 0;
    std::uint64_t points_checked = 0;
    std::uint64_t failure_count = 0;
    std::size_t max_witness_block = 0;
    BigInt max_from_index = 0;
};

// The factorial derived sequence characterizes exactly the rationals: every
// reduced p/q with q <= q_max must come back Member, with the orbit exactly
// zero from the witness anchor on.
inline KunenReport kunen_experiment(std::uint64_t q_max, unsigned workers = 1) {
    if (q_max < 1) throw Error("kunen experiment needs q_max >= 1");
    std::size_t blocks = static_cast<std::size_t>(q_max) + 12;
    DerivedSeq zeta(build_chain(SeqDescriptor::factorial(), blocks + 1), blocks);

    struct PerQ {
        std::uint64_t points = 0;
        std::uint64_t failures = 0;
        std::size_t witness_block = 0;
        BigInt max_from = 0;
    };
    std::vector<PerQ> slots(q_max);
    parallel_for(q_max, workers, [&](std::size_t idx) {
        std::uint64_t q = idx + 1;
        DerivedSeq local = zeta;  // private copy per task; decisions may touch lazy state
        PerQ& slot = slots[idx];
        auto sat = divides_some_term(local.chain(), BigInt(q));
        auto* yes = std::get_if<SatYes>(&sat);
        if (!yes) {
            ++slot.failures;
            return;
        }
        slot.witness_block = yes->witness;
        const BigInt& anchor_w = local.anchor(yes->witness);
        for (std::uint64_t p = q == 1 ? 0 : 1; p < (q == 1 ? 1 : q); ++p) {
            if (big_gcd(BigInt(p), BigInt(q)) != 1) continue;
            CirclePoint x{Rational(BigInt(p), BigInt(q))};
            ++slot.points;
            auto v = decide_t_u(local, x);
            if (v.status != MemberStatus::Member) {
                ++slot.failures;
                continue;
            }
            BigInt from = std::get<EventuallyZero>(v.certificate).from_index;
            if (from > anchor_w) {
                ++slot.failures;
                continue;
            }
            auto window = orbit(local, x, from, BigInt(anchor_w + 50));
            bool all_zero = true;
            for (const auto& s : window) all_zero = all_zero && s.value.is_zero();
            if (!all_zero) ++slot.failures;
            if (from > 1 && orbit(local, x, BigInt(from - 1), BigInt(from - 1))[0].value.is_zero())
                ++slot.failures;
            if (from > slot.max_from) slot.max_from = from;
        }
    });

    KunenReport rep;
    rep.q_max = q_max;
    for (const auto& slot : slots) {
        rep.points_checked += slot.points;
        rep.failure_count += slot.failures;
        if (slot.witness_block > rep.max_witness_block) rep.max_witness_block = slot.witness_block;
        if (slot.max_from > rep.max_from_index) rep.max_from_index = slot.max_from;
    }
    return rep;
}

struct CorpusChain {
    SeqDescriptor desc;
    std::vector<Rational> points;  // reduced p/q, 2 <= q <= 10^4
};

inline std::vector<CorpusChain> random_corpus(std::size_t chain_count,
                                              std::size_t points_per_chain, std::uint64_t seed) {
    Rng rng(seed);
    std::vector<CorpusChain> corpus;
    corpus.reserve(chain_count);
    for (std::size_t c = 0; c < chain_count; ++c) {
        CorpusChain entry;
        std::vector<BigInt> ratios;
        for (int i = 0; i < 30; ++i) ratios.emplace_back(rng.in(2, 10));
        entry.desc = SeqDescriptor::ratio_chain(std::move(ratios), Tail::Repeat);
        for (std::size_t i = 0; i < points_per_chain; ++i) {
            std::uint64_t q = rng.in(2, 10000);
            std::uint64_t p = rng.in(1, q - 1);
            while (big_gcd(BigInt(p), BigInt(q)) != 1) p = rng.in(1, q - 1);
            entry.points.push_back(Rational{BigInt(p), BigInt(q)});
        }
        corpus.push_back(std::move(entry));
    }
    return corpus;
}

}  // namespace charsub
