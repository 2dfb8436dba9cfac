#include "catch_amalgamated.hpp"

#include "charsub/lemma_lab.hpp"
#include "charsub/rng.hpp"

#include "oracles.hpp"

using namespace charsub;

TEST_CASE("verify_L1 pinned cases") {
    auto a = verify_L1(Rational(0), Rational(1), Rational(1, 3));
    CHECK(a.count == 4);  // 0, 1/3, 2/3, 1
    CHECK(a.lower == Rational(2));
    CHECK(a.upper == Rational(4));
    CHECK(a.holds);

    auto b = verify_L1(Rational(0), Rational(0), Rational(1));
    CHECK(b.count == 1);
    CHECK(b.lower == Rational(-1));
    CHECK(b.upper == Rational(1));
    CHECK(b.holds);

    auto c = verify_L1(Rational(1, 7), Rational(6, 7), Rational(1, 2));
    CHECK(c.count == 1);  // only 1/2
    CHECK(c.lower == Rational(3, 7));
    CHECK(c.upper == Rational(17, 7));
    CHECK(c.holds);

    CHECK_THROWS_AS(verify_L1(Rational(0), Rational(1), Rational(0)), Error);
    CHECK_THROWS_AS(verify_L1(Rational(1), Rational(0), Rational(1)), Error);
}

TEST_CASE("verify_L1 randomized against direct enumeration") {
    Rng rng(kDefaultSeed + 40);
    for (int i = 0; i < 1000; ++i) {
        Rational lo(static_cast<long long>(rng.in(0, 10000)) - 5000,
                    static_cast<long long>(rng.in(1, 1000)));
        Rational width(static_cast<long long>(rng.in(0, 8000)),
                       static_cast<long long>(rng.in(1, 1000)));
        Rational hi = lo + width;
        Rational alpha(static_cast<long long>(rng.in(1, 3000)),
                       static_cast<long long>(rng.in(1, 1000)));
        auto res = verify_L1(lo, hi, alpha);
        CHECK(res.holds);
        // oracle: count multiples directly over a bracketing integer range
        BigInt lo_j = (lo / alpha).floor() - 1;
        BigInt hi_j = (hi / alpha).floor() + 1;
        BigInt direct = 0;
        for (BigInt j = lo_j; j <= hi_j; ++j) {
            Rational v = Rational(j) * alpha;
            if (lo <= v && v <= hi) ++direct;
        }
        CHECK(res.count == direct);
    }
}

TEST_CASE("l2_count pinned cases and oracle agreement") {
    CHECK(l2_count(Rational(1, 10), 10, Rational(1, 10)) == 9);
    CHECK(l2_count(Rational(1, 2), 1, Rational(1, 100)) == 1);

    Rng rng(kDefaultSeed + 41);
    for (int i = 0; i < 200; ++i) {
        std::uint64_t t = rng.in(2, 80);
        std::uint64_t s = rng.in(1, t / 2 == 0 ? 1 : t / 2);
        Rational alpha(static_cast<long long>(s), static_cast<long long>(t));
        std::uint64_t p = rng.in(1, 400);
        Rational eps(1, static_cast<long long>(rng.in(10, 200)));
        BigInt direct = 0;
        for (std::uint64_t r = 1; r <= p; ++r)
            if (seminorm(Rational(r) * alpha).value >= eps) ++direct;
        CHECK(l2_count(alpha, p, eps) == direct);
    }
}

TEST_CASE("sweep_L2 small exhaustive run") {
    auto rep = sweep_L2(100, 24, {Rational(1, 10), Rational(1, 20)}, 2);
    CHECK(rep.failures.empty());
    REQUIRE(rep.min_slack.has_value());
    CHECK(*rep.min_slack > Rational(0));
    CHECK(rep.cases_checked > 10000);

    // worker count must not affect the result
    auto rep1 = sweep_L2(100, 24, {Rational(1, 10), Rational(1, 20)}, 1);
    CHECK(rep1.cases_checked == rep.cases_checked);
    CHECK(*rep1.min_slack == *rep.min_slack);

    CHECK_THROWS_AS(sweep_L2(50, 16, {Rational(1, 9)}, 1), InvalidEpsilon);
    CHECK_THROWS_AS(sweep_L2(50, 16, {Rational(1, 5)}, 1), InvalidEpsilon);
}

TEST_CASE("verify_basic1 pinned cases") {
    auto geo2 = build_chain(SeqDescriptor::geometric(2), 40);
    StrictSeq v2(geo2.terms(), Rational(2));  // gamma = 1/4

    auto w1 = verify_basic1(v2, Rational(1, 5));
    CHECK(w1.m == 1);
    CHECK(w1.value == Rational(2, 5));
    CHECK(w1.gamma == Rational(1, 4));

    auto w2 = verify_basic1(v2, Rational(1, 4));  // boundary ‖z‖ = gamma
    CHECK(w2.m == 1);
    CHECK(w2.value == Rational(1, 2));

    auto geo3 = build_chain(SeqDescriptor::geometric(3), 40);
    StrictSeq v3(geo3.terms(), Rational(3));  // gamma = 1/6
    auto w3 = verify_basic1(v3, Rational(1, 10));
    CHECK(w3.m == 1);
    CHECK(w3.value == Rational(3, 10));

    // a small z needs several doublings
    auto w4 = verify_basic1(v2, Rational(1, 1000));
    CHECK(w4.m == 8);  // 2^8/1000 = 0.256 > 1/4, 2^7/1000 = 0.128 <= 1/4
    CHECK(w4.value == Rational(256, 1000));

    CHECK_THROWS_AS(verify_basic1(v2, Rational(1, 3)), Error);   // ‖z‖ > gamma
    CHECK_THROWS_AS(verify_basic1(v2, Rational(0)), Error);      // ‖z‖ = 0
    StrictSeq short_seq(std::vector<BigInt>{2}, Rational(2));
    CHECK_THROWS_AS(verify_basic1(short_seq, Rational(1, 1000)), HorizonExhausted);
    StrictSeq no_bound(std::vector<BigInt>{2, 4});
    CHECK_THROWS_AS(verify_basic1(no_bound, Rational(1, 5)), Error);
}

TEST_CASE("verify_basic1 sandwich on random bounded sequences") {
    Rng rng(kDefaultSeed + 42);
    for (int trial = 0; trial < 100; ++trial) {
        std::uint64_t q = rng.in(2, 10);
        std::vector<BigInt> terms;
        BigInt prev = 1;
        for (int i = 0; i < 48; ++i) {
            // strictly increasing with v_i <= q * v_{i-1}
            BigInt hi = prev * q;
            BigInt lo = prev + 1;
            BigInt v = lo + BigInt(rng.below(static_cast<std::uint64_t>(
                                (hi - lo + 1).convert_to<std::uint64_t>() > 1000000
                                    ? 1000000
                                    : (hi - lo + 1).convert_to<std::uint64_t>())));
            terms.push_back(v);
            prev = v;
        }
        StrictSeq v(terms, Rational(BigInt(q)));
        // 0 < ‖z‖ <= 1/(2q)
        std::uint64_t den = rng.in(2 * q + 1, 100000);
        std::uint64_t num = rng.in(1, den / (2 * q));
        Rational z(static_cast<long long>(num), static_cast<long long>(den));
        if (rng.coin()) z = Rational(rng.in(0, 5)) - z;  // shift/reflect; seminorm unchanged
        auto w = verify_basic1(v, z);
        Rational nz = seminorm(z).value;
        Rational gamma(1, static_cast<long long>(2 * q));
        Rational prev_scaled = w.m == 1 ? nz : Rational(v.term(w.m - 1)) * nz;
        CHECK(prev_scaled <= gamma);
        CHECK(w.value > gamma);
        CHECK(w.value <= Rational(1, 2));
        CHECK(scaled_seminorm(v.term(w.m), z).first.value == w.value);
    }
}

TEST_CASE("verify_L3 pinned cases") {
    auto geo2 = build_chain(SeqDescriptor::geometric(2), 65);
    CHECK(verify_L3(geo2, CirclePoint(Rational(1, 3)), Rational(1, 10), 7, 60) == 7);

    auto pow2 = build_chain(SeqDescriptor::ratio_chain({}, Tail::Pow2Exponents), 65);
    std::size_t k = verify_L3(pow2, CirclePoint(Rational(1, 3)), Rational(1, 10), 5, 60);
    CHECK(k == 5);
    // two of every three residues qualify in block 5
    auto counts = block_counts(pow2, CirclePoint(Rational(1, 3)), Rational(1, 10), 5);
    CHECK(counts[4].size == 31);
    CHECK(counts[4].count_at_least_eps == 21);

    auto geo10 = build_chain(SeqDescriptor::geometric(10), 65);
    std::size_t k10 = verify_L3(geo10, CirclePoint(Rational(1, 7)), Rational(1, 14), 3, 60);
    CHECK(k10 <= 6);
    CHECK(k10 == 3);

    // hypothesis violations
    CHECK_THROWS_AS(verify_L3(geo2, CirclePoint(Rational(1, 8)), Rational(1, 10), 1, 60), Error);
    CHECK_THROWS_AS(verify_L3(geo2, CirclePoint(Rational(1, 3)), Rational(1, 9), 1, 60),
                    InvalidEpsilon);
    CHECK_THROWS_AS(verify_L3(geo2, CirclePoint(Rational(1, 3)), Rational(1, 10), 61, 60), Error);
}

TEST_CASE("t1_threshold_experiment on the canonical (C1) chain") {
    auto pow2 = build_chain(SeqDescriptor::ratio_chain({}, Tail::Pow2Exponents), 22);
    auto rep = t1_threshold_experiment(pow2, CirclePoint(Rational(1, 3)), Rational(1, 10), 20);
    CHECK(rep.tau == Rational(2));
    CHECK(rep.delta == Rational(1, 20));
    REQUIRE(rep.entries.size() == 20);
    CHECK(rep.all_exceed_delta);
    CHECK(rep.count_at_least_ninth == 20);

    // block-end density sits in [0.60, 0.70] at horizon 20
    const auto& last = rep.entries.back();
    CHECK(last.density >= Rational(3, 5));
    CHECK(last.density <= Rational(7, 10));

    // enumeration cross-check at the same index
    auto d = derive(pow2, 20);
    auto est = statistical_trace(d, CirclePoint(Rational(1, 3)), Rational(1, 10),
                                 last.block_end, last.block_end);
    CHECK(est.trace.back().second == last.density);
}

TEST_CASE("t1_threshold_experiment degenerate and error paths") {
    // geometric(2): prefix tau_inf = (H+1)/H is barely above 1, delta is tiny,
    // and the density of E is identically 1
    auto geo = build_chain(SeqDescriptor::geometric(2), 12);
    auto rep = t1_threshold_experiment(geo, CirclePoint(Rational(1, 3)), Rational(1, 10), 10);
    CHECK(rep.tau == Rational(11, 10));
    CHECK(rep.delta == Rational(1, 110));
    CHECK(rep.all_exceed_delta);
    for (const auto& e : rep.entries) CHECK(e.density == Rational(1));

    auto fact = build_chain(SeqDescriptor::factorial(), 12);
    CHECK_THROWS_AS(
        t1_threshold_experiment(fact, CirclePoint(Rational(1, 3)), Rational(1, 10), 10), Error);
    CHECK_THROWS_AS(t1_threshold_experiment(geo, CirclePoint(Rational(1, 3)), Rational(1, 2), 10),
                    InvalidEpsilon);
}
