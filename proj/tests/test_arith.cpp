#include "catch_amalgamated.hpp"

#include <atomic>

#include "charsub/dyadic.hpp"
#include "charsub/parallel.hpp"
#include "charsub/rational.hpp"
#include "charsub/rng.hpp"
#include "charsub/seminorm.hpp"

#include "oracles.hpp"

using namespace charsub;

TEST_CASE("rational normalization and parsing") {
    CHECK(Rational(6, 4) == Rational(3, 2));
    CHECK(Rational(-6, 4) == Rational(-3, 2));
    CHECK(Rational(6, -4) == Rational(-3, 2));
    CHECK(Rational(0, 7) == Rational(0));
    CHECK(Rational(0, 7).den() == 1);
    CHECK(Rational(5, 3).str() == "5/3");
    CHECK(Rational(4).str() == "4/1");
    CHECK(Rational::parse("22/7") == Rational(22, 7));
    CHECK(Rational::parse("-3") == Rational(-3));
    CHECK_THROWS_AS(Rational::parse("1/0"), ParseError);
    CHECK_THROWS_AS(Rational::parse("a/b"), ParseError);
    CHECK(Rational(7, 2).floor() == 3);
    CHECK(Rational(-7, 2).floor() == -4);
    CHECK(Rational(-7, 2).ceil() == -3);
    CHECK(Rational(-1, 3).frac() == Rational(2, 3));
}

TEST_CASE("seminorm on the pinned cases") {
    CHECK(seminorm(Rational(4)).value == Rational(0));
    CHECK(seminorm(Rational(7, 2)).value == Rational(1, 2));
    // 5/3: nearest integers are 1 and 2, min(2/3, 1/3) = 1/3.
    CHECK(seminorm(Rational(5, 3)).value == oracle::brute_seminorm(Rational(5, 3)));
    CHECK(seminorm(Rational(5, 3)).value == Rational(1, 3));
}

TEST_CASE("seminorm symmetry, periodicity, subadditivity (random)") {
    Rng rng(kDefaultSeed);
    for (int i = 0; i < 500; ++i) {
        Rational x(static_cast<long long>(rng.in(0, 4000)) - 2000,
                   static_cast<long long>(rng.in(1, 60)));
        Rational y(static_cast<long long>(rng.in(0, 4000)) - 2000,
                   static_cast<long long>(rng.in(1, 60)));
        BigInt k = BigInt(rng.in(0, 10)) - 5;
        Rational nx = seminorm(x).value;
        CHECK(nx == oracle::brute_seminorm(x));
        CHECK(nx == seminorm(-x).value);
        CHECK(nx == seminorm(x + Rational(k)).value);
        CHECK(Rational(0) <= nx);
        CHECK(nx <= Rational(1, 2));
        // group seminorm: ‖x+y‖ <= ‖x‖ + ‖y‖
        CHECK(seminorm(x + y).value <= nx + seminorm(y).value);
        // denominator of ‖p/q‖ divides q
        CHECK(x.den() % nx.den() == 0);
        CHECK((nx.is_zero() == (x.num() % x.den() == 0)));
    }
}

TEST_CASE("scaled_seminorm pinned cases") {
    auto [a, b] = scaled_seminorm(3, Rational(2, 5));
    CHECK(a.value == Rational(1, 5));
    CHECK(b.value == Rational(1, 5));

    for (auto z : {Rational(3, 7), Rational(-9, 11), Rational(5, 2)}) {
        auto [c, d] = scaled_seminorm(1, z);
        CHECK(c.value == seminorm(z).value);
        CHECK(d.value == seminorm(z).value);
    }

    auto [e, f] = scaled_seminorm(2, Rational(1, 8));
    CHECK(e.value == Rational(1, 4));
    CHECK(f.value == Rational(1, 4));
    // 2*(1/8) <= 1/2, so the value is exactly v*‖z‖.
    CHECK(e.value == Rational(2) * seminorm(Rational(1, 8)).value);

    CHECK_THROWS_AS(scaled_seminorm(0, Rational(1, 2)), Error);
}

TEST_CASE("Lemma 2.1 equality, exhaustive small sweep") {
    // ‖vz‖ = ‖v‖z‖‖ for all v <= 100 and z = p/q, q <= 60, |p| <= 2q (the
    // full 10^3 x 10^3 sweep runs in the acceptance suite).
    for (long long q = 1; q <= 60; ++q) {
        for (long long p = -2 * q; p <= 2 * q; ++p) {
            if (big_gcd(BigInt(p < 0 ? -p : p), BigInt(q)) != 1) continue;
            Rational z(p, q);
            Rational nz = seminorm(z).value;
            for (long long v = 1; v <= 100; ++v) {
                auto [vz, vnz] = scaled_seminorm(v, z);
                REQUIRE(vz.value == vnz.value);
                Rational scaled = Rational(v) * nz;
                if (scaled <= Rational(1, 2)) REQUIRE(vz.value == scaled);
            }
        }
    }
}

// Full-range sweep (v <= 10^3, q <= 10^3, all residues). ~10^8 cases, so it
// hides behind its tag: ./unit_tests "[lemma21_full]"
TEST_CASE("Lemma 2.1 equality, full sweep", "[.][lemma21_full]") {
    std::atomic<long long> bad{0};
    parallel_for(1000, default_workers(), [&](std::size_t idx) {
        long long q = static_cast<long long>((idx * 333) % 1000) + 1;
        for (long long p = 0; p < q || (q == 1 && p == 0); ++p) {
            if (big_gcd(BigInt(p), BigInt(q)) != 1) continue;
            Rational z(p, q);
            Rational nz = seminorm(z).value;
            for (long long v = 1; v <= 1000; ++v) {
                auto [vz, vnz] = scaled_seminorm(v, z);
                if (!(vz.value == vnz.value)) ++bad;
                if (2 * v * nz.num() <= nz.den() && !(vz.value == Rational(v) * nz)) ++bad;
            }
        }
    });
    CHECK(bad == 0);
}

TEST_CASE("dyadic arithmetic basics") {
    Dyadic half(1, -1);
    Dyadic quarter(1, -2);
    CHECK((half + quarter).to_rational() == Rational(3, 4));
    CHECK((half - quarter) == quarter);
    CHECK(Dyadic(4, 0).exp2() == 2);  // canonical form strips twos
    CHECK(Dyadic(3, -3).floor() == 0);
    CHECK(Dyadic(-3, -3).floor() == -1);
    CHECK(Dyadic(5, -3).round_down(1).to_rational() == Rational(1, 2));
    CHECK(Dyadic(5, -3).round_up(1).to_rational() == Rational(1, 1));
    CHECK(Dyadic(-5, -3).round_down(1).to_rational() == Rational(-1, 1));
}

TEST_CASE("enclose is outward and tight") {
    auto third = enclose(Rational(1, 3), 16);
    CHECK(third.contains(Rational(1, 3)));
    CHECK(third.width().to_rational() <= Rational(1, 65536));
    auto exact = enclose(Rational(3, 8), 16);
    CHECK(exact.width().is_zero());
}

TEST_CASE("seminorm_enclosure pinned cases") {
    // [0.24, 0.26] -> contains itself (below 1/2). 0.24 = 24/100 is not
    // dyadic; use nearby dyadics 15/64 and 17/64.
    DyadicInterval a(Dyadic(15, -6), Dyadic(17, -6));
    auto ea = seminorm_enclosure(a);
    CHECK(ea.contains(a));
    CHECK(ea.low == a.low);
    CHECK(ea.high == a.high);

    // [1 - 17/64, 1 - 15/64]: reflection about 1/2.
    DyadicInterval b(Dyadic(47, -6), Dyadic(49, -6));
    auto eb = seminorm_enclosure(b);
    CHECK(eb.low == a.low);
    CHECK(eb.high == a.high);

    // straddles the integer 1: hull of both branch images.
    DyadicInterval c(Dyadic(63, -6), Dyadic(65, -6));
    auto ec = seminorm_enclosure(c);
    CHECK(ec.low.is_zero());
    CHECK(ec.high == Dyadic(1, -6));

    // straddles a half-integer: the max 1/2 is attained.
    DyadicInterval d(Dyadic(31, -6), Dyadic(33, -6));
    auto ed = seminorm_enclosure(d);
    CHECK(ed.high.to_rational() == Rational(1, 2));

    CHECK_THROWS_AS(seminorm_enclosure(DyadicInterval(Dyadic(0, 0), Dyadic(1, -1))),
                    ImpreciseInput);
}

TEST_CASE("enclosure soundness against exact rational orbit (random)") {
    Rng rng(kDefaultSeed + 1);
    for (int i = 0; i < 300; ++i) {
        Rational x(static_cast<long long>(rng.in(0, 1000)),
                   static_cast<long long>(rng.in(1, 997)));
        BigInt u(rng.in(1, 1 << 20));
        auto in = enclose(x, 64);
        auto out = scaled_seminorm_enclosure(in, u, 64);
        Rational exact = seminorm(Rational(u) * x).value;
        CHECK(out.contains(exact));
        // scaling multiplies the width by u; the seminorm itself never widens,
        // and outward rounding adds at most 2^-63 per side
        CHECK(out.width().to_rational() <=
              Rational(u) * in.width().to_rational() + Rational(1, BigInt(1) << 62));
    }
}

TEST_CASE("enclosure width never grows") {
    Rng rng(kDefaultSeed + 2);
    for (int i = 0; i < 300; ++i) {
        long long lo_num = static_cast<long long>(rng.in(0, 4095)) - 2048;
        long long w_num = static_cast<long long>(rng.in(0, 510));
        DyadicInterval in(Dyadic(lo_num, -10), Dyadic(lo_num + w_num, -10));
        auto out = seminorm_enclosure(in);
        CHECK(out.width() <= in.width());
        CHECK(Dyadic() <= out.low);
        CHECK(out.high.to_rational() <= Rational(1, 2));
    }
}
