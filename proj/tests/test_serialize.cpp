#include "catch_amalgamated.hpp"

#include <sstream>

#include "charsub/serialize.hpp"

#include "schema_check.hpp"

using namespace charsub;

namespace {

const std::string kSchemas = SCHEMA_DIR;

}

TEST_CASE("rational serialization is always reduced p/q") {
    CHECK(to_json(Rational(4)).get<std::string>() == "4/1");
    CHECK(to_json(Rational(-6, 4)).get<std::string>() == "-3/2");
    CHECK(Rational::parse(to_json(Rational(22, 7)).get<std::string>()) == Rational(22, 7));
}

TEST_CASE("descriptor JSON round-trip against the published schema") {
    std::vector<SeqDescriptor> descs = {
        SeqDescriptor::factorial(),
        SeqDescriptor::geometric(2),
        SeqDescriptor::ratio_chain({BigInt(2), BigInt(3)}, Tail::Repeat),
        SeqDescriptor::ratio_chain({}, Tail::Pow2Exponents),
        SeqDescriptor::ratio_chain({BigInt(4), BigInt(6)}, Tail::None),
        SeqDescriptor::explicit_terms({BigInt(1), BigInt(2), BigInt(6)}),
    };
    for (const auto& d : descs) {
        Json j = to_json(d);
        schema_check::validate_file(kSchemas + "/seq_descriptor.schema.json", j);
        CHECK(descriptor_from_json(j) == d);
    }
    // the exact wire forms pinned by the interface contract
    CHECK(to_json(descs[0]).dump() == R"({"kind":"factorial"})");
    CHECK(to_json(descs[1]).dump() == R"({"kind":"geometric","base":2})");
    CHECK(to_json(descs[2]).dump() == R"({"kind":"ratio_chain","ratios":[2,3],"tail":"repeat"})");
    CHECK(to_json(descs[3]).dump() ==
          R"({"kind":"ratio_chain","ratios":[],"tail":"pow2_exponents"})");
    CHECK(to_json(descs[5]).dump() == R"({"kind":"explicit","terms":["1","2","6"]})");
}

TEST_CASE("verdict JSON matches the schema for every certificate kind") {
    auto geo = build_chain(SeqDescriptor::geometric(2), 6);
    auto fact = build_chain(SeqDescriptor::factorial(), 6);
    auto expl = build_chain(SeqDescriptor::explicit_terms({BigInt(2), BigInt(4)}), 2);

    std::vector<MembershipVerdict> verdicts;
    verdicts.push_back(member_generated(geo, CirclePoint(Rational(5, 8))));
    verdicts.push_back(member_generated(geo, CirclePoint(Rational(1, 3))));
    verdicts.push_back(member_generated(expl, CirclePoint(Rational(1, 5))));
    verdicts.push_back(decide_t_u(geo, CirclePoint(Rational(5, 8))));
    verdicts.push_back(decide_statistical_t_d(geo, CirclePoint(Rational(1, 3))));
    verdicts.push_back(decide_statistical_t_d(fact, CirclePoint(Rational(3, 7))));

    for (const auto& v : verdicts) {
        Json j = to_json(v);
        schema_check::validate_file(kSchemas + "/verdict.schema.json", j);
    }
    CHECK(to_json(verdicts[0]).dump() ==
          R"({"status":"member","certificate":{"kind":"divides_term","n":3}})");
    CHECK(to_json(verdicts[1])["certificate"]["kind"] == "persistent_residue");
    CHECK(to_json(verdicts[2])["certificate"]["kind"] == "horizon_evidence");
    CHECK(to_json(verdicts[3])["certificate"]["kind"] == "eventually_zero");
    CHECK(to_json(verdicts[4])["certificate"]["kind"] == "density_lower_bound");
}

TEST_CASE("density estimate JSON matches schema and field order") {
    auto est = upper_density(IndexSet::every_nth(2), 1000, 100);
    Json j = to_json(est);
    schema_check::validate_file(kSchemas + "/density_estimate.schema.json", j);
    CHECK(j.dump().rfind(R"({"horizon":1000,"tail_start":100,"sup_tail_partial":"1/2")", 0) == 0);
}

TEST_CASE("sweep, c1, c2, t0, t1 reports match their schemas") {
    auto sweep = sweep_L2(40, 12, {Rational(1, 10)}, 1);
    schema_check::validate_file(kSchemas + "/sweep_report.schema.json", to_json(sweep));

    auto d = derive(build_chain(SeqDescriptor::factorial(), 14), 12);
    Json c1;
    c1["check"] = to_json(check_C1(d, 12));
    c1["per_block"] = to_json(per_block_c1c2_bound(d, Rational(2), 12));
    schema_check::validate_file(kSchemas + "/c1_report.schema.json", c1);

    auto res = c2_witness_search(d, {IndexSet::geometric_rule(Rational(2)), IndexSet::every_nth(4)},
                                 12, 5);
    schema_check::validate_file(kSchemas + "/c2_search.schema.json", to_json(res));

    StrictSeq s(std::vector<BigInt>{2, 3, 5});
    schema_check::validate_file(kSchemas + "/t0_report.schema.json",
                                to_json(verify_T0_hypotheses(s, {1}, 3)));

    auto pow2 = build_chain(SeqDescriptor::ratio_chain({}, Tail::Pow2Exponents), 12);
    auto t1 = t1_threshold_experiment(pow2, CirclePoint(Rational(1, 3)), Rational(1, 10), 10);
    schema_check::validate_file(kSchemas + "/t1_report.schema.json", to_json(t1));

    schema_check::validate_file(kSchemas + "/index_set.schema.json",
                                to_json(lift(d, IndexSet::explicit_set({2, 4})), 1000));
}

TEST_CASE("chain, derived, and experiment wire forms match their schemas") {
    auto chain = build_chain(SeqDescriptor::ratio_chain({BigInt(2), BigInt(3)}, Tail::Repeat), 6);
    schema_check::validate_file(kSchemas + "/chain.schema.json", chain_json(chain));

    auto d = derive(build_chain(SeqDescriptor::factorial(), 6), 4);
    Json dj = derived_json(d);
    schema_check::validate_file(kSchemas + "/derived.schema.json", dj);
    CHECK(dj["anchors"] == Json::array({"1", "2", "4", "7", "11"}));
    CHECK(dj["terms"].size() == 11);

    // huge horizons omit the term list but keep the block structure
    auto big = derive(build_chain(SeqDescriptor::ratio_chain({}, Tail::Pow2Exponents), 41), 40);
    Json bj = derived_json(big);
    schema_check::validate_file(kSchemas + "/derived.schema.json", bj);
    CHECK(bj["terms_omitted"] == true);

    schema_check::validate_file(kSchemas + "/l1_report.schema.json",
                                to_json(l1_randomized(200, kDefaultSeed)));
    schema_check::validate_file(kSchemas + "/b1_report.schema.json",
                                to_json(b1_randomized(50, kDefaultSeed)));
    schema_check::validate_file(kSchemas + "/kunen_report.schema.json",
                                to_json(kunen_experiment(24, 2)));
}

TEST_CASE("CSV streams: comma separated, header row, LF endings") {
    auto geo = build_chain(SeqDescriptor::geometric(2), 4);
    auto values = orbit(geo, CirclePoint(Rational(1, 3)), 1, 4);
    std::vector<BigInt> idx = {1, 2, 3, 4};
    std::ostringstream os;
    csv_orbit(os, idx, geo.terms(), values);
    CHECK(os.str() ==
          "n,d_n,seminorm\n1,2,1/3\n2,4,1/3\n3,8,1/3\n4,16,1/3\n");

    auto counts = block_counts(geo, CirclePoint(Rational(1, 3)), Rational(1, 10), 3);
    std::ostringstream bs;
    csv_blocks(bs, counts);
    CHECK(bs.str() == "k,size,count_eps,count_nonzero\n1,1,1,1\n2,1,1,1\n3,1,1,1\n");
    CHECK(bs.str().find("\r") == std::string::npos);
}

TEST_CASE("json emission is deterministic") {
    auto mk = [] {
        auto d = derive(build_chain(SeqDescriptor::factorial(), 10), 8);
        auto res = c2_witness_search(d, {IndexSet::geometric_rule(Rational(2))}, 8, 3);
        return to_json(res).dump(2);
    };
    CHECK(mk() == mk());
}
