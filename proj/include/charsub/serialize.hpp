// JSON and CSV serialization. Field order is fixed (ordered_json) and every
// rational is the reduced string "p/q", so identical runs produce identical
// bytes.
#pragma once

#include <cstdint>
#include <ostream>
#include <string>
#include <vector>

#include "json.hpp"

#include "charsub/density.hpp"
#include "charsub/experiments.hpp"
#include "charsub/lemma_lab.hpp"
#include "charsub/membership.hpp"
#include "charsub/rational.hpp"
#include "charsub/sequences.hpp"

namespace charsub {

using Json = nlohmann::ordered_json;

inline Json json_int(const BigInt& n) {
    // JSON numbers when they fit in 64 bits, decimal strings past that
    if (n >= BigInt(INT64_MIN) && n <= BigInt(INT64_MAX)) return n.convert_to<std::int64_t>();
    return n.str();
}

inline BigInt bigint_from_json(const Json& j) {
    if (j.is_number_integer()) return BigInt(j.get<std::int64_t>());
    if (j.is_string()) return parse_bigint(j.get<std::string>());
    throw ParseError("expected integer or decimal string");
}

inline Json to_json(const Rational& r) { return r.str(); }

inline Json to_json(const SeqDescriptor& d) {
    Json j;
    switch (d.kind) {
        case SeqDescriptor::Kind::Factorial:
            j["kind"] = "factorial";
            break;
        case SeqDescriptor::Kind::Geometric:
            j["kind"] = "geometric";
            j["base"] = json_int(d.base);
            break;
        case SeqDescriptor::Kind::RatioChain: {
            j["kind"] = "ratio_chain";
            Json rs = Json::array();
            for (const auto& r : d.ratios) rs.push_back(json_int(r));
            j["ratios"] = rs;
            j["tail"] = d.tail == Tail::Repeat ? "repeat"
                        : d.tail == Tail::Pow2Exponents ? "pow2_exponents"
                                                        : "none";
            break;
        }
        case SeqDescriptor::Kind::Explicit: {
            j["kind"] = "explicit";
            Json ts = Json::array();
            for (const auto& t : d.terms) ts.push_back(t.str());
            j["terms"] = ts;
            break;
        }
    }
    return j;
}

inline SeqDescriptor descriptor_from_json(const Json& j) {
    std::string kind = j.at("kind").get<std::string>();
    if (kind == "factorial") return SeqDescriptor::factorial();
    if (kind == "geometric") return SeqDescriptor::geometric(bigint_from_json(j.at("base")));
    if (kind == "ratio_chain") {
        std::vector<BigInt> ratios;
        for (const auto& r : j.at("ratios")) ratios.push_back(bigint_from_json(r));
        std::string tail = j.at("tail").get<std::string>();
        Tail t = tail == "repeat" ? Tail::Repeat
                 : tail == "pow2_exponents" ? Tail::Pow2Exponents
                 : tail == "none" ? Tail::None
                                  : throw ParseError("unknown tail: " + tail);
        return SeqDescriptor::ratio_chain(std::move(ratios), t);
    }
    if (kind == "explicit") {
        std::vector<BigInt> terms;
        for (const auto& t : j.at("terms")) terms.push_back(bigint_from_json(t));
        return SeqDescriptor::explicit_terms(std::move(terms));
    }
    throw ParseError("unknown descriptor kind: " + kind);
}

inline Json to_json(const Certificate& c) {
    Json j;
    if (const auto* ez = std::get_if<EventuallyZero>(&c)) {
        j["kind"] = "eventually_zero";
        j["from_index"] = json_int(ez->from_index);
    } else if (const auto* dt = std::get_if<DividesTerm>(&c)) {
        j["kind"] = "divides_term";
        j["n"] = dt->n;
    } else if (const auto* pr = std::get_if<PersistentResidue>(&c)) {
        j["kind"] = "persistent_residue";
        j["modulus"] = json_int(pr->modulus);
        j["stabilization_index"] = pr->stabilization_index;
    } else if (const auto* db = std::get_if<DensityLowerBound>(&c)) {
        j["kind"] = "density_lower_bound";
        j["bound"] = db->bound.str();
        j["horizon"] = json_int(db->horizon);
    } else if (const auto* he = std::get_if<HorizonEvidence>(&c)) {
        j["kind"] = "horizon_evidence";
        j["horizon"] = he->horizon;
        if (he->last_nonzero)
            j["last_nonzero_index"] = *he->last_nonzero;
        else
            j["last_nonzero_index"] = nullptr;
    }
    return j;
}

inline Json to_json(const MembershipVerdict& v) {
    Json j;
    j["status"] = v.status == MemberStatus::Member ? "member"
                  : v.status == MemberStatus::NonMember ? "non_member"
                                                        : "undecided";
    j["certificate"] = to_json(v.certificate);
    return j;
}

inline Json to_json(const SaturationAnswer& s) {
    Json j;
    if (const auto* yes = std::get_if<SatYes>(&s)) {
        j["answer"] = "yes";
        j["witness"] = yes->witness;
    } else if (const auto* never = std::get_if<SatNever>(&s)) {
        j["answer"] = "never";
        j["obstructing_prime"] = json_int(never->obstructing_prime);
        j["stabilization_index"] = never->stabilization_index;
        j["stable_gcd"] = json_int(never->stable_gcd);
    } else {
        j["answer"] = "unknown";
        j["horizon"] = std::get<SatUnknown>(s).horizon;
    }
    return j;
}

inline Json to_json(const DensityEstimate& e) {
    Json j;
    j["horizon"] = e.horizon;
    j["tail_start"] = e.tail_start;
    j["sup_tail_partial"] = e.sup_tail_partial.str();
    j["argmax"] = e.argmax;
    Json trace = Json::array();
    for (const auto& [n, density] : e.trace) trace.push_back(Json::array({n, density.str()}));
    j["trace"] = trace;
    return j;
}

inline Json to_json(const IndexSet& s, std::uint64_t horizon) {
    Json j;
    j["rule"] = s.str();
    Json elems = Json::array();
    for (auto e : s.materialize(horizon)) elems.push_back(e);
    j["elements"] = elems;
    return j;
}

inline Json to_json(const C1Report& r) {
    Json j;
    j["block_horizon"] = r.block_horizon;
    j["tau_inf"] = r.tau_inf.str();
    j["argmin_k"] = r.argmin_k;
    j["trailing_min"] = r.trailing_min.str();
    j["holds_on_prefix"] = r.holds_on_prefix;
    j["note"] = "prefix evidence";
    return j;
}

inline Json to_json(const std::vector<C1C2Row>& rows) {
    Json arr = Json::array();
    for (const auto& row : rows) {
        Json j;
        j["k"] = row.k;
        j["lhs"] = row.lhs.str();
        j["rhs"] = row.rhs.str();
        j["holds"] = row.holds;
        arr.push_back(j);
    }
    return arr;
}

inline Json to_json(const C2SearchResult& r) {
    auto candidate = [](const C2Candidate& c) {
        Json j;
        j["strategy"] = c.strategy;
        Json blocks = Json::array();
        for (auto b : c.blocks) blocks.push_back(b);
        j["blocks"] = blocks;
        j["estimate"] = to_json(c.estimate);
        return j;
    };
    Json j;
    j["best"] = candidate(r.best);
    Json all = Json::array();
    for (const auto& c : r.all) all.push_back(candidate(c));
    j["all"] = all;
    j["note"] = "prefix evidence";
    return j;
}

inline Json to_json(const std::vector<BlockCount>& counts) {
    Json arr = Json::array();
    for (const auto& c : counts) {
        Json j;
        j["k"] = c.k;
        j["size"] = json_int(c.size);
        j["count_eps"] = json_int(c.count_at_least_eps);
        j["count_nonzero"] = json_int(c.count_nonzero);
        arr.push_back(j);
    }
    return arr;
}

inline Json to_json(const L1Result& r) {
    Json j;
    j["count"] = json_int(r.count);
    j["lower"] = r.lower.str();
    j["upper"] = r.upper.str();
    j["holds"] = r.holds;
    return j;
}

inline Json to_json(const SweepReport& r) {
    Json j;
    j["cases_checked"] = r.cases_checked;
    Json fails = Json::array();
    for (const auto& f : r.failures) {
        Json fj;
        fj["alpha"] = f.alpha.str();
        fj["p"] = f.p;
        fj["eps"] = f.eps.str();
        fj["count"] = json_int(f.count);
        fails.push_back(fj);
    }
    j["failures"] = fails;
    j["min_slack"] = r.min_slack ? Json(r.min_slack->str()) : Json(nullptr);
    return j;
}

inline Json to_json(const T0Report& r) {
    Json j;
    j["ratio_sup"] = r.ratio_sup.str();
    j["divisibility_ok"] = r.divisibility_ok;
    j["pairs_checked"] = r.pairs_checked;
    Json fails = Json::array();
    for (const auto& [nk, i] : r.failures) fails.push_back(Json::array({nk, i}));
    j["failures"] = fails;
    return j;
}

inline Json to_json(const T1Report& r) {
    Json j;
    j["tau"] = r.tau.str();
    j["delta"] = r.delta.str();
    j["eps"] = r.eps.str();
    Json entries = Json::array();
    for (const auto& e : r.entries) {
        Json ej;
        ej["k"] = e.k;
        ej["block_end"] = e.block_end;
        ej["density"] = e.density.str();
        ej["exceeds_delta"] = e.exceeds_delta;
        ej["at_least_ninth"] = e.at_least_ninth;
        entries.push_back(ej);
    }
    j["entries"] = entries;
    j["all_exceed_delta"] = r.all_exceed_delta;
    j["count_at_least_ninth"] = r.count_at_least_ninth;
    return j;
}

// Wire forms of the CLI's sequence and experiment outputs, shared with the
// tests that validate them against the shipped schemas.

inline Json chain_json(const ArithChain& chain) {
    Json j;
    j["descriptor"] = to_json(chain.descriptor());
    j["count"] = chain.size();
    Json terms = Json::array(), ratios = Json::array();
    for (std::size_t n = 1; n <= chain.size(); ++n) {
        terms.push_back(chain.term(n).str());
        ratios.push_back(chain.ratio(n).str());
    }
    j["terms"] = terms;
    j["ratios"] = ratios;
    return j;
}

inline constexpr std::uint64_t kDerivedTermListCap = 100000;

inline Json derived_json(const DerivedSeq& d) {
    Json j;
    j["descriptor"] = to_json(d.chain().descriptor());
    j["blocks"] = d.block_count();
    Json anchors = Json::array(), sizes = Json::array(), chain_terms = Json::array();
    for (std::size_t k = 1; k <= d.block_count() + 1; ++k) {
        anchors.push_back(d.anchor(k).str());
        chain_terms.push_back(d.chain().term(k).str());
        if (k <= d.block_count()) sizes.push_back(d.block_size(k).str());
    }
    j["anchors"] = anchors;
    j["block_sizes"] = sizes;
    j["chain_terms"] = chain_terms;
    j["horizon"] = d.horizon().str();
    if (d.horizon() <= BigInt(kDerivedTermListCap)) {
        Json terms = Json::array();
        for (const auto& t : d.prefix_terms(to_u64(d.horizon()))) terms.push_back(t.str());
        j["terms"] = terms;
    } else {
        j["terms_omitted"] = true;
    }
    return j;
}

inline Json to_json(const L1RandomReport& r) {
    Json j;
    j["cases_checked"] = r.cases_checked;
    Json fails = Json::array();
    for (const auto& f : r.failures) {
        Json fj;
        fj["lo"] = f.lo.str();
        fj["hi"] = f.hi.str();
        fj["alpha"] = f.alpha.str();
        fj["count"] = json_int(f.count);
        fails.push_back(fj);
    }
    j["failures"] = fails;
    j["min_slack"] = r.min_slack ? Json(r.min_slack->str()) : Json(nullptr);
    j["seed"] = r.seed;
    return j;
}

inline Json to_json(const B1RandomReport& r) {
    Json j;
    j["cases_checked"] = r.cases_checked;
    Json fails = Json::array();
    for (const auto& f : r.failures) {
        Json fj;
        fj["z"] = f.z.str();
        fj["ratio_bound"] = f.ratio_bound;
        fj["reason"] = f.reason;
        fails.push_back(fj);
    }
    j["failures"] = fails;
    j["max_witness_index"] = r.max_witness_index;
    j["seed"] = r.seed;
    return j;
}

inline Json to_json(const KunenReport& r) {
    Json j;
    j["q_max"] = r.q_max;
    j["points_checked"] = r.points_checked;
    j["failures"] = Json::array();  // failures are counted, not enumerated
    j["failure_count"] = r.failure_count;
    j["max_witness_block"] = r.max_witness_block;
    j["max_from_index"] = json_int(r.max_from_index);
    return j;
}

// CSV: comma separation, header row, LF line endings.

inline void csv_orbit(std::ostream& os, const std::vector<BigInt>& indices,
                      const std::vector<BigInt>& terms, const std::vector<SeminormValue>& values) {
    os << "n,d_n,seminorm\n";
    for (std::size_t i = 0; i < values.size(); ++i)
        os << indices[i].str() << ',' << terms[i].str() << ',' << values[i].value.str() << '\n';
}

inline void csv_blocks(std::ostream& os, const std::vector<BlockCount>& counts) {
    os << "k,size,count_eps,count_nonzero\n";
    for (const auto& c : counts)
        os << c.k << ',' << c.size.str() << ',' << c.count_at_least_eps.str() << ','
           << c.count_nonzero.str() << '\n';
}

inline void csv_density(std::ostream& os, const DensityEstimate& e) {
    os << "n,partial_density\n";
    for (const auto& [n, density] : e.trace) os << n << ',' << density.str() << '\n';
}

}  // namespace charsub
