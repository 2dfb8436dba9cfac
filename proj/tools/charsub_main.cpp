// Command-line front end. Every subcommand prints machine-readable output
// (JSON by default, CSV where the data is row-shaped), rationals are always
// "p/q", and identical invocations produce byte-identical bytes.
//
// Exit codes: 0 success, 1 failed assertions (lemma counterexamples,
// exhausted witness horizons, self-test failures), 2 usage errors. Errors
// carry the offending case as JSON on stderr.
#include <cstdint>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "charsub/charsub.hpp"

using namespace charsub;

namespace {

enum class Format { Json, Csv };

struct GlobalOpts {
    std::uint64_t seed = kDefaultSeed;
    unsigned workers = default_workers();
    bool json = false;
    bool csv = false;

    Format format(Format preferred) const {
        if (json) return Format::Json;
        if (csv) return Format::Csv;
        return preferred;
    }
};

void emit(const Json& j) { std::cout << j.dump(2) << "\n"; }

std::vector<std::size_t> parse_index_list(const std::string& text) {
    std::vector<std::size_t> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) out.push_back(std::stoull(item));
    return out;
}

std::vector<Rational> parse_rational_list(const std::string& text) {
    std::vector<Rational> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) out.push_back(Rational::parse(item));
    return out;
}

Json error_json(const std::string& what, const Json& context = Json::object()) {
    Json j;
    j["error"] = what;
    if (!context.empty()) j["case"] = context;
    return j;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact computations with characterized subgroups of the circle group"};
    app.require_subcommand(0, 1);
    app.fallthrough();  // global flags (--json, --seed, ...) may follow the subcommand

    GlobalOpts g;
    bool selftest = false;
    app.add_option("--seed", g.seed, "seed for randomized sweeps (default 25214903917)");
    app.add_option("--workers", g.workers, "worker threads for sweeps (default: hardware)");
    auto* json_flag = app.add_flag("--json", g.json, "force JSON output");
    app.add_flag("--csv", g.csv, "force CSV output")->excludes(json_flag);
    app.add_flag("--selftest", selftest, "run the acceptance suite and exit");

    // shared option state
    std::string seq_text, x_text, eps_text = "1/10", set_text, strategies_text, anchors_text;
    std::uint64_t count = 16, blocks = 16, horizon = 1000, tail_start = 1, from = 1, to = 0;
    std::uint64_t cases = 0, pmax = 300, denmax = 64, q_max = 200, ell = 1;
    std::uint64_t ratio_cap = 1024, tail_blocks = 50;
    bool derived = false;

    auto add_seq = [&](CLI::App* cmd, bool with_derived = false) {
        cmd->add_option("--seq", seq_text,
                        "sequence descriptor: factorial | geometric:B | ratios:2,3:repeat | "
                        "ratios::pow2 | ratios:2,3 | explicit:1,2,6")
            ->required();
        if (with_derived)
            cmd->add_flag("--derived", derived, "work with the derived (#) sequence");
    };

    auto* seq = app.add_subcommand("seq", "sequence generators");
    auto* seq_gen = seq->add_subcommand("gen", "materialize a chain prefix");
    add_seq(seq_gen);
    seq_gen->add_option("--count", count, "number of terms (default 16)");

    auto* seq_derive = seq->add_subcommand("derive", "derived (#) sequence block structure");
    add_seq(seq_derive);
    seq_derive->add_option("--blocks", blocks, "complete blocks to materialize (default 16)");

    auto* orbit_cmd = app.add_subcommand("orbit", "exact seminorm orbit ‖u_n x‖");
    add_seq(orbit_cmd, true);
    orbit_cmd->add_option("--x", x_text, "rational point p/q")->required();
    orbit_cmd->add_option("--from", from, "first index (default 1)");
    orbit_cmd->add_option("--to", to, "last index (default: materialized horizon)");
    orbit_cmd->add_option("--count", count, "chain terms to materialize (default 16)");
    orbit_cmd->add_option("--blocks", blocks, "blocks to materialize when --derived (default 16)");

    auto* member_cmd = app.add_subcommand("member", "membership in t_u with certificate");
    add_seq(member_cmd, true);
    member_cmd->add_option("--x", x_text, "rational point p/q")->required();
    member_cmd->add_option("--ratio-cap", ratio_cap,
                           "refuse chains whose prefix ratio sup exceeds this (default 1024)");
    member_cmd->add_option("--horizon", horizon, "chain terms to materialize first (default 64)");

    auto* t0_cmd = app.add_subcommand("verify-t0", "check union-theorem hypotheses on a prefix");
    add_seq(t0_cmd, true);
    t0_cmd->add_option("--anchors", anchors_text, "comma-separated anchor indices n_k")->required();
    t0_cmd->add_option("--horizon", horizon, "prefix horizon (default 1000)");

    auto* density_cmd = app.add_subcommand("density", "upper-density estimate of an index set");
    density_cmd->add_option("--set", set_text, "index set: explicit:1,4,9 | geometric:3/2 | every:5")
        ->required();
    density_cmd->add_option("--horizon", horizon, "index horizon")->required();
    density_cmd->add_option("--tail-start", tail_start, "tail window start (default 1)");

    auto* lift_cmd = app.add_subcommand("lift", "lift block indices to L(A)");
    add_seq(lift_cmd);
    lift_cmd->add_option("--set", set_text, "block index set rule")->required();
    lift_cmd->add_option("--blocks", blocks, "materialized blocks (default 16)");

    auto* c1_cmd = app.add_subcommand("c1", "condition (C1) prefix evidence");
    add_seq(c1_cmd);
    c1_cmd->add_option("--blocks", blocks, "block horizon (default 16)");
    std::string tau_text;
    c1_cmd->add_option("--tau", tau_text, "also evaluate the per-block bound chain at this tau");

    auto* c2_cmd = app.add_subcommand("c2-search", "search for (C2) refuting evidence");
    add_seq(c2_cmd);
    c2_cmd->add_option("--blocks", blocks, "block horizon (default 16)");
    c2_cmd->add_option("--tail-start", tail_start, "tail window start (default 1)");
    c2_cmd->add_option("--strategies", strategies_text,
                       "comma-separated rules (default geometric:3/2,geometric:2,geometric:4,"
                       "every:<blocks/8>,greedy)");

    auto* blocks_cmd = app.add_subcommand("blocks", "exact per-block orbit counts");
    add_seq(blocks_cmd);
    blocks_cmd->add_option("--x", x_text, "rational point p/q")->required();
    blocks_cmd->add_option("--eps", eps_text, "threshold (default 1/10)");
    blocks_cmd->add_option("--blocks", blocks, "block horizon (default 16)");

    auto* smember_cmd = app.add_subcommand("smember", "statistical membership with certificate");
    add_seq(smember_cmd);
    smember_cmd->add_option("--x", x_text, "rational point p/q")->required();
    smember_cmd->add_option("--tail-blocks", tail_blocks,
                            "blocks past stabilization for the density bound (default 50)");

    auto* strace_cmd = app.add_subcommand("strace", "partial densities of the eps-large set");
    add_seq(strace_cmd, true);
    strace_cmd->add_option("--x", x_text, "rational point p/q")->required();
    strace_cmd->add_option("--eps", eps_text, "threshold (default 1/10)");
    strace_cmd->add_option("--horizon", horizon, "index horizon")->required();
    strace_cmd->add_option("--tail-start", tail_start, "tail window start (default 1)");

    auto* lemma = app.add_subcommand("lemma", "brute-force lemma verifiers");
    auto* l1_cmd = lemma->add_subcommand("l1", "randomized interval-counting bound");
    l1_cmd->add_option("--cases", cases, "number of cases (default 10000)");
    auto* l2_cmd = lemma->add_subcommand("l2", "exhaustive ninth-share counting sweep");
    l2_cmd->add_option("--pmax", pmax, "largest p (default 300)");
    l2_cmd->add_option("--denmax", denmax, "largest alpha denominator (default 64)");
    l2_cmd->add_option("--eps", eps_text, "comma-separated thresholds (default 1/10)");
    auto* l3_cmd = lemma->add_subcommand("l3", "ninth-share block witness");
    add_seq(l3_cmd);
    l3_cmd->add_option("--x", x_text, "rational point p/q")->required();
    l3_cmd->add_option("--eps", eps_text, "threshold (default 1/10)");
    l3_cmd->add_option("--l", ell, "search from this block (default 1)");
    l3_cmd->add_option("--blocks", blocks, "block horizon (default 16)");
    auto* b1_cmd = lemma->add_subcommand("b1", "randomized escape-witness sandwich");
    b1_cmd->add_option("--cases", cases, "number of cases (default 1000)");

    auto* experiment = app.add_subcommand("experiment", "reproduction experiments");
    auto* kunen_cmd = experiment->add_subcommand(
        "kunen", "factorial derived sequence over all reduced p/q, q <= Q");
    kunen_cmd->add_option("--q", q_max, "largest denominator (default 200)");
    auto* t1_cmd = experiment->add_subcommand("t1", "block-end threshold experiment");
    add_seq(t1_cmd);
    t1_cmd->add_option("--x", x_text, "rational point p/q")->required();
    t1_cmd->add_option("--eps", eps_text, "threshold (default 1/10)");
    t1_cmd->add_option("--blocks", blocks, "block horizon (default 16)");

    CLI11_PARSE(app, argc, argv);

    try {
        if (selftest) {
            SelftestOptions opt{g.seed, g.workers};
            auto results = selftest::run_acceptance(opt);
            bool all = true;
            for (const auto& r : results) {
                std::cout << (r.passed ? "PASS" : "FAIL") << "  criterion " << r.id << "  "
                          << r.name << "  " << r.detail << "\n";
                all = all && r.passed;
            }
            emit(selftest::acceptance_report(results));
            return all ? 0 : 1;
        }

        if (seq_gen->parsed()) {
            auto chain = build_chain(SeqDescriptor::parse(seq_text), count);
            if (g.format(Format::Json) == Format::Csv) {
                std::cout << "n,a_n,q_n\n";
                for (std::size_t n = 1; n <= chain.size(); ++n)
                    std::cout << n << ',' << chain.term(n).str() << ',' << chain.ratio(n).str()
                              << "\n";
            } else {
                emit(chain_json(chain));
            }
            return 0;
        }

        if (seq_derive->parsed()) {
            auto d = derive(build_chain(SeqDescriptor::parse(seq_text), blocks + 1), blocks);
            emit(derived_json(d));
            return 0;
        }

        if (orbit_cmd->parsed()) {
            CirclePoint x = CirclePoint::parse(x_text);
            std::vector<SeminormValue> values;
            std::vector<BigInt> indices, terms;
            auto desc = SeqDescriptor::parse(seq_text);
            if (!derived && desc.kind == SeqDescriptor::Kind::Explicit) {
                // explicit sequences need not be divisibility chains
                StrictSeq u(desc.terms);
                std::size_t last = to == 0 ? u.size() : to;
                values = orbit(u, x, from, last);
                for (std::size_t n = from; n <= last; ++n) {
                    indices.push_back(n);
                    terms.push_back(u.term(n));
                }
            } else if (derived) {
                auto d = derive(build_chain(SeqDescriptor::parse(seq_text), blocks + 1), blocks);
                BigInt last = to == 0 ? d.horizon() : BigInt(to);
                if (last - BigInt(from) > 1000000)
                    throw Error("orbit range too large to stream; narrow --from/--to");
                values = orbit(d, x, BigInt(from), last);
                for (BigInt n = from; n <= last; ++n) {
                    indices.push_back(n);
                    terms.push_back(d.term(n));
                }
            } else {
                auto chain = build_chain(SeqDescriptor::parse(seq_text),
                                         std::max(count, to == 0 ? count : to));
                std::size_t last = to == 0 ? chain.size() : to;
                values = orbit(chain, x, from, last);
                for (std::size_t n = from; n <= last; ++n) {
                    indices.push_back(n);
                    terms.push_back(chain.term(n));
                }
            }
            if (g.format(Format::Csv) == Format::Json) {
                Json rows = Json::array();
                for (std::size_t i = 0; i < values.size(); ++i)
                    rows.push_back(Json::array(
                        {indices[i].str(), terms[i].str(), values[i].value.str()}));
                Json j;
                j["x"] = x.str();
                j["rows"] = rows;
                emit(j);
            } else {
                csv_orbit(std::cout, indices, terms, values);
            }
            return 0;
        }

        if (member_cmd->parsed()) {
            CirclePoint x = CirclePoint::parse(x_text);
            MembershipVerdict v;
            if (derived) {
                auto d = derive(build_chain(SeqDescriptor::parse(seq_text), 9), 8);
                v = decide_t_u(d, x);
            } else {
                auto chain = build_chain(SeqDescriptor::parse(seq_text),
                                         std::max<std::uint64_t>(horizon, 2));
                v = decide_t_u(chain, x, BigInt(ratio_cap));
            }
            emit(to_json(v));
            return 0;
        }

        if (t0_cmd->parsed()) {
            auto desc = SeqDescriptor::parse(seq_text);
            std::vector<BigInt> terms;
            if (derived) {
                auto d = derive(build_chain(desc, 4), 3);
                while (d.horizon() < horizon) d.extend(d.block_count() + 8);
                terms = d.prefix_terms(horizon);
            } else if (desc.kind == SeqDescriptor::Kind::Explicit) {
                terms = desc.terms;  // any strictly increasing sequence qualifies here
                if (horizon > terms.size()) horizon = terms.size();
            } else {
                terms = build_chain(desc, horizon).terms();
            }
            StrictSeq u(std::move(terms));
            auto rep = verify_T0_hypotheses(u, parse_index_list(anchors_text), horizon);
            emit(to_json(rep));
            return 0;
        }

        if (density_cmd->parsed()) {
            auto est = upper_density(IndexSet::parse(set_text), horizon, tail_start);
            if (g.format(Format::Json) == Format::Csv)
                csv_density(std::cout, est);
            else
                emit(to_json(est));
            return 0;
        }

        if (lift_cmd->parsed()) {
            auto d = derive(build_chain(SeqDescriptor::parse(seq_text), blocks + 1), blocks);
            auto lifted = lift(d, IndexSet::parse(set_text));
            emit(to_json(lifted, UINT64_MAX));
            return 0;
        }

        if (c1_cmd->parsed()) {
            auto d = derive(build_chain(SeqDescriptor::parse(seq_text), blocks + 1), blocks);
            Json j;
            j["check"] = to_json(check_C1(d, blocks));
            if (!tau_text.empty())
                j["per_block"] = to_json(per_block_c1c2_bound(d, Rational::parse(tau_text), blocks));
            emit(j);
            return 0;
        }

        if (c2_cmd->parsed()) {
            auto d = derive(build_chain(SeqDescriptor::parse(seq_text), blocks + 1), blocks);
            std::vector<IndexSet> strategies;
            if (strategies_text.empty())
                strategies_text = "geometric:3/2,geometric:2,geometric:4,every:" +
                                  std::to_string(std::max<std::uint64_t>(2, blocks / 8)) +
                                  ",greedy";
            std::stringstream ss(strategies_text);
            std::string item;
            while (std::getline(ss, item, ','))
                strategies.push_back(item == "greedy" ? greedy_thinning_rule(d, blocks)
                                                      : IndexSet::parse(item));
            auto res = c2_witness_search(d, strategies, blocks, tail_start);
            emit(to_json(res));
            return 0;
        }

        if (blocks_cmd->parsed()) {
            auto chain = build_chain(SeqDescriptor::parse(seq_text), blocks + 1);
            auto counts =
                block_counts(chain, CirclePoint::parse(x_text), Rational::parse(eps_text), blocks);
            if (g.format(Format::Csv) == Format::Json)
                emit(to_json(counts));
            else
                csv_blocks(std::cout, counts);
            return 0;
        }

        if (smember_cmd->parsed()) {
            auto chain = build_chain(SeqDescriptor::parse(seq_text), 2);
            auto v = decide_statistical_t_d(chain, CirclePoint::parse(x_text), tail_blocks);
            emit(to_json(v));
            return 0;
        }

        if (strace_cmd->parsed()) {
            CirclePoint x = CirclePoint::parse(x_text);
            Rational eps = Rational::parse(eps_text);
            auto desc = SeqDescriptor::parse(seq_text);
            DensityEstimate est;
            if (derived) {
                auto d = derive(build_chain(desc, 4), 3);
                est = statistical_trace(d, x, eps, horizon, tail_start);
            } else if (desc.kind == SeqDescriptor::Kind::Explicit) {
                StrictSeq u(desc.terms);
                est = statistical_trace(u, x, eps, horizon, tail_start);
            } else {
                auto chain = build_chain(desc, 1);
                est = statistical_trace(chain, x, eps, horizon, tail_start);
            }
            if (g.format(Format::Json) == Format::Csv)
                csv_density(std::cout, est);
            else
                emit(to_json(est));
            return 0;
        }

        if (l1_cmd->parsed()) {
            auto rep = l1_randomized(cases == 0 ? 10000 : cases, g.seed);
            emit(to_json(rep));
            return rep.failures.empty() ? 0 : 1;
        }

        if (l2_cmd->parsed()) {
            auto rep = sweep_L2(pmax, denmax, parse_rational_list(eps_text), g.workers);
            emit(to_json(rep));
            return rep.failures.empty() ? 0 : 1;
        }

        if (l3_cmd->parsed()) {
            auto chain = build_chain(SeqDescriptor::parse(seq_text), blocks + 1);
            CirclePoint x = CirclePoint::parse(x_text);
            Rational eps = Rational::parse(eps_text);
            std::size_t k = verify_L3(chain, x, eps, ell, blocks);
            auto counts = block_counts(chain, x, eps, k);
            Json j;
            j["witness_k"] = k;
            j["l"] = ell;
            j["eps"] = eps.str();
            j["block_size"] = counts[k - 1].size.str();
            j["count_at_least_eps"] = counts[k - 1].count_at_least_eps.str();
            emit(j);
            return 0;
        }

        if (b1_cmd->parsed()) {
            auto rep = b1_randomized(cases == 0 ? 1000 : cases, g.seed);
            emit(to_json(rep));
            return rep.failures.empty() ? 0 : 1;
        }

        if (kunen_cmd->parsed()) {
            auto rep = kunen_experiment(q_max, g.workers);
            emit(to_json(rep));
            return rep.failure_count == 0 ? 0 : 1;
        }

        if (t1_cmd->parsed()) {
            auto chain = build_chain(SeqDescriptor::parse(seq_text), blocks + 2);
            auto rep = t1_threshold_experiment(chain, CirclePoint::parse(x_text),
                                               Rational::parse(eps_text), blocks);
            emit(to_json(rep));
            return rep.all_exceed_delta ? 0 : 1;
        }

        std::cout << app.help();
        return 0;
    } catch (const HorizonExhausted& e) {
        std::cerr << error_json(e.what()).dump() << "\n";
        return 1;
    } catch (const ParseError& e) {
        std::cerr << error_json(e.what()).dump() << "\n";
        return 2;
    } catch (const Error& e) {
        std::cerr << error_json(e.what()).dump() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << error_json(e.what()).dump() << "\n";
        return 2;
    }
}
