// Upper-density estimation, block lifting, the (C1)/(C2) conditions, exact
// per-block counting of large orbit values, and statistical membership.
//
// Counting inside a block uses the reduction ‖r·a_k·x‖ = ‖r·α‖ with
// α = ‖a_k·x‖: the residues r·b mod q (b = a_k·p mod q) cycle with period
// m_k = q / gcd(q, b), so a block of astronomical size is counted from one
// period plus a remainder, never by enumeration. An enumeration path exists
// separately (statistical_trace) and the two must agree exactly.
#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "charsub/bigint.hpp"
#include "charsub/errors.hpp"
#include "charsub/membership.hpp"
#include "charsub/rational.hpp"
#include "charsub/seminorm.hpp"
#include "charsub/sequences.hpp"

namespace charsub {

// A (possibly rule-backed) subset of N, extended deterministically.
class IndexSet {
public:
    enum class Rule { Explicit, GeometricRule, EveryNth };

    static IndexSet explicit_set(std::vector<std::uint64_t> elems) {
        for (std::size_t i = 0; i < elems.size(); ++i) {
            if (elems[i] < 1) throw Error("index set elements must be positive");
            if (i > 0 && elems[i] <= elems[i - 1])
                throw Error("index set elements must be strictly increasing");
        }
        IndexSet s;
        s.rule_ = Rule::Explicit;
        s.elems_ = std::move(elems);
        return s;
    }

    // k_j = floor(c^j) for j = 1, 2, ... with duplicates dropped; c > 1.
    static IndexSet geometric_rule(Rational c) {
        if (!(c > Rational(1))) throw Error("geometric rule needs ratio > 1");
        IndexSet s;
        s.rule_ = Rule::GeometricRule;
        s.ratio_ = std::move(c);
        return s;
    }

    // {step, 2*step, 3*step, ...}
    static IndexSet every_nth(std::uint64_t step) {
        if (step < 1) throw Error("step must be >= 1");
        IndexSet s;
        s.rule_ = Rule::EveryNth;
        s.step_ = step;
        return s;
    }

    Rule rule() const { return rule_; }

    std::vector<std::uint64_t> materialize(std::uint64_t horizon) const {
        std::vector<std::uint64_t> out;
        switch (rule_) {
            case Rule::Explicit:
                for (auto e : elems_)
                    if (e <= horizon) out.push_back(e);
                break;
            case Rule::GeometricRule: {
                Rational power = ratio_;
                std::uint64_t last = 0;
                while (true) {
                    BigInt fl = power.floor();
                    if (fl > BigInt(horizon)) break;
                    std::uint64_t v = to_u64(fl);
                    if (v >= 1 && v > last) {
                        out.push_back(v);
                        last = v;
                    }
                    power = power * ratio_;
                }
                break;
            }
            case Rule::EveryNth:
                for (std::uint64_t v = step_; v <= horizon; v += step_) out.push_back(v);
                break;
        }
        return out;
    }

    // Grammar: explicit:1,4,9 | geometric:3/2 | every:5
    std::string str() const {
        switch (rule_) {
            case Rule::Explicit: {
                std::string s = "explicit:";
                for (std::size_t i = 0; i < elems_.size(); ++i) {
                    if (i) s += ',';
                    s += std::to_string(elems_[i]);
                }
                return s;
            }
            case Rule::GeometricRule: return "geometric:" + ratio_.str();
            case Rule::EveryNth: return "every:" + std::to_string(step_);
        }
        return {};
    }

    static IndexSet parse(const std::string& text) {
        if (text.rfind("geometric:", 0) == 0)
            return geometric_rule(Rational::parse(text.substr(10)));
        if (text.rfind("every:", 0) == 0)
            return every_nth(std::stoull(text.substr(6)));
        if (text.rfind("explicit:", 0) == 0) {
            std::vector<std::uint64_t> elems;
            std::string rest = text.substr(9);
            std::size_t pos = 0;
            while (pos < rest.size()) {
                auto comma = rest.find(',', pos);
                if (comma == std::string::npos) comma = rest.size();
                elems.push_back(std::stoull(rest.substr(pos, comma - pos)));
                pos = comma + 1;
            }
            return explicit_set(std::move(elems));
        }
        throw ParseError("unknown index set rule: " + text);
    }

private:
    Rule rule_ = Rule::Explicit;
    std::vector<std::uint64_t> elems_;
    Rational ratio_;
    std::uint64_t step_ = 1;
};

// Finite-horizon proxy for the upper natural density: the sup of exact
// partial densities |A ∩ [1,n]|/n over a tail window. Early spikes are
// excluded by construction; tail_start is part of the record.
struct DensityEstimate {
    std::uint64_t horizon = 0;
    std::uint64_t tail_start = 0;
    Rational sup_tail_partial;
    std::uint64_t argmax = 0;
    std::vector<std::pair<std::uint64_t, Rational>> trace;
};

namespace detail {

// count1/n1 < count2/n2 without overflow; counts <= n <= 2^63.
inline bool density_less(std::uint64_t count1, std::uint64_t n1, std::uint64_t count2,
                         std::uint64_t n2) {
    return static_cast<unsigned __int128>(count1) * n2 < static_cast<unsigned __int128>(count2) * n1;
}

inline std::vector<std::uint64_t> trace_checkpoints(std::uint64_t horizon) {
    std::vector<std::uint64_t> cps;
    std::uint64_t c = 1;
    while (c < horizon) {
        cps.push_back(c);
        c = std::max(c + 1, c + c / 4);  // ~log_{1.25} spacing
    }
    cps.push_back(horizon);
    return cps;
}

}  // namespace detail

inline DensityEstimate upper_density(const IndexSet& A, std::uint64_t horizon,
                                     std::uint64_t tail_start) {
    if (tail_start < 1 || tail_start > horizon)
        throw Error("need 1 <= tail_start <= horizon");
    auto elems = A.materialize(horizon);

    // Partial density is nonincreasing between elements, so the window sup
    // is attained at the window start or at an element.
    std::uint64_t best_count = 0, best_at = tail_start;
    std::uint64_t count = 0;
    {
        std::size_t i = 0;
        while (i < elems.size() && elems[i] < tail_start) ++count, ++i;
        best_count = count;
        for (; i < elems.size(); ++i) {
            ++count;
            if (detail::density_less(best_count, best_at, count, elems[i])) {
                best_count = count;
                best_at = elems[i];
            }
        }
    }

    DensityEstimate est;
    est.horizon = horizon;
    est.tail_start = tail_start;
    est.sup_tail_partial = Rational(BigInt(best_count), BigInt(best_at));
    est.argmax = best_at;

    auto cps = detail::trace_checkpoints(horizon);
    std::size_t i = 0;
    std::uint64_t c = 0;
    for (auto cp : cps) {
        while (i < elems.size() && elems[i] <= cp) ++c, ++i;
        est.trace.emplace_back(cp, Rational(BigInt(c), BigInt(cp)));
    }
    return est;
}

inline constexpr std::uint64_t kLiftMaterializeCap = std::uint64_t(1) << 22;

// L(A): the union of blocks N_k over k in A, as an explicit set of indices.
inline IndexSet lift(const DerivedSeq& d, const IndexSet& A) {
    auto blocks = A.materialize(d.block_count());
    if (A.rule() == IndexSet::Rule::Explicit) {
        // explicit sets must lie entirely within the materialized blocks;
        // rule-backed sets are lifted over their materialized part
        auto beyond = A.materialize(UINT64_MAX);
        if (beyond.size() > blocks.size())
            throw OutOfHorizon("index set reaches beyond materialized blocks");
    }
    BigInt total = 0;
    for (auto k : blocks) total += d.block_size(k);
    if (total > BigInt(kLiftMaterializeCap))
        throw OutOfHorizon("lifted set too large to materialize explicitly");
    std::vector<std::uint64_t> out;
    out.reserve(to_u64(total));
    for (auto k : blocks) {
        std::uint64_t from = to_u64(d.anchor(k), "block start");
        std::uint64_t to = to_u64(BigInt(d.anchor(k + 1) - 1), "block end");
        for (std::uint64_t n = from; n <= to; ++n) out.push_back(n);
    }
    return IndexSet::explicit_set(std::move(out));
}

struct C1Report {
    std::size_t block_horizon = 0;
    Rational tau_inf;      // min over k <= horizon of n_{k+1}/n_k
    std::size_t argmin_k = 0;
    Rational trailing_min;  // same min over the last half of the prefix, exposes the trend
    bool holds_on_prefix = false;  // tau_inf > 1; prefix evidence, not a proof
};

inline C1Report check_C1(DerivedSeq& d, std::size_t block_horizon) {
    if (block_horizon < 2) throw Error("check_C1 needs block_horizon >= 2");
    if (d.block_count() < block_horizon) d.extend(block_horizon);
    C1Report rep;
    rep.block_horizon = block_horizon;
    std::size_t half_start = block_horizon - block_horizon / 2;
    for (std::size_t k = 1; k <= block_horizon; ++k) {
        Rational ratio(d.anchor(k + 1), d.anchor(k));
        if (k == 1 || ratio < rep.tau_inf) {
            rep.tau_inf = ratio;
            rep.argmin_k = k;
        }
        if (k == half_start) rep.trailing_min = ratio;
        if (k > half_start) rep.trailing_min = rmin(rep.trailing_min, ratio);
    }
    rep.holds_on_prefix = rep.tau_inf > Rational(1);
    return rep;
}

struct C1C2Row {
    std::size_t k;
    Rational lhs;  // |N_k| / (n_{k+1} - 1)
    Rational rhs;  // 1 - 1/tau
    bool holds;    // n_{k+1} >= tau * n_k at this k
};

// The estimation behind (C1) => (C2): |N_k|/(n_{k+1}-1) >= 1 - n_k/n_{k+1}
// >= 1 - 1/tau wherever n_{k+1} >= tau*n_k, all evaluated exactly.
inline std::vector<C1C2Row> per_block_c1c2_bound(DerivedSeq& d, const Rational& tau,
                                                 std::size_t block_horizon) {
    if (!(tau > Rational(1))) throw Error("tau must exceed 1");
    if (d.block_count() < block_horizon) d.extend(block_horizon);
    Rational rhs = Rational(1) - Rational(1) / tau;
    std::vector<C1C2Row> rows;
    rows.reserve(block_horizon);
    for (std::size_t k = 1; k <= block_horizon; ++k) {
        Rational lhs(d.block_size(k), BigInt(d.anchor(k + 1) - 1));
        bool holds = Rational(d.anchor(k + 1)) >= tau * Rational(d.anchor(k));
        rows.push_back({k, lhs, rhs, holds});
    }
    return rows;
}

struct BlockCount {
    std::size_t k;
    BigInt size;               // |N_k| = q_{k+1} - 1
    BigInt count_at_least_eps; // |N_k(eps)|
    BigInt count_nonzero;      // |{n in N_k : ‖d_n x‖ != 0}|
};

// Exact per-block counts for eps-large and nonzero orbit values, one residue
// period per distinct a_k*p mod q plus a remainder; patterns are cached per
// residue so repeated block bases cost nothing.
inline std::vector<BlockCount> block_counts(ArithChain& a, const CirclePoint& x,
                                            const Rational& eps, std::size_t block_horizon) {
    if (!(eps > Rational(0))) throw Error("block_counts needs eps > 0");
    a.ensure(block_horizon + 1);
    const BigInt& q = x.den();
    // qualifying residues: L <= rho <= q - L with L = ceil(eps*q)
    // (‖rho/q‖ >= eps iff rho/q >= eps and (q-rho)/q >= eps)
    BigInt L = (Rational(q) * eps).ceil();

    std::map<BigInt, std::vector<std::uint64_t>> pattern_cache;  // b -> prefix counts over one period
    std::vector<BlockCount> out;
    out.reserve(block_horizon);
    BigInt a_mod = 1;
    for (std::size_t k = 1; k <= block_horizon; ++k) {
        a_mod = (a_mod * mod_floor(a.ratio(k), q)) % q;
        BigInt b = (a_mod * mod_floor(x.num(), q)) % q;
        BigInt size = a.ratio(k + 1) - 1;
        BigInt g = b == 0 ? q : big_gcd(q, b);
        BigInt period_big = q / g;

        BigInt count_nonzero = b == 0 ? BigInt(0) : BigInt(size - size / period_big);
        if (L <= 1) {
            // eps <= 1/q: qualifying is exactly "nonzero", no pattern needed
            out.push_back({k, size, count_nonzero, count_nonzero});
            continue;
        }
        std::uint64_t period = to_u64(period_big, "residue period");

        auto it = pattern_cache.find(b);
        if (it == pattern_cache.end()) {
            std::vector<std::uint64_t> prefix(period + 1, 0);
            BigInt rho = 0;
            for (std::uint64_t r = 1; r <= period; ++r) {
                rho += b;
                if (rho >= q) rho -= q;
                bool qualifies = rho >= L && q - rho >= L;
                prefix[r] = prefix[r - 1] + (qualifies ? 1 : 0);
            }
            it = pattern_cache.emplace(b, std::move(prefix)).first;
        }
        const auto& prefix = it->second;

        BigInt full_cycles = size / period;
        std::uint64_t rem = to_u64(BigInt(size % period));
        BigInt count_eps = full_cycles * prefix[period] + prefix[rem];
        out.push_back({k, size, count_eps, count_nonzero});
    }
    return out;
}

namespace detail {

// Enumerates qualifying(‖u_n x‖ >= eps) for n = 1..horizon over the derived
// sequence, using only residue arithmetic.
template <class Visit>
void walk_derived_orbit(DerivedSeq& d, const CirclePoint& x, const Rational& eps,
                        std::uint64_t horizon, Visit&& visit) {
    while (d.anchor(d.block_count() + 1) - 1 < horizon) d.extend(d.block_count() + 8);
    const BigInt& q = x.den();
    BigInt L = (Rational(q) * eps).ceil();
    std::uint64_t n = 1;
    for (std::size_t k = 1; n <= horizon; ++k) {
        BigInt step = (mod_floor(d.block_base(k), q) * mod_floor(x.num(), q)) % q;
        // the block holding the horizon may be far larger than what is walked
        BigInt remaining = BigInt(horizon) - n + 1;
        std::uint64_t block_len = to_u64(bmin(d.block_size(k), remaining));
        BigInt rho = 0;
        for (std::uint64_t i = 0; i < block_len; ++i, ++n) {
            rho += step;
            if (rho >= q) rho -= q;
            visit(n, rho >= L && q - rho >= L);
        }
    }
}

template <class Qualify>
DensityEstimate estimate_from_stream(std::uint64_t horizon, std::uint64_t tail_start,
                                     Qualify&& for_each) {
    if (tail_start < 1 || tail_start > horizon)
        throw Error("need 1 <= tail_start <= horizon");
    DensityEstimate est;
    est.horizon = horizon;
    est.tail_start = tail_start;
    auto cps = trace_checkpoints(horizon);
    std::size_t cp_idx = 0;
    std::uint64_t count = 0, best_count = 0, best_at = tail_start;
    for_each([&](std::uint64_t n, bool in_E) {
        if (in_E) ++count;
        if (n == tail_start) {
            best_count = count;
            best_at = n;
        } else if (n > tail_start && in_E &&
                   density_less(best_count, best_at, count, n)) {
            best_count = count;
            best_at = n;
        }
        while (cp_idx < cps.size() && cps[cp_idx] == n) {
            est.trace.emplace_back(n, Rational(BigInt(count), BigInt(n)));
            ++cp_idx;
        }
    });
    est.sup_tail_partial = Rational(BigInt(best_count), BigInt(best_at));
    est.argmax = best_at;
    return est;
}

}  // namespace detail

// Exact partial densities of E = {n <= horizon : ‖u_n x‖ >= eps} by direct
// enumeration; the reference the block counters are checked against.
inline DensityEstimate statistical_trace(DerivedSeq& u, const CirclePoint& x, const Rational& eps,
                                         std::uint64_t horizon, std::uint64_t tail_start) {
    if (!(eps > Rational(0))) throw Error("statistical_trace needs eps > 0");
    return detail::estimate_from_stream(horizon, tail_start, [&](auto&& visit) {
        detail::walk_derived_orbit(u, x, eps, horizon, visit);
    });
}

inline DensityEstimate statistical_trace(const ArithChain& u, const CirclePoint& x,
                                         const Rational& eps, std::uint64_t horizon,
                                         std::uint64_t tail_start) {
    if (!(eps > Rational(0))) throw Error("statistical_trace needs eps > 0");
    const BigInt& q = x.den();
    BigInt L = (Rational(q) * eps).ceil();
    // only ratio residues are needed, so arbitrarily deep horizons stay cheap
    return detail::estimate_from_stream(horizon, tail_start, [&](auto&& visit) {
        BigInt res = 1;
        for (std::uint64_t n = 1; n <= horizon; ++n) {
            res = (res * mod_floor(u.ratio_value(static_cast<std::size_t>(n)), q)) % q;
            BigInt rho = (res * mod_floor(x.num(), q)) % q;
            visit(n, rho >= L && q - rho >= L);
        }
    });
}

inline DensityEstimate statistical_trace(const StrictSeq& u, const CirclePoint& x,
                                         const Rational& eps, std::uint64_t horizon,
                                         std::uint64_t tail_start) {
    if (!(eps > Rational(0))) throw Error("statistical_trace needs eps > 0");
    if (horizon > u.size()) throw OutOfHorizon("horizon beyond materialized prefix");
    const BigInt& q = x.den();
    BigInt L = (Rational(q) * eps).ceil();
    return detail::estimate_from_stream(horizon, tail_start, [&](auto&& visit) {
        for (std::uint64_t n = 1; n <= horizon; ++n) {
            BigInt rho = (mod_floor(u.term(static_cast<std::size_t>(n)), q) * mod_floor(x.num(), q)) % q;
            visit(n, rho >= L && q - rho >= L);
        }
    });
}

// Statistical membership in t_d^s for rational x. Member iff q divides some
// a_n (the nonzero set is then finite). Otherwise m_k = q/gcd(q, a_k p) >= 2
// for every k, so at least half of every block carries a nonzero value and
// the partial density of the nonzero set at a deep block end certifies a
// positive lower bound.
inline MembershipVerdict decide_statistical_t_d(ArithChain& a, const CirclePoint& x,
                                                std::size_t tail_blocks = 50) {
    const BigInt& q = x.den();
    SaturationAnswer sat = divides_some_term(a, q);
    if (auto* yes = std::get_if<SatYes>(&sat))
        return {MemberStatus::Member, DividesTerm{yes->witness}};
    if (auto* unknown = std::get_if<SatUnknown>(&sat)) {
        std::optional<std::size_t> last_nonzero;
        for (std::size_t n = 1; n <= unknown->horizon; ++n)
            if ((mod_floor(a.term(n), q) * x.num()) % q != 0) last_nonzero = n;
        return {MemberStatus::Undecided, HorizonEvidence{unknown->horizon, last_nonzero}};
    }
    auto never = std::get<SatNever>(sat);
    std::size_t K = never.stabilization_index + tail_blocks;
    auto counts = block_counts(a, x, Rational(1, q), K);  // eps = 1/q captures exactly the nonzero set
    BigInt nonzero_total = 0, index_total = 0;
    for (const auto& c : counts) {
        nonzero_total += c.count_nonzero;
        index_total += c.size;  // n_{K+1} - 1 = sum of block sizes
    }
    return {MemberStatus::NonMember,
            DensityLowerBound{Rational(nonzero_total, index_total), index_total}};
}

struct C2Candidate {
    std::string strategy;
    std::vector<std::uint64_t> blocks;  // materialized A within the block horizon
    DensityEstimate estimate;
};

struct C2SearchResult {
    C2Candidate best;
    std::vector<C2Candidate> all;
};

// Greedy thinning rule: repeatedly append the block index whose lifted
// block-end partial density is smallest given what was already picked.
inline IndexSet greedy_thinning_rule(DerivedSeq& d, std::size_t block_horizon) {
    if (d.block_count() < block_horizon) d.extend(block_horizon);
    std::vector<std::uint64_t> picked;
    BigInt cum = 0;
    std::size_t last = 0;
    while (last < block_horizon) {
        std::size_t best_k = 0;
        Rational best_density;
        for (std::size_t k = last + 1; k <= block_horizon; ++k) {
            Rational density(cum + d.block_size(k), BigInt(d.anchor(k + 1) - 1));
            if (best_k == 0 || density < best_density) {
                best_k = k;
                best_density = density;
            }
        }
        picked.push_back(best_k);
        cum += d.block_size(best_k);
        last = best_k;
    }
    return IndexSet::explicit_set(std::move(picked));
}

// Searches for refuting evidence against (C2): evaluates the lifted set of
// each strategy and returns the one with the smallest tail estimate. Partial
// densities of lifted sets peak at lifted block ends (the reduction used in
// the proof of the main theorem), so those are the checkpoints.
inline C2SearchResult c2_witness_search(DerivedSeq& d, const std::vector<IndexSet>& strategies,
                                        std::size_t block_horizon, std::uint64_t tail_start) {
    if (strategies.empty()) throw Error("c2_witness_search needs at least one strategy");
    if (d.block_count() < block_horizon) d.extend(block_horizon);
    std::uint64_t horizon = to_u64(BigInt(d.anchor(block_horizon + 1) - 1), "index horizon");
    if (tail_start < 1 || tail_start > horizon)
        throw Error("need 1 <= tail_start <= index horizon");

    C2SearchResult result;
    for (const auto& rule : strategies) {
        C2Candidate cand;
        cand.strategy = rule.str();
        cand.blocks = rule.materialize(block_horizon);

        DensityEstimate est;
        est.horizon = horizon;
        est.tail_start = tail_start;
        BigInt cum = 0;
        BigInt best_num = 0, best_den = 1;
        std::uint64_t best_at = 0;
        for (auto k : cand.blocks) {
            cum += d.block_size(k);
            std::uint64_t block_end = to_u64(BigInt(d.anchor(k + 1) - 1), "block end");
            Rational density(cum, BigInt(block_end));
            est.trace.emplace_back(block_end, density);
            if (block_end >= tail_start &&
                (best_at == 0 || cum * best_den > best_num * block_end)) {
                best_num = cum;
                best_den = block_end;
                best_at = block_end;
            }
        }
        // density at the horizon itself is always a checkpoint
        Rational at_horizon(cum, BigInt(horizon));
        if (est.trace.empty() || est.trace.back().first != horizon)
            est.trace.emplace_back(horizon, at_horizon);
        if (best_at == 0 || cum * best_den > best_num * horizon) {
            best_num = cum;
            best_den = horizon;
            best_at = horizon;
        }
        est.sup_tail_partial = Rational(best_num, best_den);
        est.argmax = best_at;
        cand.estimate = std::move(est);
        result.all.push_back(std::move(cand));
    }
    result.best = result.all.front();
    for (const auto& cand : result.all)
        if (cand.estimate.sup_tail_partial < result.best.estimate.sup_tail_partial)
            result.best = cand;
    return result;
}

}  // namespace charsub
