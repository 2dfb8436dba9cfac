// Sequence generators: divisibility chains (family A), free-form strictly
// increasing sequences (family S), and the derived sequence of (#) with its
// block decomposition.
//
// Chains are presented symbolically so the tail structure stays known to the
// deciders; terms materialize lazily and a materialized prefix is never
// recomputed.
#pragma once

#include <cstdint>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "charsub/bigint.hpp"
#include "charsub/errors.hpp"
#include "charsub/rational.hpp"

namespace charsub {

enum class Tail { None, Repeat, Pow2Exponents };

struct SeqDescriptor {
    enum class Kind { Factorial, Geometric, RatioChain, Explicit };

    Kind kind = Kind::Factorial;
    BigInt base;                  // Geometric
    std::vector<BigInt> ratios;   // RatioChain
    Tail tail = Tail::None;       // RatioChain
    std::vector<BigInt> terms;    // Explicit

    static SeqDescriptor factorial() { return SeqDescriptor{}; }

    static SeqDescriptor geometric(BigInt b) {
        if (b < 2) throw Error("geometric base must be >= 2");
        SeqDescriptor d;
        d.kind = Kind::Geometric;
        d.base = std::move(b);
        return d;
    }

    static SeqDescriptor ratio_chain(std::vector<BigInt> rs, Tail t) {
        for (const auto& r : rs)
            if (r < 2) throw Error("ratio chain entries must be >= 2");
        if (t == Tail::Repeat && rs.empty())
            throw Error("repeat tail needs at least one ratio");
        if (t == Tail::None && rs.empty())
            throw Error("finite ratio chain needs at least one ratio");
        SeqDescriptor d;
        d.kind = Kind::RatioChain;
        d.ratios = std::move(rs);
        d.tail = t;
        return d;
    }

    static SeqDescriptor explicit_terms(std::vector<BigInt> ts) {
        if (ts.empty()) throw Error("explicit descriptor needs at least one term");
        for (std::size_t i = 0; i < ts.size(); ++i) {
            if (ts[i] < 1) throw Error("explicit terms must be positive");
            if (i > 0 && ts[i] <= ts[i - 1])
                throw Error("explicit terms must be strictly increasing");
        }
        SeqDescriptor d;
        d.kind = Kind::Explicit;
        d.terms = std::move(ts);
        return d;
    }

    // True when terms can be materialized past any horizon.
    bool infinite() const {
        switch (kind) {
            case Kind::Factorial:
            case Kind::Geometric: return true;
            case Kind::RatioChain: return tail != Tail::None;
            case Kind::Explicit: return false;
        }
        return false;
    }

    // Compact command-line grammar: factorial | geometric:B |
    // ratios:2,3:repeat | ratios::pow2 | ratios:2,3 | explicit:1,2,6
    std::string str() const {
        auto join = [](const std::vector<BigInt>& v) {
            std::string s;
            for (std::size_t i = 0; i < v.size(); ++i) {
                if (i) s += ',';
                s += v[i].str();
            }
            return s;
        };
        switch (kind) {
            case Kind::Factorial: return "factorial";
            case Kind::Geometric: return "geometric:" + base.str();
            case Kind::RatioChain: {
                std::string s = "ratios:" + join(ratios);
                if (tail == Tail::Repeat) s += ":repeat";
                if (tail == Tail::Pow2Exponents) s += ":pow2";
                return s;
            }
            case Kind::Explicit: return "explicit:" + join(terms);
        }
        return {};
    }

    static SeqDescriptor parse(const std::string& text) {
        auto split_list = [](const std::string& s) {
            std::vector<BigInt> out;
            if (s.empty()) return out;
            std::stringstream ss(s);
            std::string item;
            while (std::getline(ss, item, ',')) out.push_back(parse_bigint(item));
            return out;
        };
        if (text == "factorial") return factorial();
        if (text.rfind("geometric:", 0) == 0) return geometric(parse_bigint(text.substr(10)));
        if (text.rfind("explicit:", 0) == 0) return explicit_terms(split_list(text.substr(9)));
        if (text.rfind("ratios:", 0) == 0) {
            std::string rest = text.substr(7);
            std::string tail_word;
            auto colon = rest.find(':');
            if (colon != std::string::npos) {
                tail_word = rest.substr(colon + 1);
                rest = rest.substr(0, colon);
            }
            Tail t = Tail::None;
            if (tail_word == "repeat") t = Tail::Repeat;
            else if (tail_word == "pow2") t = Tail::Pow2Exponents;
            else if (!tail_word.empty() && tail_word != "none")
                throw ParseError("unknown tail: " + tail_word);
            return ratio_chain(split_list(rest), t);
        }
        throw ParseError("unknown sequence descriptor: " + text);
    }

    bool operator==(const SeqDescriptor& o) const {
        return kind == o.kind && base == o.base && ratios == o.ratios && tail == o.tail &&
               terms == o.terms;
    }
};

// A sequence of family A: a_n | a_{n+1}, presented by a descriptor; ratios
// q_n = a_n / a_{n-1} with a_0 := 1.
class ArithChain {
public:
    ArithChain(SeqDescriptor desc, std::size_t count) : desc_(std::move(desc)) {
        if (count < 1) throw Error("chain needs at least one term");
        ensure(count);
    }

    const SeqDescriptor& descriptor() const { return desc_; }
    std::size_t size() const { return terms_.size(); }
    bool extendable() const { return desc_.infinite(); }

    // 1-based.
    const BigInt& term(std::size_t n) const {
        if (n < 1 || n > terms_.size()) throw OutOfHorizon("chain term index beyond prefix");
        return terms_[n - 1];
    }
    const BigInt& ratio(std::size_t n) const {
        if (n < 1 || n > ratios_.size()) throw OutOfHorizon("chain ratio index beyond prefix");
        return ratios_[n - 1];
    }
    const std::vector<BigInt>& terms() const { return terms_; }

    // Materialize at least `count` terms. Prefixes are append-only.
    void ensure(std::size_t count) {
        while (terms_.size() < count) {
            std::size_t n = terms_.size() + 1;  // index of the term being built
            BigInt q = ratio_value(n);
            if (n >= 2 && q < 2)
                throw Error("chain ratio q_" + std::to_string(n) + " must be >= 2");
            if (q < 1) throw Error("chain ratios must be positive");
            BigInt prev = terms_.empty() ? BigInt(1) : terms_.back();
            terms_.push_back(prev * q);
            ratios_.push_back(std::move(q));
        }
    }

    // q_n straight from the descriptor, without materializing terms.
    BigInt ratio_value(std::size_t n) const {
        switch (desc_.kind) {
            case SeqDescriptor::Kind::Factorial: return BigInt(n);
            case SeqDescriptor::Kind::Geometric: return desc_.base;
            case SeqDescriptor::Kind::RatioChain: {
                if (n <= desc_.ratios.size()) return desc_.ratios[n - 1];
                switch (desc_.tail) {
                    case Tail::Repeat:
                        return desc_.ratios[(n - 1) % desc_.ratios.size()];
                    case Tail::Pow2Exponents:
                        // q_{k+1} = 2^k
                        return BigInt(1) << (n - 1);
                    case Tail::None:
                        throw OutOfHorizon("finite ratio chain exhausted at " +
                                           std::to_string(desc_.ratios.size()) + " terms");
                }
                throw Error("unreachable");
            }
            case SeqDescriptor::Kind::Explicit: {
                if (n > desc_.terms.size())
                    throw OutOfHorizon("explicit chain exhausted at " +
                                       std::to_string(desc_.terms.size()) + " terms");
                const BigInt& cur = desc_.terms[n - 1];
                BigInt prev = n == 1 ? BigInt(1) : desc_.terms[n - 2];
                if (cur % prev != 0)
                    throw NotDivisibilityChain("term " + prev.str() + " does not divide " +
                                               cur.str());
                return cur / prev;
            }
        }
        throw Error("unreachable");
    }

private:
    SeqDescriptor desc_;
    std::vector<BigInt> terms_;
    std::vector<BigInt> ratios_;
};

inline ArithChain build_chain(const SeqDescriptor& desc, std::size_t count) {
    return ArithChain(desc, count);
}

// A member of family S: strictly increasing positive integers, optionally
// carrying a claimed bound for sup u_n/u_{n-1} (with u_0 := 1).
class StrictSeq {
public:
    explicit StrictSeq(std::vector<BigInt> terms, std::optional<Rational> ratio_bound = {})
        : terms_(std::move(terms)), ratio_bound_(std::move(ratio_bound)) {
        if (terms_.empty()) throw Error("strict sequence needs at least one term");
        BigInt prev = 0;
        for (const auto& t : terms_) {
            if (t <= prev) throw Error("strict sequence must be strictly increasing and positive");
            prev = t;
        }
        if (ratio_bound_) {
            BigInt p = 1;
            for (const auto& t : terms_) {
                if (Rational(t, p) > *ratio_bound_)
                    throw Error("claimed ratio bound violated by the given terms");
                p = t;
            }
        }
    }

    static StrictSeq from_chain(const ArithChain& a, std::size_t count) {
        std::vector<BigInt> t(a.terms().begin(), a.terms().begin() + count);
        return StrictSeq(std::move(t));
    }

    std::size_t size() const { return terms_.size(); }
    const BigInt& term(std::size_t n) const {
        if (n < 1 || n > terms_.size()) throw OutOfHorizon("strict sequence index beyond prefix");
        return terms_[n - 1];
    }
    const std::vector<BigInt>& terms() const { return terms_; }
    const std::optional<Rational>& claimed_ratio_bound() const { return ratio_bound_; }

private:
    std::vector<BigInt> terms_;
    std::optional<Rational> ratio_bound_;
};

// The derived sequence (#) of a chain: the increasing enumeration of
// {r*a_k : 1 <= r < q_{k+1}}. Block k occupies indices N_k = [n_k, n_{k+1}),
// carrying r*a_k for r = 1..q_{k+1}-1, so the whole sequence is stored as its
// block structure; indices can be astronomically large and individual terms
// are computed on demand.
class DerivedSeq {
public:
    DerivedSeq(ArithChain chain, std::size_t block_count) : chain_(std::move(chain)) {
        if (block_count < 1) throw Error("derived sequence needs at least one block");
        anchors_.push_back(1);  // n_1 = 1: the least (#) element is a_1 itself
        extend(block_count);
    }

    void extend(std::size_t block_count) {
        chain_.ensure(block_count + 1);
        while (blocks_ < block_count) {
            std::size_t k = ++blocks_;
            // n_{k+1} = n_k + q_{k+1} - 1
            anchors_.push_back(anchors_.back() + chain_.ratio(k + 1) - 1);
        }
    }

    std::size_t block_count() const { return blocks_; }
    const ArithChain& chain() const { return chain_; }

    // n_k for k in [1, block_count()+1].
    const BigInt& anchor(std::size_t k) const {
        if (k < 1 || k > anchors_.size()) throw OutOfHorizon("anchor index beyond materialized blocks");
        return anchors_[k - 1];
    }
    // |N_k| = q_{k+1} - 1.
    BigInt block_size(std::size_t k) const {
        if (k < 1 || k > blocks_) throw OutOfHorizon("block index beyond materialized blocks");
        return anchors_[k] - anchors_[k - 1];
    }
    // a_k, the value at the block's anchor.
    const BigInt& block_base(std::size_t k) const { return chain_.term(k); }

    // Largest index with a defined term: n_{K+1} (the anchor of block K+1).
    const BigInt& horizon() const { return anchors_.back(); }

    // The unique (k, r) with n in N_k and d_n = r*a_k. Defined for n < n_{K+1}.
    std::pair<std::size_t, BigInt> block_of(const BigInt& n) const {
        if (n < 1 || n >= anchors_.back())
            throw OutOfHorizon("index beyond materialized blocks");
        std::size_t lo = 0, hi = anchors_.size() - 1;  // anchors_[lo] <= n < anchors_[hi]
        while (hi - lo > 1) {
            std::size_t mid = (lo + hi) / 2;
            if (anchors_[mid] <= n)
                lo = mid;
            else
                hi = mid;
        }
        return {lo + 1, BigInt(n - anchors_[lo] + 1)};
    }

    BigInt term(const BigInt& n) const {
        if (n == anchors_.back()) return chain_.term(blocks_ + 1);
        auto [k, r] = block_of(n);
        return r * chain_.term(k);
    }

    // Eager enumeration d_1..d_count for small horizons.
    std::vector<BigInt> prefix_terms(std::size_t count) const {
        if (BigInt(count) > anchors_.back()) throw OutOfHorizon("prefix beyond materialized blocks");
        std::vector<BigInt> out;
        out.reserve(count);
        for (std::size_t k = 1; k <= blocks_ && out.size() < count; ++k) {
            BigInt size = block_size(k);
            const BigInt& base = chain_.term(k);
            BigInt value = 0;
            for (BigInt r = 1; r <= size && out.size() < count; ++r) {
                value += base;
                out.push_back(value);
            }
        }
        if (out.size() < count) out.push_back(chain_.term(blocks_ + 1));
        return out;
    }

private:
    ArithChain chain_;
    std::vector<BigInt> anchors_;
    std::size_t blocks_ = 0;
};

inline DerivedSeq derive(const ArithChain& a, std::size_t block_count) {
    return DerivedSeq(a, block_count);
}

// sup of q_n over n <= horizon, q_n = u_n/u_{n-1} with u_0 := 1.
inline Rational ratio_bound(const ArithChain& a, std::size_t horizon) {
    if (horizon < 1 || horizon > a.size()) throw OutOfHorizon("horizon beyond materialized prefix");
    BigInt best = a.ratio(1);
    for (std::size_t n = 2; n <= horizon; ++n) best = bmax(best, a.ratio(n));
    return Rational(best);
}

inline Rational ratio_bound(const StrictSeq& u, std::size_t horizon) {
    if (horizon < 1 || horizon > u.size()) throw OutOfHorizon("horizon beyond materialized prefix");
    Rational best(u.term(1));
    for (std::size_t n = 2; n <= horizon; ++n)
        best = rmax(best, Rational(u.term(n), u.term(n - 1)));
    return best;
}

// Exact sup over n <= horizon of d_n/d_{n-1} without enumerating indices:
// inside a block the largest step is a_k -> 2a_k, and the step into the next
// anchor is q_{k+1}/(q_{k+1}-1).
inline Rational ratio_bound(const DerivedSeq& d, const BigInt& horizon) {
    if (horizon < 1 || horizon > d.horizon()) throw OutOfHorizon("horizon beyond materialized blocks");
    Rational best(d.chain().term(1));  // q_1 = d_1 with d_0 := 1
    for (std::size_t k = 1; k <= d.block_count(); ++k) {
        if (d.anchor(k) >= horizon) break;
        if (d.block_size(k) >= 2 && d.anchor(k) + 1 <= horizon)
            best = rmax(best, Rational(2));
        const BigInt& q_next = d.chain().ratio(k + 1);
        if (d.anchor(k + 1) <= horizon)
            best = rmax(best, Rational(q_next, BigInt(q_next - 1)));
    }
    return best;
}

}  // namespace charsub
