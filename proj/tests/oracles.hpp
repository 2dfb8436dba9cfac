// Independent brute-force oracles used by the tests. Everything here is
// deliberately written against the definitions, not against the library's
// own code paths, so the two can disagree when one is wrong.
#pragma once

#include <algorithm>
#include <vector>

#include "charsub/bigint.hpp"
#include "charsub/rational.hpp"

namespace oracle {

using charsub::BigInt;
using charsub::Rational;

// min over k in [floor(x)-2, floor(x)+2] of |x - k|; a window of 2 around
// floor(x) always brackets the nearest integer.
inline Rational brute_seminorm(const Rational& x) {
    BigInt base = x.floor();
    Rational best = Rational(1);
    for (BigInt k = base - 2; k <= base + 2; ++k) {
        Rational diff = x - Rational(k);
        if (diff.sign() < 0) diff = -diff;
        if (diff < best) best = diff;
    }
    return best;
}

// The (♯) multiset {r*a_k : 1 <= r < q_{k+1}, k <= blocks} in increasing
// order, straight from the definition.
inline std::vector<BigInt> sharp_enumeration(const std::vector<BigInt>& chain_terms,
                                             std::size_t blocks) {
    std::vector<BigInt> out;
    for (std::size_t k = 1; k <= blocks; ++k) {
        BigInt a_k = chain_terms[k - 1];
        BigInt a_next = chain_terms[k];
        BigInt q_next = a_next / a_k;
        for (BigInt r = 1; r < q_next; ++r) out.push_back(r * a_k);
    }
    std::sort(out.begin(), out.end());
    return out;
}

}  // namespace oracle
