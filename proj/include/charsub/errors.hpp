// Exception types shared across the library.
#pragma once

#include <stdexcept>
#include <string>

namespace charsub {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Requested index or block lies beyond the materialized (or materializable) prefix.
struct OutOfHorizon : Error {
    using Error::Error;
};

// ExplicitTerms descriptor violates a_n | a_{n+1}.
struct NotDivisibilityChain : Error {
    using Error::Error;
};

// Interval too wide for a meaningful enclosure.
struct ImpreciseInput : Error {
    using Error::Error;
};

// Epsilon outside the hypothesis range of the lemma being checked.
struct InvalidEpsilon : Error {
    using Error::Error;
};

// A witness guaranteed by a lemma was not found within the horizon.
struct HorizonExhausted : Error {
    using Error::Error;
};

// Prefix ratio sup exceeds the configured cap; boundedness hypothesis not evidenced.
struct UnboundedRatiosAtHorizon : Error {
    using Error::Error;
};

// Malformed textual input (rationals, descriptors, index-set rules).
struct ParseError : Error {
    using Error::Error;
};

}  // namespace charsub
