#pragma once

#include <boost/rational.hpp>

#include <string>

namespace alpharep {

/// Exact rational arithmetic for the evaluator results.  Tallies are
/// bounded by (q-1)^|E| <= 10^8 and denominators by q^{r/2} <= q^6, so
/// long long leaves ample headroom.
using Rational = boost::rational<long long>;

/// Canonical text form: plain integer when the denominator is 1,
/// otherwise "num/den" reduced.  Used for all serialized values so that
/// output never contains floats.
inline std::string to_string(const Rational& r) {
    if (r.denominator() == 1) return std::to_string(r.numerator());
    return std::to_string(r.numerator()) + "/" + std::to_string(r.denominator());
}

} // namespace alpharep
