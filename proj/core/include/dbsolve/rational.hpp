#pragma once

#include <cstdint>
#include <string>
#include <string_view>

#include <boost/rational.hpp>

// Boost 1.74's mixed rational/integer operator== recurses forever once C++20
// adds reversed candidates. Exact non-template overloads win resolution.
namespace boost {
inline bool operator==(const rational<std::int64_t>& a, int b) { return a == rational<std::int64_t>(b); }
inline bool operator==(const rational<std::int64_t>& a, long b) { return a == rational<std::int64_t>(b); }
inline bool operator==(const rational<std::int64_t>& a, long long b) {
  return a == rational<std::int64_t>(static_cast<std::int64_t>(b));
}
}  // namespace boost

namespace dbsolve {

// All clock values and weights are exact.
using Rational = boost::rational<std::int64_t>;

std::string to_string(const Rational& r);

// Accepts "7", "-3/4" and "1.25".
Rational parse_rational(std::string_view text);

}  // namespace dbsolve
