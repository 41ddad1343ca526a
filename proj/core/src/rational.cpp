#include "dbsolve/rational.hpp"

#include <charconv>
#include <stdexcept>

namespace dbsolve {

std::string to_string(const Rational& r) {
  if (r.denominator() == 1) return std::to_string(r.numerator());
  return std::to_string(r.numerator()) + "/" + std::to_string(r.denominator());
}

namespace {

std::int64_t parse_int(std::string_view s, std::string_view whole) {
  std::int64_t v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (s.empty() || ec != std::errc() || ptr != s.data() + s.size())
    throw std::invalid_argument("malformed rational '" + std::string(whole) + "'");
  return v;
}

}  // namespace

Rational parse_rational(std::string_view text) {
  if (auto slash = text.find('/'); slash != std::string_view::npos) {
    auto num = parse_int(text.substr(0, slash), text);
    auto den = parse_int(text.substr(slash + 1), text);
    if (den == 0) throw std::invalid_argument("zero denominator in '" + std::string(text) + "'");
    return Rational(num, den);
  }
  if (auto dot = text.find('.'); dot != std::string_view::npos) {
    auto int_part = text.substr(0, dot);
    auto frac = text.substr(dot + 1);
    bool negative = !int_part.empty() && int_part.front() == '-';
    if (negative) int_part.remove_prefix(1);
    std::int64_t whole = int_part.empty() ? 0 : parse_int(int_part, text);
    std::int64_t f = parse_int(frac, text);
    std::int64_t scale = 1;
    for (std::size_t i = 0; i < frac.size(); ++i) scale *= 10;
    Rational r = Rational(whole) + Rational(f, scale);
    return negative ? -r : r;
  }
  return Rational(parse_int(text, text));
}

}  // namespace dbsolve
