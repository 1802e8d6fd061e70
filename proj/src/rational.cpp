#include "gtom/rational.hpp"

#include <regex>
#include <stdexcept>

namespace gtom {

std::string to_fraction_string(const Rational& q) {
  return boost::multiprecision::numerator(q).str() + "/" + boost::multiprecision::denominator(q).str();
}

Rational parse_fraction(std::string_view text) {
  static const std::regex pattern(R"(-?[0-9]+(/[0-9]+)?)");
  const std::string s(text);
  if (!std::regex_match(s, pattern)) throw std::invalid_argument("not a fraction: '" + s + "'");
  const auto slash = s.find('/');
  if (slash != std::string::npos && s.find_first_not_of('0', slash + 1) == std::string::npos) {
    throw std::invalid_argument("zero denominator: '" + s + "'");
  }
  Rational q(s);
  mpq_canonicalize(q.backend().data());  // the string constructor keeps 4/6 as is
  return q;
}

}  // namespace gtom
