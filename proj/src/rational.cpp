#include "fm/rational.hpp"

#include <stdexcept>

namespace fm {

namespace {

Integer parse_integer(const std::string& text) {
  if (text.empty()) throw std::invalid_argument("empty integer literal");
  std::size_t start = (text[0] == '-' || text[0] == '+') ? 1 : 0;
  if (start == text.size()) throw std::invalid_argument("sign without digits: " + text);
  for (std::size_t i = start; i < text.size(); ++i) {
    if (text[i] < '0' || text[i] > '9')
      throw std::invalid_argument("bad integer literal: " + text);
  }
  return Integer(text);
}

}  // namespace

Rational parse_rational(const std::string& text) {
  auto slash = text.find('/');
  if (slash == std::string::npos) return Rational(parse_integer(text));
  Integer num = parse_integer(text.substr(0, slash));
  Integer den = parse_integer(text.substr(slash + 1));
  if (den == 0) throw std::invalid_argument("zero denominator: " + text);
  // Route through division so a negative denominator normalizes.
  return Rational(num) / Rational(den);
}

std::string format_rational(const Rational& value) {
  return value.str();
}

}  // namespace fm
