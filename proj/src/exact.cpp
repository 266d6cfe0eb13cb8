#include "hamloop/exact.hpp"

#include <cctype>

namespace hamloop {

namespace {

Integer parse_integer(std::string_view s, std::string_view whole) {
  if (s.empty()) throw std::invalid_argument("empty integer in rational '" + std::string(whole) + "'");
  std::size_t i = 0;
  if (s[0] == '-' || s[0] == '+') i = 1;
  if (i == s.size()) throw std::invalid_argument("bad rational '" + std::string(whole) + "'");
  for (std::size_t k = i; k < s.size(); ++k)
    if (!std::isdigit(static_cast<unsigned char>(s[k])))
      throw std::invalid_argument("bad rational '" + std::string(whole) + "'");
  Integer v(std::string(s.substr(i)));
  return s[0] == '-' ? Integer(-v) : v;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

}  // namespace

Rational parse_rational(std::string_view text) {
  const auto s = trim(text);
  const auto slash = s.find('/');
  if (slash == std::string_view::npos) return Rational(parse_integer(s, text));
  const Integer num = parse_integer(trim(s.substr(0, slash)), text);
  Integer den = parse_integer(trim(s.substr(slash + 1)), text);
  if (den == 0) throw std::invalid_argument("zero denominator in '" + std::string(text) + "'");
  return den < 0 ? Rational(-num, -den) : Rational(num, den);
}

std::string to_string(const Rational& q) {
  const auto& num = boost::multiprecision::numerator(q);
  const auto& den = boost::multiprecision::denominator(q);
  if (den == 1) return num.str();
  return num.str() + "/" + den.str();
}

double to_double(const Rational& q) { return q.convert_to<double>(); }

}  // namespace hamloop
