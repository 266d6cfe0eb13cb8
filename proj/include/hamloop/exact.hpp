#ifndef HAMLOOP_EXACT_HPP
#define HAMLOOP_EXACT_HPP

#include <boost/multiprecision/cpp_int.hpp>

#include <cmath>
#include <complex>
#include <map>
#include <numbers>
#include <stdexcept>
#include <string>
#include <string_view>

namespace hamloop {

using Rational = boost::multiprecision::cpp_rational;
using Integer = boost::multiprecision::cpp_int;

/// Parses "p", "-p" or "p/q". Throws std::invalid_argument on malformed input or q == 0.
Rational parse_rational(std::string_view text);

/// Canonical "p/q" (or "p" when q == 1).
std::string to_string(const Rational& q);

double to_double(const Rational& q);

inline bool is_integer(const Rational& q) {
  return boost::multiprecision::denominator(q) == 1;
}

/// q1 + i q2 with rational parts.
struct GaussRational {
  Rational re{0};
  Rational im{0};

  bool is_zero() const { return re == 0 && im == 0; }
  friend bool operator==(const GaussRational&, const GaussRational&) = default;

  GaussRational& operator+=(const GaussRational& o) {
    re += o.re;
    im += o.im;
    return *this;
  }
  GaussRational& operator-=(const GaussRational& o) {
    re -= o.re;
    im -= o.im;
    return *this;
  }
  friend GaussRational operator*(const GaussRational& a, const GaussRational& b) {
    return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
  }
  friend GaussRational operator*(const Rational& s, const GaussRational& a) {
    return {s * a.re, s * a.im};
  }
  friend GaussRational operator-(const GaussRational& a) { return {-a.re, -a.im}; }
};

inline std::string to_string(const GaussRational& z) {
  if (z.im == 0) return to_string(z.re);
  if (z.re == 0) return to_string(z.im) + "i";
  return "(" + to_string(z.re) + (z.im < 0 ? "" : "+") + to_string(z.im) + "i)";
}

namespace detail {
inline bool coeff_is_zero(const Rational& q) { return q == 0; }
inline bool coeff_is_zero(const GaussRational& z) { return z.is_zero(); }
inline std::complex<double> coeff_to_complex(const Rational& q) { return {to_double(q), 0.0}; }
inline std::complex<double> coeff_to_complex(const GaussRational& z) {
  return {to_double(z.re), to_double(z.im)};
}
}  // namespace detail

/// Finite Laurent polynomial in pi, sum_k c_k pi^k, with exact coefficients.
///
/// This is the exact value domain for trigonometric polynomials evaluated at
/// quarter-period nodes: the 1/(2 pi n) normalization and each derivative shift
/// the pi exponent by one, while sin/cos at those nodes are in {0, +-1}.
/// Coefficients are Rational for real values and GaussRational for matrix jets.
template <typename Coeff>
class PiLaurent {
 public:
  PiLaurent() = default;
  explicit PiLaurent(Coeff c, int power = 0) {
    if (!detail::coeff_is_zero(c)) terms_.emplace(power, std::move(c));
  }

  const std::map<int, Coeff>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  /// The coefficient of pi^0 when that is the only term, else throws.
  const Coeff& pure_constant() const {
    static const Coeff zero{};
    if (terms_.empty()) return zero;
    if (terms_.size() != 1 || terms_.begin()->first != 0)
      throw std::domain_error("value is not a pure rational constant: " + to_string());
    return terms_.begin()->second;
  }

  bool is_pure_constant() const {
    return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first == 0);
  }

  Coeff coefficient(int power) const {
    auto it = terms_.find(power);
    return it == terms_.end() ? Coeff{} : it->second;
  }

  PiLaurent& operator+=(const PiLaurent& o) {
    for (const auto& [k, c] : o.terms_) add_term(k, c);
    return *this;
  }
  PiLaurent& operator-=(const PiLaurent& o) {
    for (const auto& [k, c] : o.terms_) add_term(k, -c);
    return *this;
  }
  friend PiLaurent operator+(PiLaurent a, const PiLaurent& b) { return a += b; }
  friend PiLaurent operator-(PiLaurent a, const PiLaurent& b) { return a -= b; }
  friend PiLaurent operator-(const PiLaurent& a) {
    PiLaurent r;
    for (const auto& [k, c] : a.terms_) r.terms_.emplace(k, -c);
    return r;
  }
  friend PiLaurent operator*(const PiLaurent& a, const PiLaurent& b) {
    PiLaurent r;
    for (const auto& [ka, ca] : a.terms_)
      for (const auto& [kb, cb] : b.terms_) r.add_term(ka + kb, ca * cb);
    return r;
  }
  friend PiLaurent operator*(const Rational& s, const PiLaurent& a) {
    PiLaurent r;
    if (s == 0) return r;
    for (const auto& [k, c] : a.terms_) r.terms_.emplace(k, s * c);
    return r;
  }
  friend bool operator==(const PiLaurent& a, const PiLaurent& b) { return a.terms_ == b.terms_; }

  /// Multiply by pi^k.
  PiLaurent shifted(int k) const {
    PiLaurent r;
    for (const auto& [p, c] : terms_) r.terms_.emplace(p + k, c);
    return r;
  }

  std::complex<double> to_complex() const {
    std::complex<double> acc{0.0, 0.0};
    for (const auto& [k, c] : terms_)
      acc += detail::coeff_to_complex(c) * std::pow(std::numbers::pi, static_cast<double>(k));
    return acc;
  }

  std::string to_string() const {
    if (terms_.empty()) return "0";
    std::string out;
    for (const auto& [k, c] : terms_) {
      if (!out.empty()) out += " + ";
      out += hamloop::to_string(c);
      if (k == 1) out += "*pi";
      else if (k != 0) out += "*pi^" + std::to_string(k);
    }
    return out;
  }

 private:
  void add_term(int k, const Coeff& c) {
    auto [it, inserted] = terms_.try_emplace(k, c);
    if (!inserted) {
      it->second += c;
      if (detail::coeff_is_zero(it->second)) terms_.erase(it);
    } else if (detail::coeff_is_zero(it->second)) {
      terms_.erase(it);
    }
  }

  std::map<int, Coeff> terms_;
};

using PiValue = PiLaurent<Rational>;
using PiComplex = PiLaurent<GaussRational>;

inline double to_double(const PiValue& v) { return v.to_complex().real(); }

inline PiComplex to_complex_exact(const PiValue& v) {
  PiComplex r;
  for (const auto& [k, c] : v.terms()) r += PiComplex(GaussRational{c, 0}, k);
  return r;
}

}  // namespace hamloop

#endif  // HAMLOOP_EXACT_HPP
