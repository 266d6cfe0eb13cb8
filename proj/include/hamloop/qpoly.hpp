#ifndef HAMLOOP_QPOLY_HPP
#define HAMLOOP_QPOLY_HPP

#include "hamloop/exact.hpp"

#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace hamloop {

using Exponents = std::vector<int>;

/// Sparse multivariate polynomial over Q in a fixed number of variables.
/// No zero coefficients are stored; all exponent vectors have length nvars().
class QPoly {
 public:
  explicit QPoly(std::size_t nvars = 0) : nvars_(nvars) {}

  static QPoly constant(std::size_t nvars, const Rational& c);
  static QPoly variable(std::size_t nvars, std::size_t index);
  static QPoly monomial(const Exponents& e, const Rational& c);

  std::size_t nvars() const { return nvars_; }
  const std::map<Exponents, Rational>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const;
  Rational constant_term() const;
  Rational coefficient(const Exponents& e) const;
  int total_degree() const;

  /// Adds c * x^e.
  void add_term(const Exponents& e, const Rational& c);

  QPoly& operator+=(const QPoly& o);
  QPoly& operator-=(const QPoly& o);
  friend QPoly operator+(QPoly a, const QPoly& b) { return a += b; }
  friend QPoly operator-(QPoly a, const QPoly& b) { return a -= b; }
  friend QPoly operator-(const QPoly& a);
  friend QPoly operator*(const QPoly& a, const QPoly& b);
  friend QPoly operator*(const Rational& s, const QPoly& a);
  friend bool operator==(const QPoly& a, const QPoly& b) { return a.nvars_ == b.nvars_ && a.terms_ == b.terms_; }

  double evaluate(std::span<const double> point) const;

  /// Substitutes known values for some variables (entries without a value stay symbolic).
  QPoly substitute(const std::vector<std::optional<Rational>>& values) const;

  /// Groups terms by the exponents of the first `k` variables. Each group's coefficient
  /// is a polynomial in the remaining nvars() - k variables.
  std::map<Exponents, QPoly> collect_leading(std::size_t k) const;

  /// Embeds into a ring with more variables: variable i maps to i + offset.
  QPoly embed(std::size_t new_nvars, std::size_t offset) const;

  /// Human-readable rendering with the given variable names.
  std::string to_string(std::span<const std::string> names) const;

 private:
  std::size_t nvars_;
  std::map<Exponents, Rational> terms_;
};

std::string monomial_string(const Exponents& e, std::span<const std::string> names);

/// Names x1..xk.
std::vector<std::string> indexed_names(const std::string& stem, std::size_t k);

/// A quotient of polynomials with non-zero denominator.
struct QRatFunc {
  QPoly num;
  QPoly den;

  QRatFunc() = default;
  QRatFunc(QPoly n, QPoly d);

  std::size_t nvars() const { return num.nvars(); }
  bool is_zero() const { return num.is_zero(); }
  double evaluate(std::span<const double> point) const { return num.evaluate(point) / den.evaluate(point); }

  /// Decided by cross-multiplication.
  friend bool operator==(const QRatFunc& a, const QRatFunc& b) { return a.num * b.den == b.num * a.den; }
};

}  // namespace hamloop

#endif  // HAMLOOP_QPOLY_HPP
