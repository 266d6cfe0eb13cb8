#ifndef HAMLOOP_TRIG_POLY_HPP
#define HAMLOOP_TRIG_POLY_HPP

#include "hamloop/exact.hpp"

#include <optional>
#include <vector>

namespace hamloop {

/// One harmonic of a TrigPoly.
struct Harmonic {
  int n = 1;  // positive frequency index
  Rational p{0};  // cosine coefficient
  Rational q{0};  // sine coefficient
  friend bool operator==(const Harmonic&, const Harmonic&) = default;
};

/// Exact trigonometric polynomial over Q,
///
///   f(t) = c0 + c1 t + sum_n (2 pi n)^(order-1) [P_n cos(2 pi n t) + Q_n sin(2 pi n t)].
///
/// At order 0 the harmonic basis is derivative-normalized: a harmonic entry
/// (n, P, Q) denotes [P cos + Q sin] / (2 pi n), so alpha(t) = -t + sin(2 pi t)/(2 pi)
/// is {c0 = 0, c1 = -1, harmonics = [(1, 0, 1)]}. Each derivative raises `order`
/// by one and keeps every stored coefficient rational.
class TrigPoly {
 public:
  TrigPoly() = default;
  TrigPoly(Rational c0, Rational c1, std::vector<Harmonic> harmonics = {}, int order = 0);

  static TrigPoly constant(Rational c) { return TrigPoly(std::move(c), 0); }
  static TrigPoly linear(Rational c0, Rational c1) { return TrigPoly(std::move(c0), std::move(c1)); }

  const Rational& c0() const { return c0_; }
  const Rational& c1() const { return c1_; }
  const std::vector<Harmonic>& harmonics() const { return harmonics_; }
  int order() const { return order_; }

  /// 1-periodic iff there is no linear drift.
  bool is_periodic() const { return c1_ == 0; }

  double operator()(double t) const;

  /// Exact value when every 4 n t is an integer (sin/cos in {0, +-1}); nullopt otherwise.
  std::optional<PiValue> eval_exact(const Rational& t) const;

  /// Exact where available, then rounded once; otherwise floating point.
  double eval(const Rational& t) const;

  TrigPoly derivative() const;

  /// k-th derivative (k >= 0).
  TrigPoly derivative(int k) const;

  /// Exact integral over [0, 1]: c0 + c1/2.
  Rational integral_01() const { return c0_ + c1_ / 2; }

  /// Sum of two polynomials of the same order.
  friend TrigPoly operator+(const TrigPoly& a, const TrigPoly& b);

  friend bool operator==(const TrigPoly& a, const TrigPoly& b) {
    // the order only scales harmonics
    return a.c0_ == b.c0_ && a.c1_ == b.c1_ && a.harmonics_ == b.harmonics_ &&
           (a.order_ == b.order_ || a.harmonics_.empty());
  }

 private:
  void canonicalize();

  Rational c0_{0};
  Rational c1_{0};
  std::vector<Harmonic> harmonics_;
  int order_ = 0;

  // Floating-point cache for the hot evaluation path.
  double c0d_ = 0.0;
  double c1d_ = 0.0;
  std::vector<double> scaled_p_;
  std::vector<double> scaled_q_;
  std::vector<double> omega_;
};

}  // namespace hamloop

#endif  // HAMLOOP_TRIG_POLY_HPP
