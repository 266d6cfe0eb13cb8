#include "hamloop/unitary_path.hpp"

#include <array>
#include <cmath>
#include <numbers>
#include <random>
#include <sstream>
#include <vector>

namespace hamloop {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

PiValue exact_at(const TrigPoly& f, const Rational& t) {
  auto v = f.eval_exact(t);
  if (!v) throw std::logic_error("exact evaluation unavailable at integer time");
  return *v;
}

// Truncated power series in h with coefficients in Q(i)[pi, 1/pi].
using Series = std::vector<PiComplex>;

Series series_mul(const Series& a, const Series& b) {
  Series r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; i + j < a.size(); ++j) r[i + j] += a[i] * b[j];
  return r;
}

Series series_one(std::size_t len) {
  Series r(len);
  r[0] = PiComplex(GaussRational{1, 0});
  return r;
}

// exp, cos and sin of a series with zero constant term.
Series series_exp(const Series& v) {
  Series acc = series_one(v.size());
  Series term = series_one(v.size());
  for (std::size_t k = 1; k < v.size(); ++k) {
    term = series_mul(term, v);
    const Rational inv(1, k);
    for (auto& c : term) c = inv * c;
    for (std::size_t i = 0; i < v.size(); ++i) acc[i] += term[i];
  }
  return acc;
}

std::pair<Series, Series> series_cos_sin(const Series& v) {
  Series cos_s(v.size()), sin_s(v.size());
  Series term = series_one(v.size());
  for (std::size_t k = 0; k < v.size(); ++k) {
    if (k > 0) {
      term = series_mul(term, v);
      const Rational inv(1, k);
      for (auto& c : term) c = inv * c;
    }
    // v^k / k! contributes to cos (k even) or sin (k odd) with sign (-1)^(k/2).
    const bool negative = (k / 2) % 2 == 1;
    Series& target = (k % 2 == 0) ? cos_s : sin_s;
    for (std::size_t i = 0; i < v.size(); ++i) {
      if (negative) target[i] -= term[i];
      else target[i] += term[i];
    }
  }
  return {cos_s, sin_s};
}

// Taylor coefficients f^(m)(1)/m!, m = 1..order, times `scale`, with zero constant term.
Series taylor_increment(const TrigPoly& f, int order, const GaussRational& scale, int pi_power) {
  Series s(order + 1);
  TrigPoly d = f;
  Rational factorial(1);
  for (int m = 1; m <= order; ++m) {
    d = d.derivative();
    factorial *= m;
    const PiValue value = exact_at(d, Rational(1));
    s[m] = (Rational(1) / factorial) * (PiComplex(scale, pi_power) * to_complex_exact(value));
  }
  return s;
}

// Jet of the matrix path at t = 1 (up to the common unit e^{2 pi i alpha(1)} in column 1).
std::array<Series, 4> matrix_jet(const PathSpec& spec, int order) {
  const Series theta_inc = taylor_increment(spec.theta, order, GaussRational{1, 0}, 0);
  const Series phase_inc = taylor_increment(spec.alpha, order, GaussRational{0, 2}, 1);  // 2 pi i
  Series time_inc(order + 1);
  if (order >= 1) time_inc[1] = PiComplex(GaussRational{0, -2}, 1);  // -2 pi i h
  const auto [c, s] = series_cos_sin(theta_inc);
  const Series e_alpha = series_exp(phase_inc);
  const Series e_time = series_exp(time_inc);
  Series minus_s = s;
  for (auto& x : minus_s) x = -x;
  return {series_mul(c, e_alpha), series_mul(minus_s, e_time), series_mul(s, e_alpha),
          series_mul(c, e_time)};
}

}  // namespace

void PathSpec::validate() const {
  if (!theta.is_periodic()) throw std::invalid_argument("theta must be 1-periodic (c1 = 0)");
  if (!exact_at(theta, Rational(0)).is_zero()) throw std::invalid_argument("theta(0) must be 0");
  const PiValue a0 = exact_at(alpha, Rational(0));
  if (!a0.is_pure_constant() || !is_integer(a0.pure_constant()))
    throw std::invalid_argument("alpha(0) must be an integer, got " + a0.to_string());
}

bool PathSpec::is_valid() const {
  try {
    validate();
    return true;
  } catch (const std::invalid_argument&) {
    return false;
  }
}

Generators generators(const PathSpec& spec, double t) {
  const double th = spec.theta(t);
  const double dth = spec.theta.derivative()(t);
  const double c = std::cos(th);
  const double s = std::sin(th);
  return {c, -s, s, c, -s * dth, -c * dth, c * dth, -s * dth};
}

namespace {

// exp(2 pi i x) with x reduced mod 1 first, so integer turns give exactly 1
std::complex<double> turn(double x) {
  const double f = kTwoPi * (x - std::round(x));
  return {std::cos(f), std::sin(f)};
}

}  // namespace

Matrix2c eval_matrix(const PathSpec& spec, double t) {
  // A(0) = I holds exactly for valid specs; floating evaluation of theta(0), alpha(0) can miss it by an ulp
  if (t == 0.0 && spec.is_valid()) return Matrix2c::Identity();
  const double th = spec.theta(t);
  const std::complex<double> ea = turn(spec.alpha(t));
  const std::complex<double> et = turn(-t);
  Matrix2c m;
  m << std::cos(th) * ea, -std::sin(th) * et, std::sin(th) * ea, std::cos(th) * et;
  return m;
}

Matrix2c eval_matrix_derivative(const PathSpec& spec, double t) {
  using namespace std::complex_literals;
  const double th = spec.theta(t);
  const double dth = spec.theta.derivative()(t);
  const double dal = spec.alpha.derivative()(t);
  const double c = std::cos(th);
  const double s = std::sin(th);
  const std::complex<double> ea = std::exp(kTwoPi * spec.alpha(t) * 1i);
  const std::complex<double> et = std::exp(-kTwoPi * t * 1i);
  const std::complex<double> wa = kTwoPi * dal * 1i;
  const std::complex<double> wt = -kTwoPi * 1i;
  Matrix2c m;
  m << (-s * dth + c * wa) * ea, (-c * dth - s * wt) * et,
       (c * dth + s * wa) * ea, (-s * dth + c * wt) * et;
  return m;
}

Matrix4 generator(const PathSpec& spec, double t) {
  const Matrix2c a = eval_matrix(spec, t);
  const Matrix2c da = eval_matrix_derivative(spec, t);
  return realify<double>(da * a.adjoint());
}

CompatibilityResult check_compatibility(const LoopSpec& loop, int jet_order) {
  if (jet_order < 0) throw std::invalid_argument("jet order must be non-negative");
  CompatibilityResult res;
  std::ostringstream diag;
  for (const auto* p : {&loop.path_a, &loop.path_b}) {
    try {
      p->validate();
    } catch (const std::invalid_argument& e) {
      res.diagnostic = std::string("invalid path: ") + e.what();
      res.failing_order = 0;
      return res;
    }
  }

  const PiValue alpha_gap =
      exact_at(loop.path_a.alpha, Rational(1)) - exact_at(loop.path_b.alpha, Rational(1));
  if (!alpha_gap.is_pure_constant() || !is_integer(alpha_gap.pure_constant())) {
    res.failing_order = 0;
    res.diagnostic = "alpha(1) - beta(1) = " + alpha_gap.to_string() + " is not an integer";
    return res;
  }
  if (!(exact_at(loop.path_a.theta, Rational(1)) == exact_at(loop.path_b.theta, Rational(1)))) {
    res.failing_order = 0;
    res.diagnostic = "theta_a(1) != theta_b(1)";
    return res;
  }

  const auto ja = matrix_jet(loop.path_a, jet_order);
  const auto jb = matrix_jet(loop.path_b, jet_order);
  static constexpr const char* kEntry[4] = {"(1,1)", "(1,2)", "(2,1)", "(2,2)"};
  res.achieved_order = jet_order;
  for (int m = 1; m <= jet_order; ++m) {
    for (int e = 0; e < 4; ++e) {
      if (!(ja[e][m] == jb[e][m])) {
        res.achieved_order = m - 1;
        res.failing_order = m;
        diag << "jet order " << m << " differs at entry " << kEntry[e] << ": "
             << ja[e][m].to_string() << " vs " << jb[e][m].to_string() << " (Taylor coefficients)";
        res.diagnostic = diag.str();
        return res;
      }
    }
  }
  res.compatible = true;
  res.diagnostic = "matrix paths agree at t = 1 to jet order " + std::to_string(jet_order);
  return res;
}

PathSpec random_path_spec(std::uint64_t seed, std::uint64_t index) {
  std::seed_seq seq{seed, index, std::uint64_t{0x9a7b}};
  std::mt19937_64 rng(seq);
  auto small = [&](int lo, int hi, int den) {
    std::uniform_int_distribution<int> d(lo, hi);
    return Rational(d(rng), den);
  };
  // Cosine parts enter f(0) as P_1/(2 pi) + P_2/(4 pi); P_2 = -2 P_1 keeps f(0) rational.
  auto harmonics = [&](int den) {
    const Rational p1 = small(-3, 3, den);
    return std::vector<Harmonic>{{1, p1, small(-3, 3, den)}, {2, -2 * p1, small(-3, 3, den)}};
  };
  PathSpec spec;
  spec.theta = TrigPoly(0, 0, harmonics(4));
  spec.alpha = TrigPoly(small(-1, 1, 1), small(-4, 4, 2), harmonics(2));
  return spec;
}

}  // namespace hamloop
