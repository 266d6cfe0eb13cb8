#include "hamloop/trig_poly.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace hamloop {

namespace {

// (2 pi n)^e as an exact element of Q[pi, 1/pi].
PiValue two_pi_n_power(int n, int e) {
  Rational scale(1);
  const Rational two_n(2 * n);
  for (int i = 0; i < std::abs(e); ++i) scale *= two_n;
  if (e < 0) scale = Rational(1) / scale;
  return PiValue(scale, e);
}

}  // namespace

TrigPoly::TrigPoly(Rational c0, Rational c1, std::vector<Harmonic> harmonics, int order)
    : c0_(std::move(c0)), c1_(std::move(c1)), harmonics_(std::move(harmonics)), order_(order) {
  if (order_ < 0) throw std::invalid_argument("TrigPoly order must be non-negative");
  for (const auto& h : harmonics_)
    if (h.n <= 0) throw std::invalid_argument("harmonic index must be positive");
  canonicalize();
}

void TrigPoly::canonicalize() {
  std::sort(harmonics_.begin(), harmonics_.end(),
            [](const Harmonic& a, const Harmonic& b) { return a.n < b.n; });
  std::vector<Harmonic> merged;
  for (const auto& h : harmonics_) {
    if (!merged.empty() && merged.back().n == h.n) {
      merged.back().p += h.p;
      merged.back().q += h.q;
    } else {
      merged.push_back(h);
    }
  }
  std::erase_if(merged, [](const Harmonic& h) { return h.p == 0 && h.q == 0; });
  harmonics_ = std::move(merged);

  c0d_ = to_double(c0_);
  c1d_ = to_double(c1_);
  scaled_p_.clear();
  scaled_q_.clear();
  omega_.clear();
  for (const auto& h : harmonics_) {
    const double w = 2.0 * std::numbers::pi * h.n;
    const double s = std::pow(w, order_ - 1);
    omega_.push_back(w);
    scaled_p_.push_back(s * to_double(h.p));
    scaled_q_.push_back(s * to_double(h.q));
  }
}

double TrigPoly::operator()(double t) const {
  double v = c0d_ + c1d_ * t;
  for (std::size_t i = 0; i < omega_.size(); ++i) {
    const double arg = omega_[i] * t;
    v += scaled_p_[i] * std::cos(arg) + scaled_q_[i] * std::sin(arg);
  }
  return v;
}

std::optional<PiValue> TrigPoly::eval_exact(const Rational& t) const {
  PiValue v(c0_ + c1_ * t);
  for (const auto& h : harmonics_) {
    const Rational quarter_turns = 4 * h.n * t;
    if (!is_integer(quarter_turns)) return std::nullopt;
    Integer u = boost::multiprecision::numerator(quarter_turns) % 4;
    if (u < 0) u += 4;
    const int idx = u.convert_to<int>();
    static constexpr int cos_tab[4] = {1, 0, -1, 0};
    static constexpr int sin_tab[4] = {0, 1, 0, -1};
    const Rational trig = cos_tab[idx] * h.p + sin_tab[idx] * h.q;
    v += trig * two_pi_n_power(h.n, order_ - 1);
  }
  return v;
}

double TrigPoly::eval(const Rational& t) const {
  if (auto exact = eval_exact(t)) return to_double(*exact);
  return (*this)(to_double(t));
}

TrigPoly TrigPoly::derivative() const {
  // d/dt (2 pi n)^(d-1) [P cos + Q sin] = (2 pi n)^d [Q cos - P sin]
  std::vector<Harmonic> hs;
  hs.reserve(harmonics_.size());
  for (const auto& h : harmonics_) hs.push_back({h.n, h.q, -h.p});
  return TrigPoly(c1_, 0, std::move(hs), order_ + 1);
}

TrigPoly TrigPoly::derivative(int k) const {
  if (k < 0) throw std::invalid_argument("negative derivative order");
  TrigPoly f = *this;
  for (int i = 0; i < k; ++i) f = f.derivative();
  return f;
}

TrigPoly operator+(const TrigPoly& a, const TrigPoly& b) {
  const bool mixed = a.order_ != b.order_ && !a.harmonics_.empty() && !b.harmonics_.empty();
  if (mixed) throw std::invalid_argument("TrigPoly sum requires equal order");
  std::vector<Harmonic> hs = a.harmonics_;
  hs.insert(hs.end(), b.harmonics_.begin(), b.harmonics_.end());
  return TrigPoly(a.c0_ + b.c0_, a.c1_ + b.c1_, std::move(hs), a.harmonics_.empty() ? b.order_ : a.order_);
}

}  // namespace hamloop
