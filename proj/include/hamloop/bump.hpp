#ifndef HAMLOOP_BUMP_HPP
#define HAMLOOP_BUMP_HPP

#include <cmath>
#include <stdexcept>

namespace hamloop {

/// Radial C-infinity cutoff: 1 on |x| <= r0, 0 on |x| >= R0, monotone in between.
///
///   rho(s) = g(R0^2 - s^2) / (g(R0^2 - s^2) + g(s^2 - r0^2)),  g(u) = exp(-sharpness / u) for u > 0.
struct BumpProfile {
  double r0 = 1.0;
  double R0 = 2.0;
  double sharpness = 1.0;

  void validate() const {
    if (!(r0 > 0.0) || !(R0 > r0) || !(sharpness > 0.0) || !std::isfinite(R0) || !std::isfinite(sharpness))
      throw std::invalid_argument("bump profile requires 0 < r0 < R0 and sharpness > 0");
  }

  /// rho as a function of the radius s = |x|.
  double value(double s) const {
    const double s2 = s * s;
    if (s2 <= r0 * r0) return 1.0;
    if (s2 >= R0 * R0) return 0.0;
    const double gi = g(R0 * R0 - s2);
    const double go = g(s2 - r0 * r0);
    return gi / (gi + go);
  }

  /// d rho / ds.
  double derivative(double s) const {
    const double s2 = s * s;
    if (s2 <= r0 * r0 || s2 >= R0 * R0) return 0.0;
    const double u = R0 * R0 - s2;  // du/ds = -2s
    const double v = s2 - r0 * r0;  // dv/ds = 2s
    const double gu = g(u);
    const double gv = g(v);
    if (gu == 0.0 || gv == 0.0) return 0.0;
    const double dgu = gu * sharpness / (u * u) * (-2.0 * s);
    const double dgv = gv * sharpness / (v * v) * (2.0 * s);
    const double den = gu + gv;
    return (dgu * gv - gu * dgv) / (den * den);
  }

 private:
  double g(double u) const { return u > 0.0 ? std::exp(-sharpness / u) : 0.0; }
};

}  // namespace hamloop

#endif  // HAMLOOP_BUMP_HPP
