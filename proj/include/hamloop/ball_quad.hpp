#ifndef HAMLOOP_BALL_QUAD_HPP
#define HAMLOOP_BALL_QUAD_HPP

#include "hamloop/exact.hpp"
#include "hamloop/hamiltonian.hpp"

#include <array>
#include <functional>
#include <vector>

namespace hamloop {

// All volume integrals use the Liouville measure dV = omega0^2 / 2 (Euclidean Lebesgue measure on R^4).

/// Monomial moment over the 4-ball: integral of x1^e1 y1^e2 x2^e3 y2^e4 dV over B_r
/// equals factor * pi^2 * r^degree exactly.
struct Moment {
  std::array<int, 4> exponents{};
  double radius = 1.0;
  Rational factor{0};
  int degree = 4;

  double value() const;
};

/// Dirichlet formula: prod Gamma((e_i + 1)/2) / Gamma(3 + sum e_i / 2), zero when any e_i is odd.
Moment ball_moment(const std::array<int, 4>& exponents, double radius);

struct Resolution {
  int radial = 24;
  int polar = 12;
  int azimuthal = 8;

  Resolution scaled(int k) const { return {radial * k, polar * k, azimuthal * k}; }
};

/// Gauss-Legendre nodes and weights on [a, b].
struct GaussRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};
GaussRule gauss_legendre(int n, double a, double b);

struct QuadNode {
  Vector4 x;
  double weight;
};

/// Product rule on the shell r_in <= |x| <= r_out in coordinates
/// z1 = s cos(eta) e^{i xi1}, z2 = s sin(eta) e^{i xi2}, dV = s^3 cos(eta) sin(eta) ds d(eta) d(xi1) d(xi2):
/// Gauss-Legendre in s and eta, uniform in xi1 and xi2.
std::vector<QuadNode> shell_nodes(double r_in, double r_out, const Resolution& res);

using Integrand = std::function<double(const Vector4&)>;

double quad_ball(const Integrand& f, double radius, const Resolution& res = {});
double quad_shell(const Integrand& f, double r_in, double r_out, const Resolution& res = {});

/// Spatial region for space-time integrals.
struct Region {
  enum class Kind { Ball, Annulus, Support } kind = Kind::Ball;
  double r_in = 0.0;
  double r_out = 1.0;

  static Region ball(double r) { return {Kind::Ball, 0.0, r}; }
  static Region annulus(double r_in, double r_out) { return {Kind::Annulus, r_in, r_out}; }
  /// The whole support ball of a bumped field (split radially at the inner radius).
  static Region support() { return {Kind::Support, 0.0, 0.0}; }
};

struct TimeRule {
  int panels_per_unit = 400;  // composite Simpson, rounded up to even per segment
};

/// Composite Simpson in t over [t0, t1] (segments split at the field's breakpoints) of the
/// spatial product-rule integral of H(t, .) over the region.
double quad_spacetime(const HamiltonianField& field, const Region& region, double t0, double t1,
                      const Resolution& res = {}, TimeRule time_rule = {});

/// Composite Simpson rule with `panels` (even) panels for a scalar function.
double simpson(const std::function<double(double)>& f, double a, double b, int panels);

}  // namespace hamloop

#endif  // HAMLOOP_BALL_QUAD_HPP
