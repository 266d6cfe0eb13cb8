#include "hamloop/hamiltonian.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

namespace hamloop {

namespace {

constexpr double kPi = std::numbers::pi;

QuadCoeffs coeffs_from(double theta, double dtheta, double dalpha) {
  const double c = std::cos(theta);
  const double s = std::sin(theta);
  // a1 = c, a2 = -s, a3 = s, a4 = c
  return {kPi * (-c * c * dalpha + s * s),
          kPi * (-s * s * dalpha + c * c),
          2.0 * kPi * (-s * c - c * s * dalpha),
          dtheta};
}

HamiltonianField::Piece make_piece(const PathSpec& spec, double sign, double offset, double direction,
                                   double t_begin, double t_end) {
  return {spec, spec.theta.derivative(), spec.alpha.derivative(), sign, offset, direction, t_begin, t_end};
}

}  // namespace

QuadCoeffs quad_coeffs(const PathSpec& spec, double t) {
  return coeffs_from(spec.theta(t), spec.theta.derivative()(t), spec.alpha.derivative()(t));
}

Vector4 displayed_vector_field(const PathSpec& spec, double t, const Vector4& x, DisplayedSign sign) {
  const Generators g = generators(spec, t);
  const double da = spec.alpha.derivative()(t);
  const double x1 = x[0], y1 = x[1], x2 = x[2], y2 = x[3];
  const double a1 = g.a1, a2 = g.a2, a3 = g.a3, a4 = g.a4;
  const double y1_sign = sign == DisplayedSign::AsPrinted ? -1.0 : 1.0;
  Vector4 v;
  v[0] = 2 * kPi * y1 * (a2 * a2 - a1 * a1 * da) + x2 * (g.da1 * a3 + g.da2 * a4) +
         2 * kPi * y2 * (a2 * a4 - a1 * a3 * da);
  v[1] = 2 * kPi * x1 * (a1 * a1 * da - a2 * a2) + 2 * kPi * x2 * (a1 * a3 * da - a2 * a4) +
         y2 * (g.da1 * a3 + g.da2 * a4);
  v[2] = x1 * (a1 * g.da3 + a2 * g.da4) + 2 * kPi * y1 * (a2 * a4 - a1 * a3 * da) +
         2 * kPi * y2 * (a4 * a4 - a3 * a3 * da);
  v[3] = 2 * kPi * x1 * (a1 * a3 * da - a2 * a4) + y1_sign * y1 * (a1 * g.da3 + a2 * g.da4) +
         2 * kPi * x2 * (a3 * a3 * da - a4 * a4);
  return v;
}

QuadCoeffs HamiltonianField::Piece::coeffs(double t) const {
  const double s = offset + direction * t;
  return coeffs_from(spec.theta(s), dtheta(s), dalpha(s)).scaled(sign);
}

HamiltonianField HamiltonianField::path(const PathSpec& spec, std::optional<BumpProfile> bump) {
  if (bump) bump->validate();
  return HamiltonianField({make_piece(spec, 1.0, 0.0, 1.0, 0.0, 1.0)}, bump);
}

HamiltonianField HamiltonianField::loop(const LoopSpec& loop, int jet_order, Reversal reversal, bool with_bump) {
  const auto compat = check_compatibility(loop, jet_order);
  if (!compat.compatible) throw CompatibilityError("incompatible loop: " + compat.diagnostic);
  std::optional<BumpProfile> bump;
  if (with_bump) {
    loop.bump.validate();
    bump = loop.bump;
  }
  const double sign_b = reversal == Reversal::Signed ? -1.0 : 1.0;
  return HamiltonianField({make_piece(loop.path_a, 1.0, 0.0, 1.0, 0.0, 1.0),
                           make_piece(loop.path_b, sign_b, 2.0, -1.0, 1.0, 2.0)},
                          bump);
}

HamiltonianField HamiltonianField::unbumped() const { return HamiltonianField(pieces_, std::nullopt); }

std::size_t HamiltonianField::piece_index(double t) const {
  if (!(t >= t_min() && t <= t_max()))
    throw std::out_of_range("time " + std::to_string(t) + " outside field window [" + std::to_string(t_min()) +
                            ", " + std::to_string(t_max()) + "]");
  for (std::size_t i = 0; i < pieces_.size(); ++i)
    if (t <= pieces_[i].t_end) return i;
  return pieces_.size() - 1;
}

double HamiltonianField::value_with(const QuadCoeffs& q, const Vector4& x) const {
  if (!bump_) return quad_value(q, x);
  const double r = x.norm();
  if (r >= bump_->R0) return 0.0;
  return bump_->value(r) * quad_value(q, x);
}

Vector4 HamiltonianField::vector_field_with(const QuadCoeffs& q, const Vector4& x) const {
  if (!bump_) return symplectic_gradient(quad_gradient(q, x));
  const double r = x.norm();
  if (r >= bump_->R0) return Vector4::Zero();
  Vector4 grad = bump_->value(r) * quad_gradient(q, x);
  if (r > bump_->r0) grad += (bump_->derivative(r) / r * quad_value(q, x)) * x;
  return symplectic_gradient(grad);
}

double HamiltonianField::value(double t, const Vector4& x) const { return value_with(coeffs(t), x); }

Vector4 HamiltonianField::gradient(double t, const Vector4& x) const {
  const QuadCoeffs q = coeffs(t);
  if (!bump_) return quad_gradient(q, x);
  const double r = x.norm();
  if (r >= bump_->R0) return Vector4::Zero();
  Vector4 grad = bump_->value(r) * quad_gradient(q, x);
  if (r > bump_->r0) grad += (bump_->derivative(r) / r * quad_value(q, x)) * x;
  return grad;
}

Vector4 HamiltonianField::vector_field(double t, const Vector4& x) const {
  return vector_field_with(coeffs(t), x);
}

double HamiltonianField::support_radius() const {
  return bump_ ? bump_->R0 : std::numeric_limits<double>::infinity();
}

}  // namespace hamloop
