#ifndef HAMLOOP_HAMILTONIAN_HPP
#define HAMLOOP_HAMILTONIAN_HPP

#include "hamloop/bump.hpp"
#include "hamloop/unitary_path.hpp"

#include <optional>
#include <vector>

namespace hamloop {

/// H(t, x) = A |z1|^2 + B |z2|^2 + C (x1 x2 + y1 y2) + D (x1 y2 - x2 y1).
struct QuadCoeffs {
  double a = 0.0;
  double b = 0.0;
  double c = 0.0;
  double d = 0.0;

  QuadCoeffs scaled(double s) const { return {s * a, s * b, s * c, s * d}; }
};

QuadCoeffs quad_coeffs(const PathSpec& spec, double t);

template <typename Derived>
typename Derived::Scalar quad_value(const QuadCoeffs& q, const Eigen::MatrixBase<Derived>& x) {
  return q.a * (x[0] * x[0] + x[1] * x[1]) + q.b * (x[2] * x[2] + x[3] * x[3]) +
         q.c * (x[0] * x[2] + x[1] * x[3]) + q.d * (x[0] * x[3] - x[2] * x[1]);
}

template <typename Derived>
Eigen::Matrix<typename Derived::Scalar, 4, 1> quad_gradient(const QuadCoeffs& q,
                                                            const Eigen::MatrixBase<Derived>& x) {
  Eigen::Matrix<typename Derived::Scalar, 4, 1> g;
  g << 2 * q.a * x[0] + q.c * x[2] + q.d * x[3],
       2 * q.a * x[1] + q.c * x[3] - q.d * x[2],
       2 * q.b * x[2] + q.c * x[0] - q.d * x[1],
       2 * q.b * x[3] + q.c * x[1] + q.d * x[0];
  return g;
}

/// X with iota_X omega0 = dH: (dH/dy1, -dH/dx1, dH/dy2, -dH/dx2).
template <typename Derived>
Eigen::Matrix<typename Derived::Scalar, 4, 1> symplectic_gradient(const Eigen::MatrixBase<Derived>& grad) {
  Eigen::Matrix<typename Derived::Scalar, 4, 1> v;
  v << grad[1], -grad[0], grad[3], -grad[2];
  return v;
}

/// Sign of the y1 term in the d/dy2 component of the closed-form vector field.
/// `AsPrinted` reproduces the published display, `Consistent` is the sign that J grad H gives.
enum class DisplayedSign { AsPrinted, Consistent };

/// Term-by-term transcription of the closed-form vector field of the unitary path,
/// written in the generators a1..a4, their derivatives and alpha'.
Vector4 displayed_vector_field(const PathSpec& spec, double t, const Vector4& x,
                               DisplayedSign sign = DisplayedSign::Consistent);

/// How the second path of a loop is run backwards on t in [1, 2].
enum class Reversal {
  Signed,    // H_t = -H^b_{2-t}: the Hamiltonian of t -> psi^b_{2-t}
  Unsigned,  // H_t = +H^b_{2-t}: literal reading without the time-reversal sign
};

/// A time-dependent Hamiltonian of bump-times-quadratic form, assembled from
/// one or two unitary paths. Evaluation is pure; fields are immutable.
class HamiltonianField {
 public:
  /// One time piece: on [t_begin, t_end] the field is sign * rho * H^{spec}_{offset + direction * t}.
  struct Piece {
    PathSpec spec;
    TrigPoly dtheta;
    TrigPoly dalpha;
    double sign = 1.0;
    double offset = 0.0;
    double direction = 1.0;
    double t_begin = 0.0;
    double t_end = 1.0;

    QuadCoeffs coeffs(double t) const;
  };

  /// H^{a}_t (or rho H^{a}_t with a bump) on [0, 1].
  static HamiltonianField path(const PathSpec& spec, std::optional<BumpProfile> bump = std::nullopt);

  /// The concatenated loop Hamiltonian on [0, 2]. Throws CompatibilityError
  /// when the two paths do not agree at t = 1 to `jet_order`.
  static HamiltonianField loop(const LoopSpec& loop, int jet_order = 1, Reversal reversal = Reversal::Signed,
                               bool with_bump = true);

  /// The same field without the cutoff.
  HamiltonianField unbumped() const;

  double t_min() const { return pieces_.front().t_begin; }
  double t_max() const { return pieces_.back().t_end; }
  const std::vector<Piece>& pieces() const { return pieces_; }
  const std::optional<BumpProfile>& bump() const { return bump_; }

  /// Index of the piece owning t (left piece at interior breakpoints). Throws std::out_of_range outside the window.
  std::size_t piece_index(double t) const;

  QuadCoeffs coeffs(double t) const { return pieces_[piece_index(t)].coeffs(t); }

  double value(double t, const Vector4& x) const;
  Vector4 gradient(double t, const Vector4& x) const;
  Vector4 vector_field(double t, const Vector4& x) const;

  /// Evaluation with coefficients already computed for the current time.
  double value_with(const QuadCoeffs& q, const Vector4& x) const;
  Vector4 vector_field_with(const QuadCoeffs& q, const Vector4& x) const;

  /// Radius beyond which H vanishes identically; +infinity without a bump.
  double support_radius() const;

 private:
  HamiltonianField(std::vector<Piece> pieces, std::optional<BumpProfile> bump)
      : pieces_(std::move(pieces)), bump_(bump) {}

  std::vector<Piece> pieces_;
  std::optional<BumpProfile> bump_;
};

struct CompatibilityError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace hamloop

#endif  // HAMLOOP_HAMILTONIAN_HPP
