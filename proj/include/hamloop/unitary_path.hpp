#ifndef HAMLOOP_UNITARY_PATH_HPP
#define HAMLOOP_UNITARY_PATH_HPP

#include "hamloop/bump.hpp"
#include "hamloop/trig_poly.hpp"

#include <Eigen/Dense>

#include <complex>
#include <cstdint>
#include <string>

namespace hamloop {

using Matrix2c = Eigen::Matrix2cd;
using Matrix4 = Eigen::Matrix4d;
using Vector4 = Eigen::Vector4d;

/// A path t -> A_t in U(2) of the form
///
///   [[a1 e^{2 pi i alpha}, a2 e^{-2 pi i t}],
///    [a3 e^{2 pi i alpha}, a4 e^{-2 pi i t}]]
///
/// with (a1, a2, a3, a4) = (cos theta, -sin theta, sin theta, cos theta).
struct PathSpec {
  TrigPoly theta;
  TrigPoly alpha;

  /// theta 1-periodic with theta(0) = 0 and alpha(0) an integer, all decided exactly.
  /// Throws std::invalid_argument naming the violated condition.
  void validate() const;
  bool is_valid() const;
};

/// Seeded random valid path: theta and alpha with up to two harmonics and small rational
/// coefficients, theta(0) = 0 and alpha(0) an integer.
PathSpec random_path_spec(std::uint64_t seed, std::uint64_t index);

/// Two paths that agree at t = 1, concatenated into a loop, with the cutoff used on R^4.
struct LoopSpec {
  PathSpec path_a;
  PathSpec path_b;
  BumpProfile bump;
};

/// The four real generator functions a1..a4 and their derivatives at t.
struct Generators {
  double a1, a2, a3, a4;
  double da1, da2, da3, da4;
};

Generators generators(const PathSpec& spec, double t);

Matrix2c eval_matrix(const PathSpec& spec, double t);

/// dA/dt by term-wise differentiation.
Matrix2c eval_matrix_derivative(const PathSpec& spec, double t);

/// The real 4x4 matrix acting on (x1, y1, x2, y2) as M acts on (z1, z2), z_j = x_j + i y_j.
template <typename Scalar>
Eigen::Matrix<Scalar, 4, 4> realify(const Eigen::Matrix<std::complex<Scalar>, 2, 2>& m) {
  Eigen::Matrix<Scalar, 4, 4> r;
  for (int i = 0; i < 2; ++i) {
    for (int j = 0; j < 2; ++j) {
      const Scalar a = m(i, j).real();
      const Scalar b = m(i, j).imag();
      r.template block<2, 2>(2 * i, 2 * j) << a, -b, b, a;
    }
  }
  return r;
}

/// Standard symplectic matrix on (x1, y1, x2, y2): omega0(u, v) = u^T J v.
template <typename Scalar = double>
Eigen::Matrix<Scalar, 4, 4> symplectic_j() {
  Eigen::Matrix<Scalar, 4, 4> j = Eigen::Matrix<Scalar, 4, 4>::Zero();
  j(0, 1) = 1;
  j(1, 0) = -1;
  j(2, 3) = 1;
  j(3, 2) = -1;
  return j;
}

/// Realified (dA/dt) A^{-1}: the linear vector field x -> Lambda(t) x of the path.
Matrix4 generator(const PathSpec& spec, double t);

struct CompatibilityResult {
  bool compatible = false;
  /// Highest jet order at which the two matrix paths agree at t = 1 (<= requested order),
  /// or -1 when they already differ at order 0.
  int achieved_order = -1;
  /// First failing jet order, or -1.
  int failing_order = -1;
  std::string diagnostic;
};

/// Exact test that A and B agree at t = 1 to jet order `jet_order`:
/// alpha(1) - beta(1) in Z, theta_a(1) = theta_b(1), and the first `jet_order`
/// derivatives of the two matrix paths coincide in Q(i)[pi, 1/pi].
CompatibilityResult check_compatibility(const LoopSpec& loop, int jet_order);

}  // namespace hamloop

#endif  // HAMLOOP_UNITARY_PATH_HPP
