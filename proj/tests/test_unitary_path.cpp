#include <doctest.h>

#include "hamloop/unitary_path.hpp"

#include <numbers>
#include <random>

using namespace hamloop;

namespace {

constexpr double kPi = std::numbers::pi;

PathSpec rigid(Rational slope) {
  PathSpec p;
  p.alpha = TrigPoly::linear(0, slope);
  return p;
}

PathSpec winding_one() {
  PathSpec p;
  p.alpha = TrigPoly(0, -1, {{1, 0, 1}});
  return p;
}

}  // namespace

TEST_CASE("eval_matrix examples") {
  for (int i = 0; i < 20; ++i) {
    const auto spec = random_path_spec(5, i);
    CHECK((eval_matrix(spec, 0.0) - Matrix2c::Identity()).cwiseAbs().maxCoeff() < 1e-15);
  }
  const Matrix2c a = eval_matrix(rigid(-1), 0.25);
  const std::complex<double> mi(0, -1);
  CHECK(std::abs(a(0, 0) - mi) < 1e-15);
  CHECK(std::abs(a(1, 1) - mi) < 1e-15);
  CHECK(std::abs(a(0, 1)) < 1e-15);
}

TEST_CASE("unitarity on random specs") {
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> t(0.0, 1.0);
  for (int i = 0; i < 50; ++i) {
    const auto spec = random_path_spec(17, i);
    CHECK(spec.is_valid());
    for (int k = 0; k < 20; ++k) {
      const Matrix2c a = eval_matrix(spec, t(rng));
      CHECK((a.adjoint() * a - Matrix2c::Identity()).cwiseAbs().maxCoeff() < 1e-12);
    }
  }
}

TEST_CASE("realify") {
  CHECK(realify<double>(Matrix2c::Identity()) == Matrix4::Identity());
  Matrix2c m = Matrix2c::Zero();
  m(0, 0) = m(1, 1) = std::complex<double>(0, -1);
  Matrix4 expect = Matrix4::Zero();
  expect(0, 1) = 1;
  expect(1, 0) = -1;
  expect(2, 3) = 1;
  expect(3, 2) = -1;
  CHECK(realify<double>(m) == expect);
  const Matrix4 J = symplectic_j();
  for (int i = 0; i < 10; ++i) {
    const Matrix4 r = realify<double>(eval_matrix(random_path_spec(2, i), 0.3 + 0.05 * i));
    CHECK((r.transpose() * r - Matrix4::Identity()).cwiseAbs().maxCoeff() < 1e-12);
    CHECK((r.transpose() * J * r - J).cwiseAbs().maxCoeff() < 1e-12);
  }
}

TEST_CASE("generator examples") {
  const Matrix4 g = generator(rigid(-1), 0.7);
  Matrix4 expect = Matrix4::Zero();
  expect(0, 1) = expect(2, 3) = 2 * kPi;
  expect(1, 0) = expect(3, 2) = -2 * kPi;
  CHECK((g - expect).cwiseAbs().maxCoeff() < 1e-12);

  // alpha'(0) = 0 and theta'(0) = 0: only the e^{-2 pi i t} column moves.
  const Matrix4 g0 = generator(winding_one(), 0.0);
  CHECK(g0.block<2, 2>(0, 0).cwiseAbs().maxCoeff() < 1e-12);
  CHECK(std::abs(g0(2, 3) - 2 * kPi) < 1e-12);
  CHECK(std::abs(g0(3, 2) + 2 * kPi) < 1e-12);

  const Matrix4 J = symplectic_j();
  for (int i = 0; i < 20; ++i) {
    const Matrix4 l = generator(random_path_spec(4, i), 0.05 * i);
    CHECK((l.transpose() * J + J * l).cwiseAbs().maxCoeff() < 1e-12);
  }
}

TEST_CASE("generator agrees with finite differences") {
  for (int i = 0; i < 20; ++i) {
    const auto spec = random_path_spec(8, i);
    const double t = 0.037 + 0.047 * i;
    const double h = 1e-6;
    const Matrix4 fd = (realify<double>(eval_matrix(spec, t + h)) - realify<double>(eval_matrix(spec, t - h))) / (2 * h);
    const Matrix4 lambda = fd * realify<double>(eval_matrix(spec, t)).inverse();
    CHECK((lambda - generator(spec, t)).cwiseAbs().maxCoeff() < 1e-6);
  }
}

TEST_CASE("validity") {
  PathSpec bad;
  bad.alpha = TrigPoly::constant(Rational(1, 2));
  CHECK_FALSE(bad.is_valid());
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
  PathSpec drift;
  drift.theta = TrigPoly::linear(0, 1);
  CHECK_FALSE(drift.is_valid());
  PathSpec shifted;
  shifted.theta = TrigPoly(0, 0, {{1, 1, 0}});  // theta(0) = 1/(2 pi)
  CHECK_FALSE(shifted.is_valid());
}

TEST_CASE("compatibility") {
  PathSpec zero;
  LoopSpec loop{winding_one(), zero, BumpProfile{1.0, 1.5, 1.0}};
  CHECK(check_compatibility(loop, 1).compatible);
  CHECK(check_compatibility(loop, 2).compatible);
  const auto k3 = check_compatibility(loop, 3);
  CHECK_FALSE(k3.compatible);
  CHECK(k3.failing_order == 3);
  CHECK(k3.achieved_order == 2);

  for (int i = 0; i < 5; ++i) {
    const auto p = random_path_spec(9, i);
    CHECK(check_compatibility(LoopSpec{p, p, {}}, 8).compatible);
  }

  LoopSpec fractional{rigid(Rational(-1, 2)), zero, {}};
  CHECK_FALSE(check_compatibility(fractional, 1).compatible);
  LoopSpec kink{rigid(-1), zero, {}};
  const auto r = check_compatibility(kink, 1);
  CHECK_FALSE(r.compatible);
  CHECK(r.failing_order == 1);
}
