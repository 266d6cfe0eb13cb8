#include <doctest.h>

#include "hamloop/ball_quad.hpp"
#include "hamloop/flow.hpp"

#include <numbers>
#include <random>

using namespace hamloop;

namespace {

constexpr double kPi = std::numbers::pi;

double monomial(const Vector4& x, const std::array<int, 4>& e) {
  double v = 1.0;
  for (int i = 0; i < 4; ++i) v *= std::pow(x[i], e[i]);
  return v;
}

}  // namespace

TEST_CASE("ball_moment examples") {
  const auto vol = ball_moment({0, 0, 0, 0}, 1.3);
  CHECK(vol.factor == Rational(1, 2));
  CHECK(vol.value() == doctest::Approx(kPi * kPi * std::pow(1.3, 4) / 2).epsilon(1e-14));
  const auto a = ball_moment({2, 0, 0, 0}, 1.0);
  const auto b = ball_moment({0, 2, 0, 0}, 1.0);
  CHECK(a.factor + b.factor == Rational(1, 6));
  CHECK(a.degree == 6);
  CHECK(ball_moment({1, 0, 0, 0}, 2.0).value() == 0.0);
  CHECK(ball_moment({2, 1, 0, 2}, 2.0).factor == 0);
  // cross terms of the quadratic form integrate to zero
  CHECK(ball_moment({1, 0, 1, 0}, 1.0).factor == 0);
  CHECK(ball_moment({1, 0, 0, 1}, 1.0).factor == 0);
}

TEST_CASE("ball_moment against Monte Carlo") {
  std::mt19937_64 rng(2024);
  std::uniform_int_distribution<int> half(0, 2);
  const int n = 10'000'000;
  std::vector<std::array<int, 4>> cases;
  for (int c = 0; c < 20; ++c) cases.push_back({2 * half(rng), 2 * half(rng), 2 * half(rng), 2 * half(rng)});
  std::vector<double> sum(cases.size(), 0.0), sum2(cases.size(), 0.0);
  std::uniform_real_distribution<double> cube(-1.0, 1.0);
  for (int i = 0; i < n; ++i) {
    const Vector4 x(cube(rng), cube(rng), cube(rng), cube(rng));
    if (x.squaredNorm() >= 1.0) continue;
    for (std::size_t c = 0; c < cases.size(); ++c) {
      const double v = monomial(x, cases[c]);
      sum[c] += v;
      sum2[c] += v * v;
    }
  }
  for (std::size_t c = 0; c < cases.size(); ++c) {
    const double mean = 16.0 * sum[c] / n;
    const double var = 256.0 * sum2[c] / n - mean * mean;
    const double se = std::sqrt(var / n);
    CHECK(std::abs(mean - ball_moment(cases[c], 1.0).value()) <= 3 * se);
  }
}

TEST_CASE("quad_ball against the moment oracle") {
  for (double r : {0.5, 1.0, 1.7}) {
    CHECK(quad_ball([](const Vector4&) { return 1.0; }, r) ==
          doctest::Approx(kPi * kPi * std::pow(r, 4) / 2).epsilon(1e-8));
    CHECK(quad_ball([](const Vector4& x) { return x[0] * x[0] + x[1] * x[1]; }, r) ==
          doctest::Approx(kPi * kPi * std::pow(r, 6) / 6).epsilon(1e-8));
    CHECK(std::abs(quad_ball([](const Vector4& x) { return x[0]; }, r)) <= 1e-12);
  }
  const std::array<int, 4> e{4, 2, 0, 2};
  CHECK(quad_ball([&](const Vector4& x) { return monomial(x, e); }, 1.2) ==
        doctest::Approx(ball_moment(e, 1.2).value()).epsilon(1e-10));
}

TEST_CASE("quadrature converges with order >= 2") {
  const auto f = [](const Vector4& x) { return std::exp(-x.squaredNorm()) * std::cos(x[0] + 0.3 * x[2]); };
  const Resolution coarse{3, 2, 4};
  const double ref = quad_ball(f, 1.0, coarse.scaled(16));
  const double e1 = std::abs(quad_ball(f, 1.0, coarse) - ref);
  const double e2 = std::abs(quad_ball(f, 1.0, coarse.scaled(2)) - ref);
  CHECK(e1 / e2 >= 3.9);
}

TEST_CASE("Gauss-Legendre rule") {
  const auto g = gauss_legendre(8, -1.0, 2.0);
  double s = 0.0;
  for (std::size_t i = 0; i < g.nodes.size(); ++i) s += g.weights[i] * std::pow(g.nodes[i], 15);
  CHECK(s == doctest::Approx((std::pow(2.0, 16) - 1.0) / 16.0).epsilon(1e-13));
}

TEST_CASE("space-time integral of an unbumped path") {
  for (int i = 0; i < 4; ++i) {
    const auto spec = random_path_spec(99, i);
    const auto f = HamiltonianField::path(spec);
    const double shift = 1.0 + spec.alpha.eval(Rational(0)) - spec.alpha.eval(Rational(1));
    for (double r : {0.5, 1.0}) {
      const double expect = std::pow(kPi, 3) * std::pow(r, 6) / 6 * shift;
      const double got = quad_spacetime(f, Region::ball(r), 0.0, 1.0);
      CHECK(std::abs(got - expect) <= 1e-6 * std::max(1.0, std::abs(expect)));
    }
  }
  const auto f = HamiltonianField::path(random_path_spec(99, 0));
  CHECK(quad_spacetime(f, Region::ball(0.0), 0.0, 1.0) == 0.0);
}

TEST_CASE("space-time integral of the winding-one loop over the inner ball") {
  PathSpec a;
  a.alpha = TrigPoly(0, -1, {{1, 0, 1}});
  const LoopSpec loop{a, PathSpec{}, BumpProfile{0.8, 1.2, 1.0}};
  const auto f = HamiltonianField::loop(loop);
  CHECK(quad_spacetime(f, Region::ball(0.8), 0.0, 2.0) ==
        doctest::Approx(std::pow(kPi, 3) * std::pow(0.8, 6) / 6).epsilon(1e-6));
  CHECK(quad_spacetime(f, Region::annulus(1.2, 2.0), 0.0, 2.0) == 0.0);
}

TEST_CASE("Simpson") {
  CHECK(simpson([](double t) { return t * t * t; }, 0.0, 2.0, 2) == doctest::Approx(4.0));
}
