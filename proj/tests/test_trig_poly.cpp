#include <doctest.h>

#include "hamloop/ball_quad.hpp"
#include "hamloop/json_io.hpp"
#include "hamloop/trig_poly.hpp"

#include <cmath>
#include <numbers>
#include <random>

using namespace hamloop;

namespace {

TrigPoly winding_alpha() { return TrigPoly(0, -1, {{1, 0, 1}}); }

TrigPoly random_poly(std::mt19937_64& rng, bool periodic) {
  std::uniform_int_distribution<int> d(-5, 5);
  std::vector<Harmonic> hs;
  for (int n = 1; n <= 3; ++n) hs.push_back({n, Rational(d(rng), 3), Rational(d(rng), 2)});
  return TrigPoly(Rational(d(rng), 7), periodic ? Rational(0) : Rational(d(rng), 5), hs);
}

}  // namespace

TEST_CASE("parse_rational") {
  CHECK(parse_rational("3/4") == Rational(3, 4));
  CHECK(parse_rational(" -2 ") == Rational(-2));
  CHECK(parse_rational("6/-4") == Rational(-3, 2));
  CHECK_THROWS_AS(parse_rational("1/0"), std::invalid_argument);
  CHECK_THROWS(parse_rational("abc"));
}

TEST_CASE("eval examples") {
  CHECK(TrigPoly::linear(0, -1)(1.0) == -1.0);
  const auto alpha = winding_alpha();
  auto half = alpha.eval_exact(Rational(1, 2));
  REQUIRE(half);
  CHECK(half->is_pure_constant());
  CHECK(half->pure_constant() == Rational(-1, 2));
  CHECK(alpha.eval(Rational(1, 2)) == -0.5);
  CHECK(TrigPoly::constant(2)(0.37) == 2.0);
  // sin(pi/2) / (2 pi) survives as a 1/pi term
  auto quarter = alpha.eval_exact(Rational(1, 4));
  REQUIRE(quarter);
  CHECK(quarter->coefficient(-1) == Rational(1, 2));
  CHECK(alpha.eval(Rational(1, 4)) == doctest::Approx(-0.25 + 1.0 / (2.0 * std::numbers::pi)).epsilon(1e-15));
  CHECK_FALSE(alpha.eval_exact(Rational(1, 3)));
}

TEST_CASE("derivative examples") {
  CHECK(TrigPoly::linear(0, -1).derivative() == TrigPoly::constant(-1));
  const auto da = winding_alpha().derivative();
  auto at1 = da.eval_exact(Rational(1));
  REQUIRE(at1);
  CHECK(at1->is_pure_constant());
  CHECK(at1->pure_constant() == 0);
  CHECK(da(0.25) == doctest::Approx(-1.0));
  CHECK(TrigPoly::constant(7).derivative() == TrigPoly());
  // third derivative at 1: -4 pi^2
  auto d3 = winding_alpha().derivative(3).eval_exact(Rational(1));
  REQUIRE(d3);
  CHECK(d3->coefficient(2) == -4);
}

TEST_CASE("integral_01 examples") {
  CHECK(TrigPoly::linear(0, -1).integral_01() == Rational(-1, 2));
  std::mt19937_64 rng(3);
  auto f = random_poly(rng, true);
  f = TrigPoly(1, 0, f.harmonics());
  CHECK(f.integral_01() == 1);
  CHECK(simpson([&](double t) { return f(t); }, 0.0, 1.0, 10000) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(TrigPoly().integral_01() == 0);
}

TEST_CASE("derivative agrees with central differences") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> t_dist(0.0, 2.0);
  for (int k = 0; k < 10; ++k) {
    const auto f = random_poly(rng, k % 2 == 0);
    const auto df = f.derivative();
    for (int i = 0; i < 100; ++i) {
      const double t = t_dist(rng);
      const double h = 1e-6;
      const double fd = (f(t + h) - f(t - h)) / (2 * h);
      CHECK(std::abs(df(t) - fd) < 1e-6);
    }
  }
}

TEST_CASE("integral_01 agrees with Simpson") {
  std::mt19937_64 rng(12);
  for (int k = 0; k < 10; ++k) {
    const auto f = random_poly(rng, false);
    const double s = simpson([&](double t) { return f(t); }, 0.0, 1.0, 10000);
    CHECK(std::abs(s - to_double(f.integral_01())) < 1e-10);
  }
}

TEST_CASE("periodic polynomials repeat") {
  std::mt19937_64 rng(13);
  std::uniform_real_distribution<double> t_dist(0.0, 1.0);
  for (int k = 0; k < 10; ++k) {
    const auto f = random_poly(rng, true);
    REQUIRE(f.is_periodic());
    for (int i = 0; i < 20; ++i) {
      const double t = t_dist(rng);
      CHECK(std::abs(f(t + 1) - f(t)) < 1e-12);
    }
  }
}

TEST_CASE("canonical form and JSON") {
  TrigPoly f(1, 0, {{2, 1, 0}, {1, 0, 1}, {2, -1, 0}});
  REQUIRE(f.harmonics().size() == 1);
  CHECK(f.harmonics()[0].n == 1);
  const auto alpha = winding_alpha();
  CHECK(trig_poly_from_json(to_json(alpha)) == alpha);
  CHECK(trig_poly_from_json(json::parse(R"({"c0":"0","c1":"-1","harmonics":[{"n":1,"P":"0","Q":"1"}]})")) == alpha);
  CHECK_THROWS(trig_poly_from_json(json::parse(R"({"c0":"1/0"})")));
}
