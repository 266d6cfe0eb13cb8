#include <doctest.h>

#include "hamloop/invariants.hpp"

#include <numbers>

using namespace hamloop;

namespace {

constexpr double kPi = std::numbers::pi;

PathSpec alpha_path(TrigPoly alpha) {
  PathSpec p;
  p.alpha = std::move(alpha);
  return p;
}

PathSpec winding_one() { return alpha_path(TrigPoly(0, -1, {{1, 0, 1}})); }

LoopSpec loop_w1(BumpProfile bump = {1.0, 1.5, 1.0}) { return LoopSpec{winding_one(), PathSpec{}, bump}; }

BlowupModel single_ball() {
  BlowupModel m;
  m.balls = {EmbeddedBall{Vector4::Zero(), 1.0, 1.5}};
  return m;
}

BlowupModel five_balls() {
  BlowupModel m;
  const double d = 0.8;
  for (const Vector4& c : {Vector4(0, 0, 0, 0), Vector4(d, 0, 0, 0), Vector4(-d, 0, 0, 0), Vector4(0, d, 0, 0),
                           Vector4(0, -d, 0, 0)})
    m.balls.push_back(EmbeddedBall{c, 0.2, 0.3});
  return m;
}

}  // namespace

TEST_CASE("winding") {
  CHECK(winding(loop_w1()) == 1);
  const auto p = random_path_spec(1, 3);
  CHECK(winding(LoopSpec{p, p, {}}) == 0);
  auto shifted = loop_w1();
  shifted.path_a.alpha = shifted.path_a.alpha + TrigPoly::constant(3);
  CHECK(winding(shifted) == 1);
  // adding the same periodic function to alpha and beta
  const TrigPoly bump_fn(0, 0, {{2, 0, Rational(3, 5)}, {3, 1, -1}, {1, -3, 0}});
  auto both = loop_w1();
  both.path_a.alpha = both.path_a.alpha + bump_fn;
  both.path_b.alpha = both.path_b.alpha + bump_fn;
  CHECK(winding(both) == 1);
  CHECK(winding(LoopSpec{alpha_path(TrigPoly::linear(0, 2)), alpha_path(TrigPoly::linear(0, 1)), {}}) == -1);
  CHECK_THROWS_AS(winding(LoopSpec{alpha_path(TrigPoly::linear(0, Rational(1, 2))), PathSpec{}, {}}), std::domain_error);
}

TEST_CASE("radial oracle") {
  const BumpProfile b{1.0, 1.5, 1.0};
  const double m = radial_oracle(b);
  CHECK(m > kPi * kPi / 6);
  CHECK(m < kPi * kPi * std::pow(1.5, 6) / 6);
  // shrinking the transition band recovers the indicator
  const double thin = radial_oracle(BumpProfile{1.0, 1.0001, 1e-3});
  CHECK(thin == doctest::Approx(kPi * kPi / 6).epsilon(1e-3));
}

TEST_CASE("calabi on R^4") {
  const auto c = calabi_r4(loop_w1());
  CHECK(c.reference == 0.0);
  CHECK(std::abs(c.measured - c.oracle) <= 1e-6 * std::abs(c.oracle));
  const auto p = random_path_spec(2, 0);
  CHECK(std::abs(calabi_r4(LoopSpec{p, p, {0.5, 0.9, 0.6}}).measured) <= 1e-8);
  // indicator limit: value -> (pi^3 r0^6 / 6) w
  double prev = 1e9;
  for (double R0 : {1.5, 1.1, 1.01}) {
    const auto s = calabi_r4(loop_w1({1.0, R0, 0.1}), Resolution{}.scaled(2));
    const double gap = std::abs(s.measured - std::pow(kPi, 3) / 6);
    CHECK(gap < prev);
    prev = gap;
  }
  CHECK(prev < 0.05 * std::pow(kPi, 3) / 6);
}

TEST_CASE("normalization") {
  const auto n = normalization(loop_w1(), 50);
  CHECK(n.integral_stated == 0.0);
  CHECK(n.integral_measured == doctest::Approx(n.integral_oracle).epsilon(1e-6));
  CHECK(n.samples.size() == 9);
  const auto p = random_path_spec(3, 1);
  CHECK(std::abs(normalization(LoopSpec{p, p, {0.5, 1.0, 1.0}}, 50).integral_measured) <= 1e-8);
  CHECK_THROWS(normalization(loop_w1(), 0));
}

TEST_CASE("weinstein numeric") {
  const auto m = single_ball();
  const auto w = weinstein_numeric(loop_w1(), m, 1, Branch::Stated);
  const double expect = (std::pow(kPi, 3) / 6) / (50 - kPi * kPi / 2);
  CHECK(w.value == doctest::Approx(expect).epsilon(1e-9));
  CHECK(w.value == doctest::Approx(0.1146719205).epsilon(1e-9));
  CHECK(w.value * w.denominator == doctest::Approx(w.ball_integral).epsilon(1e-12));
  CHECK(w.ball_integral == doctest::Approx(w.closed_form).epsilon(1e-6));

  const auto meas = weinstein_numeric(loop_w1(), m, 1, Branch::Measured);
  CHECK(meas.c_integral != 0.0);
  CHECK(meas.value * meas.denominator ==
        doctest::Approx(meas.ball_integral - meas.ball_volume * meas.c_integral).epsilon(1e-12));

  const auto p = random_path_spec(4, 0);
  CHECK(std::abs(weinstein_numeric(LoopSpec{p, p, {1.0, 1.5, 1.0}}, m, 1, Branch::Stated).value) <= 1e-8);
}

TEST_CASE("closed form on random balls") {
  for (int i = 0; i < 10; ++i) {
    const auto spec = random_path_spec(5, i);
    const double r = 0.3 + 0.15 * i;
    const double got = quad_spacetime(HamiltonianField::path(spec), Region::ball(r), 0.0, 1.0);
    const double shift = 1.0 + spec.alpha.eval(Rational(0)) - spec.alpha.eval(Rational(1));
    const double expect = std::pow(kPi, 3) * std::pow(r, 6) / 6 * shift;
    CHECK(std::abs(got - expect) <= 1e-6 * std::max(std::abs(expect), 1.0));
  }
}

TEST_CASE("calabi on the blow-up and the Hofer bound") {
  const auto c = calabi_blowup(loop_w1(), 1.0);
  CHECK(c.closed_form == doctest::Approx(-kPi * kPi * kPi / 12).epsilon(1e-15));
  CHECK(std::abs(c.closed_form - (-2.583856)) < 1e-6);
  CHECK(std::abs(c.stated_branch - c.closed_form) <= 1e-6 * std::abs(c.closed_form));
  CHECK(c.stated_branch == doctest::Approx(-0.5 * c.ball_integral));
  const auto half = calabi_blowup(loop_w1(), 0.5);
  CHECK(half.closed_form * 64 == doctest::Approx(c.closed_form));
  CHECK(half.stated_branch * 64 == doctest::Approx(c.stated_branch).epsilon(1e-6));
  const auto p = random_path_spec(6, 0);
  CHECK(std::abs(calabi_blowup(LoopSpec{p, p, {1.0, 1.5, 1.0}}, 1.0).stated_branch) <= 1e-8);
  CHECK_THROWS(calabi_blowup(loop_w1(), 1.2));

  CHECK(hofer_lower_bound(1, 1.0) == doctest::Approx(2.583856).epsilon(1e-6));
  CHECK(hofer_lower_bound(1, 0.5) == doctest::Approx(std::pow(kPi, 3) / (12 * 64)));
  CHECK(hofer_lower_bound(-2, 1.0) == doctest::Approx(std::pow(kPi, 3) / 6));
  CHECK_THROWS_AS(hofer_lower_bound(0, 1.0), DegenerateLoopError);
}

TEST_CASE("blow-up model geometry") {
  const auto m = single_ball();
  CHECK(m.volume() == 50);
  CHECK(m.darboux_radius() == doctest::Approx(std::sqrt(10 / kPi)));
  CHECK(m.geometry_problems().empty());
  auto overlap = five_balls();
  overlap.balls[1].center = Vector4(0.5, 0, 0, 0);
  CHECK_THROWS_AS(overlap.check_geometry(), GeometryError);
  auto outside = single_ball();
  outside.balls[0].center = Vector4(0.5, 0, 0, 0);
  CHECK_FALSE(outside.geometry_problems().empty());
}

TEST_CASE("rank certificates") {
  const auto r1 = rank_certificate(single_ball(), {loop_w1()});
  CHECK(r1.bundle.rank_at_least_k);
  CHECK(r1.bundle.infinite_order.size() == 1);
  CHECK(r1.bundle.pairs.empty());

  const auto m = five_balls();
  std::vector<LoopSpec> loops(5, loop_w1({0.2, 0.3, 0.05}));
  loops[2].path_a.alpha = TrigPoly(0, -2, {{2, 0, 2}});
  const auto r5 = rank_certificate(m, loops);
  CHECK(r5.bundle.rank_at_least_k);
  CHECK(r5.bundle.infinite_order.size() == 5);
  CHECK(r5.bundle.pairs.size() == 10);
  for (const auto& c : r5.bundle.pairs) CHECK(replay(c).ok);
  CHECK(r5.windings[2] == 2);
  CHECK(to_json(r5).at("pair_distinct").size() == 10);

  auto overlap = m;
  overlap.balls[1].center = Vector4(0.4, 0, 0, 0);
  CHECK_THROWS_AS(rank_certificate(overlap, loops), GeometryError);
  auto flat = loops;
  flat[0] = LoopSpec{PathSpec{}, PathSpec{}, {0.2, 0.3, 0.05}};
  CHECK_THROWS_AS(rank_certificate(m, flat), DegenerateLoopError);
  CHECK_THROWS_AS(rank_certificate(single_ball(), {loop_w1({0.9, 1.4, 1.0})}), GeometryError);
}

TEST_CASE("symbolic bundle with a degenerate ball") {
  auto m = five_balls();
  m.balls.resize(2);
  const auto b = weinstein_symbolic(m, {Integer(1), Integer(0)});
  CHECK(b.degenerate == std::vector<std::size_t>{2});
  CHECK_FALSE(b.rank_at_least_k);
  CHECK(b.values[1].is_zero());
}
