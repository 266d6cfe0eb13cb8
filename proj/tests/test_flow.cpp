#include <doctest.h>

#include "hamloop/flow.hpp"

#include <sstream>

using namespace hamloop;

namespace {

PathSpec rigid() {
  PathSpec p;
  p.alpha = TrigPoly::linear(0, -1);
  return p;
}

PathSpec winding_one() {
  PathSpec p;
  p.alpha = TrigPoly(0, -1, {{1, 0, 1}});
  return p;
}

LoopSpec loop_w1() { return LoopSpec{winding_one(), PathSpec{}, BumpProfile{1.0, 1.5, 1.0}}; }

}  // namespace

TEST_CASE("integrate examples") {
  const auto plain = HamiltonianField::path(rigid());
  const auto r = integrate(plain, 0.0, 0.25, Vector4(1, 0, 0, 0), 2000);
  CHECK((r.endpoint - Vector4(0, -1, 0, 0)).norm() < 1e-8);

  const auto bumped = HamiltonianField::loop(loop_w1());
  const Vector4 far(0.0, 1.5, 0.0, 0.0);
  CHECK(integrate(bumped, 0.0, 2.0, far, 100).endpoint == far);
  const Vector4 x(0.3, 0.2, 0.1, -0.4);
  CHECK(integrate(bumped, 0.7, 0.7, x, 10).endpoint == x);
  CHECK_THROWS(integrate(bumped, 0.0, 1.0, x, 0));
}

TEST_CASE("RK4 order on the linear field") {
  const auto f = HamiltonianField::path(random_path_spec(3, 1));
  const Vector4 x0(0.4, -0.3, 0.8, 0.1);
  const Vector4 ref = integrate(f, 0.0, 1.0, x0, 4000).endpoint;
  const double e1 = (integrate(f, 0.0, 1.0, x0, 40).endpoint - ref).norm();
  const double e2 = (integrate(f, 0.0, 1.0, x0, 80).endpoint - ref).norm();
  CHECK(e1 / e2 >= 12.0);
  const auto est = integrate(f, 0.0, 1.0, x0, 80, {.estimate_error = true});
  CHECK(est.error_estimate > 0.0);
  CHECK(est.error_estimate < 10 * e2);
}

TEST_CASE("radial fields conserve |z1| and |z2|") {
  const auto f = HamiltonianField::loop(loop_w1());
  for (int i = 0; i < 10; ++i) {
    const Vector4 x0 = sample_ball(1.5, 9, i);
    const auto r = integrate(f, 0.0, 2.0, x0, 4000);
    CHECK(std::abs(r.endpoint.head<2>().norm() - x0.head<2>().norm()) < 1e-7);
    CHECK(std::abs(r.endpoint.tail<2>().norm() - x0.tail<2>().norm()) < 1e-7);
  }
}

TEST_CASE("matrix agreement") {
  const auto loop = loop_w1();
  const auto f = HamiltonianField::loop(loop);
  CHECK(matrix_agreement(f, loop, 0.5, 1.0, 20, 1) <= 1e-6);
  CHECK(matrix_agreement(f, loop, 0.5, 0.0, 5, 1) == 0.0);
  const auto spec = random_path_spec(10, 2);
  CHECK(matrix_agreement(HamiltonianField::path(spec), spec, 3.0, 0.8, 10, 2) <= 1e-6);
}

TEST_CASE("loop closure report") {
  const auto loop = loop_w1();
  const auto f = HamiltonianField::loop(loop);
  const auto grid = radial_grid(1.8, 9, 6, 4);
  const auto r = loop_closure(f, grid);
  CHECK(r.inner_points > 0);
  CHECK(r.annulus_points > 0);
  CHECK(r.outer_points > 0);
  CHECK(r.outer == 0.0);
  CHECK(r.inner <= 1e-6);
  CHECK(std::isfinite(r.annulus));
}

TEST_CASE("symplecticity") {
  const auto spec = random_path_spec(12, 0);
  CHECK(symplecticity(HamiltonianField::path(spec), 0.0, 1.0, Vector4(0.3, 0.1, -0.2, 0.5), 2000) <= 1e-6);
  const auto f = HamiltonianField::loop(loop_w1());
  CHECK(symplecticity(f, 0.0, 2.0, Vector4(0, 2.0, 0, 0), 200) <= 1e-9);
  CHECK(symplecticity(f, 0.0, 2.0, Vector4(0.9, 0.3, 0.5, 0.2), 4000) <= 1e-6);
}

TEST_CASE("trajectory CSV") {
  const auto f = HamiltonianField::path(rigid());
  const auto r = integrate(f, 0.0, 0.1, Vector4(1, 0, 0, 0), 4, {.record_trajectory = true});
  std::ostringstream os;
  write_trajectory_csv(os, r);
  const std::string s = os.str();
  CHECK(s.rfind("t,x1,y1,x2,y2\n", 0) == 0);
  CHECK(std::count(s.begin(), s.end(), '\n') == 6);
}

TEST_CASE("sampling is deterministic and inside the ball") {
  for (int i = 0; i < 100; ++i) {
    const Vector4 a = sample_ball(0.7, 42, i);
    CHECK(a.norm() < 0.7);
    CHECK(a == sample_ball(0.7, 42, i));
  }
}
