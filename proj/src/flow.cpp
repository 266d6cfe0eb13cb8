#include "hamloop/flow.hpp"

#include "hamloop/parallel.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <random>

namespace hamloop {

namespace {

struct Segment {
  double a;
  double b;
  std::size_t piece;
  int steps;
};

std::vector<Segment> segments(const HamiltonianField& field, double t0, double t1, int steps) {
  const double lo = std::min(t0, t1);
  const double hi = std::max(t0, t1);
  field.piece_index(lo);  // window check
  field.piece_index(hi);
  std::vector<double> cuts{lo};
  for (const auto& p : field.pieces())
    if (p.t_end > lo && p.t_end < hi) cuts.push_back(p.t_end);
  cuts.push_back(hi);

  std::vector<Segment> segs;
  const double span = hi - lo;
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    const double a = cuts[i];
    const double b = cuts[i + 1];
    const int n = std::max(1, static_cast<int>(std::lround(steps * (b - a) / span)));
    segs.push_back({a, b, field.piece_index(0.5 * (a + b)), n});
  }
  if (t1 < t0) {
    std::reverse(segs.begin(), segs.end());
    for (auto& s : segs) std::swap(s.a, s.b);
  }
  return segs;
}

Vector4 rk4_run(const HamiltonianField& field, double t0, double t1, const Vector4& x0, int steps,
                std::vector<std::pair<double, Vector4>>* trajectory, int* taken) {
  Vector4 x = x0;
  if (trajectory) trajectory->emplace_back(t0, x);
  int total = 0;
  for (const auto& seg : segments(field, t0, t1, steps)) {
    const auto& piece = field.pieces()[seg.piece];
    const double h = (seg.b - seg.a) / seg.steps;
    for (int i = 0; i < seg.steps; ++i) {
      const double t = seg.a + i * h;
      const QuadCoeffs q0 = piece.coeffs(t);
      const QuadCoeffs qm = piece.coeffs(t + 0.5 * h);
      const QuadCoeffs q1 = piece.coeffs(t + h);
      const Vector4 k1 = field.vector_field_with(q0, x);
      const Vector4 k2 = field.vector_field_with(qm, x + 0.5 * h * k1);
      const Vector4 k3 = field.vector_field_with(qm, x + 0.5 * h * k2);
      const Vector4 k4 = field.vector_field_with(q1, x + h * k3);
      x += (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
      if (!x.allFinite()) throw DivergenceError("non-finite state at t = " + std::to_string(t + h));
      if (trajectory) trajectory->emplace_back(i + 1 == seg.steps ? seg.b : t + h, x);
    }
    total += seg.steps;
  }
  if (taken) *taken = total;
  return x;
}

}  // namespace

FlowResult integrate(const HamiltonianField& field, double t0, double t1, const Vector4& x0, int steps,
                     FlowOptions options) {
  if (steps < 1) throw std::invalid_argument("integrate requires steps >= 1");
  FlowResult res;
  if (t0 == t1 || x0.norm() >= field.support_radius()) {
    field.piece_index(t0);
    field.piece_index(t1);
    res.endpoint = x0;
    if (options.record_trajectory) res.trajectory = {{t0, x0}, {t1, x0}};
    return res;
  }
  res.endpoint = rk4_run(field, t0, t1, x0, steps, options.record_trajectory ? &res.trajectory : nullptr,
                         &res.steps);
  if (options.estimate_error) {
    const Vector4 coarse = rk4_run(field, t0, t1, x0, std::max(1, steps / 2), nullptr, nullptr);
    res.error_estimate = (res.endpoint - coarse).norm() / 15.0;
  }
  return res;
}

Matrix4 matrix_prediction(const LoopSpec& loop, double t) {
  if (t <= 1.0) return realify<double>(eval_matrix(loop.path_a, t));
  const Matrix2c b1 = eval_matrix(loop.path_b, 1.0);
  const Matrix2c m = eval_matrix(loop.path_b, 2.0 - t) * b1.adjoint() * eval_matrix(loop.path_a, 1.0);
  return realify<double>(m);
}

Vector4 sample_ball(double radius, std::uint64_t seed, std::uint64_t index) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(index), static_cast<std::uint32_t>(index >> 32)};
  std::mt19937_64 rng(seq);
  std::normal_distribution<double> normal;
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  Vector4 d;
  do {
    d << normal(rng), normal(rng), normal(rng), normal(rng);
  } while (d.norm() == 0.0);
  return (radius * std::pow(unif(rng), 0.25) / d.norm()) * d;
}

namespace {

template <typename Predict>
double agreement(const HamiltonianField& field, Predict&& predict, double radius, double t, int samples,
                 std::uint64_t seed, int steps_per_unit) {
  if (samples < 1) throw std::invalid_argument("matrix_agreement requires samples >= 1");
  if (t == 0.0) return 0.0;
  const Matrix4 m = predict(t);
  const int steps = std::max(1, static_cast<int>(std::lround(steps_per_unit * std::abs(t))));
  std::vector<double> dev(samples);
  parallel_for(static_cast<std::size_t>(samples), [&](std::size_t i) {
    const Vector4 x0 = sample_ball(radius, seed, i);
    dev[i] = (integrate(field, 0.0, t, x0, steps).endpoint - m * x0).norm();
  });
  return *std::max_element(dev.begin(), dev.end());
}

}  // namespace

double matrix_agreement(const HamiltonianField& field, const LoopSpec& loop, double radius, double t, int samples,
                        std::uint64_t seed, int steps_per_unit) {
  return agreement(field, [&](double s) { return matrix_prediction(loop, s); }, radius, t, samples, seed,
                   steps_per_unit);
}

double matrix_agreement(const HamiltonianField& field, const PathSpec& path, double radius, double t, int samples,
                        std::uint64_t seed, int steps_per_unit) {
  return agreement(field, [&](double s) { return realify<double>(eval_matrix(path, s)); }, radius, t, samples,
                   seed, steps_per_unit);
}

std::vector<Vector4> radial_grid(double max_radius, int shells, int directions, std::uint64_t seed) {
  std::vector<Vector4> grid;
  grid.reserve(static_cast<std::size_t>(shells) * directions);
  for (int s = 1; s <= shells; ++s) {
    const double r = max_radius * s / shells;
    for (int d = 0; d < directions; ++d) {
      const Vector4 v = sample_ball(1.0, seed, static_cast<std::uint64_t>(d));
      grid.push_back((r / v.norm()) * v);
    }
  }
  return grid;
}

LoopClosureReport loop_closure(const HamiltonianField& loop_field, const std::vector<Vector4>& grid,
                               int steps_per_unit) {
  const double span = loop_field.t_max() - loop_field.t_min();
  const int steps = std::max(1, static_cast<int>(std::lround(steps_per_unit * span)));
  std::vector<double> disp(grid.size());
  parallel_for(grid.size(), [&](std::size_t i) {
    disp[i] = (integrate(loop_field, loop_field.t_min(), loop_field.t_max(), grid[i], steps).endpoint - grid[i])
                  .norm();
  });
  const double r0 = loop_field.bump() ? loop_field.bump()->r0 : std::numeric_limits<double>::infinity();
  const double big_r = loop_field.support_radius();
  LoopClosureReport rep;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const double r = grid[i].norm();
    if (r <= r0) {
      rep.inner = std::max(rep.inner, disp[i]);
      ++rep.inner_points;
    } else if (r < big_r) {
      rep.annulus = std::max(rep.annulus, disp[i]);
      ++rep.annulus_points;
    } else {
      rep.outer = std::max(rep.outer, disp[i]);
      ++rep.outer_points;
    }
  }
  return rep;
}

double symplecticity(const HamiltonianField& field, double t0, double t1, const Vector4& x0, int steps,
                     double fd_step) {
  Matrix4 d;
  for (int k = 0; k < 4; ++k) {
    const auto at = [&](double s) {
      return integrate(field, t0, t1, x0 + s * fd_step * Vector4::Unit(k), steps).endpoint;
    };
    d.col(k) = (8.0 * (at(1) - at(-1)) - (at(2) - at(-2))) / (12.0 * fd_step);
  }
  const Matrix4 j = symplectic_j();
  return (d.transpose() * j * d - j).cwiseAbs().maxCoeff();
}

void write_trajectory_csv(std::ostream& os, const FlowResult& result) {
  os << "t,x1,y1,x2,y2\n";
  os << std::setprecision(17);
  for (const auto& [t, x] : result.trajectory)
    os << t << ',' << x[0] << ',' << x[1] << ',' << x[2] << ',' << x[3] << '\n';
}

}  // namespace hamloop
