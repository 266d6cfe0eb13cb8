#ifndef HAMLOOP_FLOW_HPP
#define HAMLOOP_FLOW_HPP

#include "hamloop/hamiltonian.hpp"

#include <cstdint>
#include <ostream>
#include <stdexcept>
#include <utility>
#include <vector>

namespace hamloop {

inline constexpr int kDefaultStepsPerUnitTime = 2000;

struct FlowResult {
  Vector4 endpoint = Vector4::Zero();
  std::vector<std::pair<double, Vector4>> trajectory;  // empty unless requested
  int steps = 0;
  /// Richardson estimate |x_h - x_{2h}| / 15, or 0 when not requested.
  double error_estimate = 0.0;
};

struct DivergenceError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct FlowOptions {
  bool record_trajectory = false;
  bool estimate_error = false;
};

/// Classical RK4 for x' = X(t, x) from t0 to t1 (either direction) with `steps` steps in total.
/// Interior time breakpoints of the field are hit exactly; steps are shared in proportion to length.
FlowResult integrate(const HamiltonianField& field, double t0, double t1, const Vector4& x0, int steps,
                     FlowOptions options = {});

/// Predicted linear map on the inner ball: A_t on [0, 1], B_{2-t} B_1^{-1} A_1 on [1, 2].
Matrix4 matrix_prediction(const LoopSpec& loop, double t);

/// Max over `samples` seeded points with |x0| < radius of |flow(0 -> t) x0 - prediction(t) x0|.
double matrix_agreement(const HamiltonianField& field, const LoopSpec& loop, double radius, double t, int samples,
                        std::uint64_t seed, int steps_per_unit = kDefaultStepsPerUnitTime);

/// Same for a single path field on [0, 1] (prediction A_t).
double matrix_agreement(const HamiltonianField& field, const PathSpec& path, double radius, double t, int samples,
                        std::uint64_t seed, int steps_per_unit = kDefaultStepsPerUnitTime);

struct LoopClosureReport {
  double inner = 0.0;    // |x| <= r0
  double annulus = 0.0;  // r0 < |x| < R0
  double outer = 0.0;    // |x| >= R0
  int inner_points = 0;
  int annulus_points = 0;
  int outer_points = 0;
};

/// Deterministic grid: `shells` radii in (0, max_radius] times `directions` seeded unit vectors.
std::vector<Vector4> radial_grid(double max_radius, int shells, int directions, std::uint64_t seed);

/// Displacement |psi_2(x) - x| of the time-[0, 2] flow, split by region. Diagnostic only.
LoopClosureReport loop_closure(const HamiltonianField& loop_field, const std::vector<Vector4>& grid,
                               int steps_per_unit = kDefaultStepsPerUnitTime);

/// |D^T J D - J|_inf for the fourth-order finite-difference Jacobian D of the t0 -> t1 flow map at x0.
double symplecticity(const HamiltonianField& field, double t0, double t1, const Vector4& x0, int steps,
                     double fd_step = 1e-5);

/// CSV with header t,x1,y1,x2,y2.
void write_trajectory_csv(std::ostream& os, const FlowResult& result);

/// Uniform sample in the open 4-ball of the given radius.
Vector4 sample_ball(double radius, std::uint64_t seed, std::uint64_t index);

}  // namespace hamloop

#endif  // HAMLOOP_FLOW_HPP
