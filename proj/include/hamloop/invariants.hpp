#ifndef HAMLOOP_INVARIANTS_HPP
#define HAMLOOP_INVARIANTS_HPP

#include "hamloop/ball_quad.hpp"
#include "hamloop/certificate.hpp"
#include "hamloop/hamiltonian.hpp"
#include "hamloop/period_lattice.hpp"

#include <json.hpp>

#include <stdexcept>
#include <string>
#include <vector>

namespace hamloop {

struct GeometryError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct DegenerateLoopError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct EmbeddedBall {
  Vector4 center = Vector4::Zero();
  double r = 1.0;   // blow-up weight
  double R0 = 1.5;  // outer support radius of the loop living in this ball
};

/// Closed manifold into which the balls are placed through one Darboux chart.
struct Ambient {
  enum class Kind { CP2, Abstract } kind = Kind::CP2;
  Rational line_area{10};            // pi R^2, CP2 only
  Rational volume{50};               // Abstract only; CP2 derives (pi R^2)^2 / 2
  std::vector<Rational> periods;     // Abstract only
  double chart_radius = 0.0;         // Abstract only; 0 means unbounded
};

struct BlowupModel {
  Ambient ambient;
  std::vector<EmbeddedBall> balls;

  Rational volume() const;
  double darboux_radius() const;  // R with pi R^2 = line area, or the abstract chart radius
  /// V - sum pi^2 r_j^4 / 2.
  double blown_up_volume() const;
  PeriodLattice lattice() const;  // rational periods plus the formal x_1..x_k
  /// Problems with the placement; empty when the model is valid.
  std::vector<std::string> geometry_problems() const;
  /// Throws GeometryError listing every problem.
  void check_geometry() const;
};

/// alpha(0) - alpha(1) - beta(0) + beta(1), exactly. Throws std::domain_error when not an integer.
Integer winding(const LoopSpec& loop);

/// M(rho) = integral of rho(|x|) |z1|^2 dV = pi^2 int_0^R0 rho(s) s^5 ds (adaptive Gauss-Kronrod).
double radial_oracle(const BumpProfile& bump);

struct Normalization {
  double integral_measured = 0.0;  // int_0^2 c_t dt from the support quadrature
  double integral_oracle = 0.0;    // M(rho) pi w / V
  double integral_stated = 0.0;     // the value the closure argument states
  std::vector<std::pair<double, double>> samples;  // (t, c_t)
};

/// c_t = (1/V) int H_t dV over the support and its time integral.
Normalization normalization(const LoopSpec& loop, const Rational& volume, const Resolution& res = {},
                            int samples = 9);

enum class Branch { Stated, Measured };
std::string to_string(Branch b);

struct CalabiR4 {
  double measured = 0.0;
  double oracle = 0.0;     // M(rho) pi w
  double reference = 0.0;  // the stated value of the full-space integral
  Integer winding{0};
};

CalabiR4 calabi_r4(const LoopSpec& loop, const Resolution& res = {}, TimeRule time_rule = {});

struct WeinsteinNumeric {
  double ball_integral = 0.0;   // int_0^2 int_{B_r} H dV dt
  double closed_form = 0.0;     // (pi^3 r^6 / 6) w
  double ball_volume = 0.0;     // pi^2 r^4 / 2
  double c_integral = 0.0;      // int_0^2 c_t dt used by this branch
  double denominator = 0.0;     // V - sum pi^2 r_i^4 / 2
  double value = 0.0;
  Branch branch = Branch::Stated;
};

/// [int int_{B_{r_j}} H - Vol(B_{r_j}) int c_t] / (V - sum pi^2 r_i^4 / 2).
/// The loop sits at the origin of its own chart; r_j must not exceed its inner radius.
WeinsteinNumeric weinstein_numeric(const LoopSpec& loop, const BlowupModel& model, std::size_t j, Branch branch,
                                   const Resolution& res = {});

struct CalabiBlowup {
  double ball_integral = 0.0;  // int_0^2 int_{B_r} H dV dt by quadrature
  double closed_form = 0.0;    // -(pi^3 r^6 / 12) w
  double stated_branch = 0.0;   // 0 - ball_integral / 2
  double measured_branch = 0.0;  // calabi_r4 measured - ball_integral / 2
};

CalabiBlowup calabi_blowup(const LoopSpec& loop, double r, const Resolution& res = {});

/// pi^3 r^6 |w| / 12. Throws DegenerateLoopError for w = 0.
double hofer_lower_bound(const Integer& w, double r);

struct SymbolicBundle {
  std::vector<QRatFunc> values;
  std::vector<Certificate> infinite_order;  // one per ball with non-zero winding
  std::vector<Certificate> pairs;           // one per unordered pair (j < s)
  std::vector<std::size_t> degenerate;      // 1-based balls with zero winding
  bool rank_at_least_k = false;
};

SymbolicBundle weinstein_symbolic(const BlowupModel& model, const std::vector<Integer>& windings);

struct RankReport {
  std::size_t k = 0;
  std::vector<Integer> windings;
  SymbolicBundle bundle;
  std::string verdict;
};

/// Geometry check, per-ball winding and the certificate bundle. Throws GeometryError
/// or DegenerateLoopError.
RankReport rank_certificate(const BlowupModel& model, const std::vector<LoopSpec>& loops);

nlohmann::json to_json(const RankReport& r);

}  // namespace hamloop

#endif  // HAMLOOP_INVARIANTS_HPP
