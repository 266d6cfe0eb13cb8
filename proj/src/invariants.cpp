#include "hamloop/invariants.hpp"

#include "hamloop/json_io.hpp"

#include <boost/math/constants/constants.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <cmath>
#include <sstream>

namespace hamloop {

namespace {

constexpr double kPi = boost::math::constants::pi<double>();

// Integral of H(t, .) over the whole support (or B_radius when unbumped).
double spatial_integral(const HamiltonianField& field, double t, const Resolution& res) {
  const auto q = field.coeffs(t);
  double sum = 0.0;
  auto accumulate = [&](double a, double b) {
    for (const auto& n : shell_nodes(a, b, res)) sum += n.weight * field.value_with(q, n.x);
  };
  if (const auto& bump = field.bump()) {
    accumulate(0.0, bump->r0);
    accumulate(bump->r0, bump->R0);
  } else {
    throw std::invalid_argument("spatial integral over the support needs a bumped field");
  }
  return sum;
}

}  // namespace

// ---------- model ----------

Rational BlowupModel::volume() const {
  if (ambient.kind == Ambient::Kind::CP2) return ambient.line_area * ambient.line_area / 2;
  return ambient.volume;
}

double BlowupModel::darboux_radius() const {
  if (ambient.kind == Ambient::Kind::CP2) return std::sqrt(to_double(ambient.line_area) / kPi);
  return ambient.chart_radius;
}

double BlowupModel::blown_up_volume() const {
  double v = to_double(volume());
  for (const auto& b : balls) v -= kPi * kPi * std::pow(b.r, 4) / 2.0;
  return v;
}

PeriodLattice BlowupModel::lattice() const {
  PeriodLattice lat;
  if (ambient.kind == Ambient::Kind::CP2) lat.rational_gens = {ambient.line_area};
  else lat.rational_gens = ambient.periods;
  for (std::size_t j = 1; j <= balls.size(); ++j) lat.formal_gens.push_back(static_cast<int>(j));
  return lat;
}

std::vector<std::string> BlowupModel::geometry_problems() const {
  std::vector<std::string> out;
  auto ball = [](std::size_t i) { return "ball " + std::to_string(i + 1); };
  if (ambient.kind == Ambient::Kind::CP2 && ambient.line_area <= 0) out.push_back("line area must be positive");
  if (ambient.kind == Ambient::Kind::Abstract && ambient.volume <= 0) out.push_back("volume must be positive");
  const double R = darboux_radius();
  for (std::size_t i = 0; i < balls.size(); ++i) {
    const auto& b = balls[i];
    if (!(b.r > 0.0) || !(b.R0 > b.r)) out.push_back(ball(i) + ": need 0 < r < R0");
    if (R > 0.0 && !(b.center.norm() + b.R0 < R))
      out.push_back(ball(i) + ": not inside the Darboux ball of radius " + std::to_string(R));
    for (std::size_t l = i + 1; l < balls.size(); ++l) {
      const double gap = (b.center - balls[l].center).norm();
      if (!(gap > b.R0 + balls[l].R0))
        out.push_back(ball(i) + " and " + ball(l) + " overlap (distance " + std::to_string(gap) + " <= " +
                      std::to_string(b.R0 + balls[l].R0) + ")");
    }
  }
  if (!(blown_up_volume() > 0.0)) out.push_back("blow-up removes more volume than V");
  return out;
}

void BlowupModel::check_geometry() const {
  const auto problems = geometry_problems();
  if (problems.empty()) return;
  std::string msg = "invalid blow-up model:";
  for (const auto& p : problems) msg += "\n  " + p;
  throw GeometryError(msg);
}

// ---------- invariants ----------

Integer winding(const LoopSpec& loop) {
  // harmonics are 1-periodic, so alpha(0) - alpha(1) = -c1 exactly
  const Rational w = loop.path_b.alpha.c1() - loop.path_a.alpha.c1();
  if (!is_integer(w)) throw std::domain_error("winding " + to_string(w) + " is not an integer");
  return boost::multiprecision::numerator(w);
}

double radial_oracle(const BumpProfile& bump) {
  bump.validate();
  using boost::math::quadrature::gauss_kronrod;
  const double tail = gauss_kronrod<double, 61>::integrate(
      [&](double s) { return bump.value(s) * std::pow(s, 5); }, bump.r0, bump.R0, 20, 1e-15);
  return kPi * kPi * (std::pow(bump.r0, 6) / 6.0 + tail);
}

Normalization normalization(const LoopSpec& loop, const Rational& volume, const Resolution& res, int samples) {
  if (volume <= 0) throw std::invalid_argument("volume must be positive");
  const double V = to_double(volume);
  const auto field = HamiltonianField::loop(loop);
  Normalization n;
  n.integral_measured = quad_spacetime(field, Region::support(), 0.0, 2.0, res) / V;
  n.integral_oracle = radial_oracle(loop.bump) * kPi * to_double(Rational(winding(loop))) / V;
  n.integral_stated = 0.0;
  for (int i = 0; i < samples; ++i) {
    const double t = samples == 1 ? 0.0 : 2.0 * i / (samples - 1);
    n.samples.emplace_back(t, spatial_integral(field, t, res) / V);
  }
  return n;
}

std::string to_string(Branch b) { return b == Branch::Stated ? "stated" : "measured"; }

CalabiR4 calabi_r4(const LoopSpec& loop, const Resolution& res, TimeRule time_rule) {
  const auto field = HamiltonianField::loop(loop);
  CalabiR4 c;
  c.winding = winding(loop);
  c.measured = quad_spacetime(field, Region::support(), 0.0, 2.0, res, time_rule);
  c.oracle = radial_oracle(loop.bump) * kPi * to_double(Rational(c.winding));
  c.reference = 0.0;
  return c;
}

WeinsteinNumeric weinstein_numeric(const LoopSpec& loop, const BlowupModel& model, std::size_t j, Branch branch,
                                   const Resolution& res) {
  if (j < 1 || j > model.balls.size()) throw std::invalid_argument("ball index out of range");
  const double r = model.balls[j - 1].r;
  if (r > loop.bump.r0) throw std::invalid_argument("blow-up radius exceeds the inner radius of the loop");
  const auto field = HamiltonianField::loop(loop);
  const double w = to_double(Rational(winding(loop)));
  const double V = to_double(model.volume());

  WeinsteinNumeric out;
  out.branch = branch;
  out.ball_integral = quad_spacetime(field, Region::ball(r), 0.0, 2.0, res);
  out.closed_form = std::pow(kPi, 3) * std::pow(r, 6) / 6.0 * w;
  out.ball_volume = kPi * kPi * std::pow(r, 4) / 2.0;
  out.c_integral = branch == Branch::Stated ? 0.0 : quad_spacetime(field, Region::support(), 0.0, 2.0, res) / V;
  out.denominator = model.blown_up_volume();
  out.value = (out.ball_integral - out.ball_volume * out.c_integral) / out.denominator;
  return out;
}

CalabiBlowup calabi_blowup(const LoopSpec& loop, double r, const Resolution& res) {
  if (!(r > 0.0) || r > loop.bump.r0) throw std::invalid_argument("need 0 < r <= r0");
  const auto field = HamiltonianField::loop(loop);
  const double w = to_double(Rational(winding(loop)));
  CalabiBlowup c;
  c.ball_integral = quad_spacetime(field, Region::ball(r), 0.0, 2.0, res);
  c.closed_form = -std::pow(kPi, 3) * std::pow(r, 6) / 12.0 * w;
  c.stated_branch = 0.0 - c.ball_integral / 2.0;
  c.measured_branch = quad_spacetime(field, Region::support(), 0.0, 2.0, res) - c.ball_integral / 2.0;
  return c;
}

double hofer_lower_bound(const Integer& w, double r) {
  if (w == 0) throw DegenerateLoopError("zero winding gives no Hofer bound");
  const double aw = std::abs(to_double(Rational(w)));
  return std::pow(kPi, 3) * std::pow(r, 6) * aw / 12.0;
}

SymbolicBundle weinstein_symbolic(const BlowupModel& model, const std::vector<Integer>& windings) {
  const std::size_t k = model.balls.size();
  if (windings.size() != k) throw std::invalid_argument("one winding per ball required");
  const PeriodLattice lat = model.lattice();
  const Rational V = model.volume();
  SymbolicBundle b;
  for (std::size_t j = 1; j <= k; ++j) {
    b.values.push_back(weinstein_value(j, k, V, Rational(windings[j - 1])));
    if (windings[j - 1] == 0) b.degenerate.push_back(j);
    else b.infinite_order.push_back(infinite_order(b.values.back(), lat));
  }
  for (std::size_t j = 1; j <= k; ++j)
    for (std::size_t s = j + 1; s <= k; ++s)
      b.pairs.push_back(pair_distinct(b.values[j - 1], b.values[s - 1], lat, j, s));
  b.rank_at_least_k = b.degenerate.empty();
  for (const auto& c : b.infinite_order) b.rank_at_least_k = b.rank_at_least_k && c.verdict == Verdict::InfiniteOrder;
  for (const auto& c : b.pairs) b.rank_at_least_k = b.rank_at_least_k && c.verdict == Verdict::Unsat;
  return b;
}

RankReport rank_certificate(const BlowupModel& model, const std::vector<LoopSpec>& loops) {
  model.check_geometry();
  if (loops.size() != model.balls.size()) throw std::invalid_argument("one loop per ball required");
  RankReport r;
  r.k = model.balls.size();
  std::vector<std::string> problems;
  for (std::size_t j = 0; j < loops.size(); ++j) {
    const auto& bump = loops[j].bump;
    const auto& ball = model.balls[j];
    if (ball.r > bump.r0) problems.push_back("ball " + std::to_string(j + 1) + ": weight exceeds the loop's r0");
    if (bump.R0 > ball.R0) problems.push_back("ball " + std::to_string(j + 1) + ": loop support exceeds the ball");
  }
  if (!problems.empty()) {
    std::string msg = "loops do not fit their balls:";
    for (const auto& p : problems) msg += "\n  " + p;
    throw GeometryError(msg);
  }
  for (std::size_t j = 0; j < loops.size(); ++j) {
    const auto compat = check_compatibility(loops[j], 1);
    if (!compat.compatible) throw CompatibilityError("loop " + std::to_string(j + 1) + ": " + compat.diagnostic);
    r.windings.push_back(winding(loops[j]));
    if (r.windings.back() == 0) throw DegenerateLoopError("loop " + std::to_string(j + 1) + " has zero winding");
  }
  r.bundle = weinstein_symbolic(model, r.windings);
  std::ostringstream verdict;
  if (r.bundle.rank_at_least_k)
    verdict << "rank >= " << r.k << " (conditional on algebraic independence of the formal generators)";
  else
    verdict << "rank >= " << r.k << " not established";
  r.verdict = verdict.str();
  return r;
}

nlohmann::json to_json(const RankReport& r) {
  json ws = json::array();
  for (const auto& w : r.windings) ws.push_back(w.str());
  json values = json::array();
  for (const auto& v : r.bundle.values) values.push_back(to_json(v));
  json inf = json::array();
  for (const auto& c : r.bundle.infinite_order) inf.push_back(to_json(c));
  json pairs = json::array();
  for (const auto& c : r.bundle.pairs) pairs.push_back(to_json(c));
  return {{"k", r.k},
          {"windings", ws},
          {"weinstein_values", values},
          {"infinite_order", inf},
          {"pair_distinct", pairs},
          {"degenerate", r.bundle.degenerate},
          {"rank_at_least_k", r.bundle.rank_at_least_k},
          {"verdict", r.verdict}};
}

}  // namespace hamloop
