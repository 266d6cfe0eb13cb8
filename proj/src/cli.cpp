#include "hamloop/cli.hpp"

#include "hamloop/flow.hpp"
#include "hamloop/invariants.hpp"
#include "hamloop/json_io.hpp"

#include <CLI11.hpp>

#include <boost/math/constants/constants.hpp>

#include <cmath>
#include <fstream>
#include <iostream>
#include <map>
#include <random>

namespace hamloop::cli {

namespace {

constexpr double kPi = boost::math::constants::pi<double>();

struct Tolerances {
  double rel = 1e-6;    // quadrature against closed forms
  double abs = 1e-8;    // quantities whose exact value is zero
  double field = 1e-9;  // vector field against the generator
  double dh = 1e-8;     // iota_X omega0 against finite-difference dH
  double flow = 1e-6;   // flow against the matrix prediction
  double origin = 1e-10;
};

struct Numeric {
  int steps = kDefaultStepsPerUnitTime;
  Resolution resolution;
  TimeRule time_rule;
  Tolerances tol;
  std::uint64_t seed = 1;
  int jet_order = 1;
};

struct Context {
  std::map<std::string, PathSpec> paths;
  std::map<std::string, LoopSpec> loops;
  std::optional<BlowupModel> model;
  std::vector<std::string> ball_loops;
  Numeric numeric;
};

// Collects asserted checks; anything failing makes the run fail.
class Checks {
 public:
  void add(const std::string& name, bool passed, double value, double tolerance) {
    list_.push_back({{"name", name}, {"passed", passed}, {"value", value}, {"tolerance", tolerance}});
    ok_ = ok_ && passed;
  }
  void add(const std::string& name, bool passed, const std::string& detail) {
    list_.push_back({{"name", name}, {"passed", passed}, {"detail", detail}});
    ok_ = ok_ && passed;
  }
  bool ok() const { return ok_; }
  const json& list() const { return list_; }

 private:
  json list_ = json::array();
  bool ok_ = true;
};

struct Report {
  json windings = json::object();
  json integrals = json::array();
  json certificates = json::array();
  json diagnostics = json::object();
  json tasks = json::array();
  Checks checks;

  void integral(const std::string& task, const std::string& label, double measured, double closed_form) {
    const double rel = closed_form == 0.0 ? std::abs(measured) : std::abs(measured - closed_form) / std::abs(closed_form);
    integrals.push_back(
        {{"task", task}, {"label", label}, {"measured", measured}, {"closed_form", closed_form}, {"rel_err", rel}});
  }
};

double rel_err(double measured, double expected) {
  return expected == 0.0 ? std::abs(measured) : std::abs(measured - expected) / std::abs(expected);
}

// ---------- config parsing ----------

template <typename F>
auto parse(const std::string& what, F&& f) {
  try {
    return f();
  } catch (const ConfigError&) {
    throw;
  } catch (const std::exception& e) {
    throw ConfigError(what + ": " + e.what());
  }
}

PathSpec resolve_path(const Context& ctx, const json& j, const std::string& where) {
  if (j.is_string()) {
    auto it = ctx.paths.find(j.get<std::string>());
    if (it == ctx.paths.end()) throw ConfigError(where + ": unknown path '" + j.get<std::string>() + "'");
    return it->second;
  }
  return parse(where, [&] {
    auto p = path_spec_from_json(j);
    p.validate();
    return p;
  });
}

const LoopSpec& loop_ref(const Context& ctx, const json& params, const std::string& where) {
  if (!params.contains("loop") || !params.at("loop").is_string()) throw ConfigError(where + ": missing \"loop\"");
  auto it = ctx.loops.find(params.at("loop").get<std::string>());
  if (it == ctx.loops.end()) throw ConfigError(where + ": unknown loop '" + params.at("loop").get<std::string>() + "'");
  return it->second;
}

double positive(const json& j, const std::string& key, double fallback, const std::string& where) {
  if (!j.contains(key)) return fallback;
  if (!j.at(key).is_number()) throw ConfigError(where + "." + key + " must be a number");
  const double v = j.at(key).get<double>();
  if (!(v > 0.0)) throw ConfigError(where + "." + key + " must be positive");
  return v;
}

int positive_int(const json& j, const std::string& key, int fallback, const std::string& where) {
  if (!j.contains(key)) return fallback;
  if (!j.at(key).is_number_integer() || j.at(key).get<long long>() < 1)
    throw ConfigError(where + "." + key + " must be a positive integer");
  return j.at(key).get<int>();
}

Numeric parse_numeric(const json& j, const Overrides& o) {
  Numeric n;
  if (!j.is_null()) {
    if (!j.is_object()) throw ConfigError("numeric must be an object");
    n.steps = positive_int(j, "steps", n.steps, "numeric");
    if (j.contains("resolution")) {
      const auto& r = j.at("resolution");
      if (r.is_number_integer()) n.resolution = Resolution{}.scaled(positive_int(j, "resolution", 1, "numeric"));
      else if (r.is_object())
        n.resolution = {positive_int(r, "radial", 24, "numeric.resolution"),
                        positive_int(r, "polar", 12, "numeric.resolution"),
                        positive_int(r, "azimuthal", 8, "numeric.resolution")};
      else throw ConfigError("numeric.resolution must be an integer or an object");
    }
    n.time_rule.panels_per_unit = positive_int(j, "time_panels", n.time_rule.panels_per_unit, "numeric");
    if (j.contains("tolerances")) {
      const auto& t = j.at("tolerances");
      if (!t.is_object()) throw ConfigError("numeric.tolerances must be an object");
      n.tol.rel = positive(t, "rel", n.tol.rel, "numeric.tolerances");
      n.tol.abs = positive(t, "abs", n.tol.abs, "numeric.tolerances");
      n.tol.field = positive(t, "field", n.tol.field, "numeric.tolerances");
      n.tol.dh = positive(t, "dh", n.tol.dh, "numeric.tolerances");
      n.tol.flow = positive(t, "flow", n.tol.flow, "numeric.tolerances");
      n.tol.origin = positive(t, "origin", n.tol.origin, "numeric.tolerances");
    }
    if (j.contains("seed")) {
      if (!j.at("seed").is_number_unsigned()) throw ConfigError("numeric.seed must be a non-negative integer");
      n.seed = j.at("seed").get<std::uint64_t>();
    }
    if (j.contains("jet_order")) {
      if (!j.at("jet_order").is_number_integer() || j.at("jet_order").get<int>() < 0)
        throw ConfigError("numeric.jet_order must be a non-negative integer");
      n.jet_order = j.at("jet_order").get<int>();
    }
  }
  if (o.steps) {
    if (*o.steps < 1) throw ConfigError("--steps must be positive");
    n.steps = *o.steps;
  }
  if (o.resolution) {
    if (*o.resolution < 1) throw ConfigError("--resolution must be positive");
    n.resolution = Resolution{}.scaled(*o.resolution);
  }
  if (o.jet_order) {
    if (*o.jet_order < 0) throw ConfigError("--jet-order must be non-negative");
    n.jet_order = *o.jet_order;
  }
  return n;
}

Vector4 parse_point(const json& j, const std::string& where) {
  if (!j.is_array() || j.size() != 4) throw ConfigError(where + " must be an array of 4 numbers");
  Vector4 v;
  for (int i = 0; i < 4; ++i) {
    if (!j[i].is_number()) throw ConfigError(where + " must be an array of 4 numbers");
    v[i] = j[i].get<double>();
  }
  return v;
}

void parse_model(Context& ctx, const json& j) {
  BlowupModel m;
  const json amb = j.value("ambient", json::object());
  const std::string kind = amb.value("kind", "CP2");
  if (kind == "CP2") {
    m.ambient.kind = Ambient::Kind::CP2;
    m.ambient.line_area = parse("model.ambient.line_area", [&] { return rational_from_json(amb.at("line_area")); });
  } else if (kind == "abstract") {
    m.ambient.kind = Ambient::Kind::Abstract;
    m.ambient.volume = parse("model.ambient.volume", [&] { return rational_from_json(amb.at("volume")); });
    for (const auto& q : amb.value("periods", json::array()))
      m.ambient.periods.push_back(parse("model.ambient.periods", [&] { return rational_from_json(q); }));
    m.ambient.chart_radius = amb.value("chart_radius", 0.0);
  } else {
    throw ConfigError("model.ambient.kind must be \"CP2\" or \"abstract\"");
  }
  if (!j.contains("balls") || !j.at("balls").is_array() || j.at("balls").empty())
    throw ConfigError("model.balls must be a non-empty array");
  for (std::size_t i = 0; i < j.at("balls").size(); ++i) {
    const auto& b = j.at("balls")[i];
    const std::string where = "model.balls[" + std::to_string(i) + "]";
    EmbeddedBall ball;
    ball.center = b.contains("center") ? parse_point(b.at("center"), where + ".center") : Vector4::Zero();
    ball.r = positive(b, "r", 0.0, where);
    ball.R0 = positive(b, "R0", 0.0, where);
    if (!(ball.r > 0.0) || !(ball.R0 > 0.0)) throw ConfigError(where + " needs positive \"r\" and \"R0\"");
    m.balls.push_back(ball);
    const std::string loop = b.value("loop", "");
    if (!loop.empty() && !ctx.loops.count(loop)) throw ConfigError(where + ": unknown loop '" + loop + "'");
    ctx.ball_loops.push_back(loop);
  }
  ctx.model = m;
}

Context parse_context(const json& config, const Overrides& o) {
  if (!config.is_object()) throw ConfigError("config must be a JSON object");
  Context ctx;
  ctx.numeric = parse_numeric(config.value("numeric", json()), o);
  const json paths = config.value("paths", json::object());
  for (const auto& [name, p] : paths.items()) ctx.paths[name] = resolve_path(ctx, p, "paths." + name);
  const json loops = config.value("loops", json::object());
  for (const auto& [name, l] : loops.items()) {
    const std::string where = "loops." + name;
    if (!l.is_object() || !l.contains("pathA") || !l.contains("pathB") || !l.contains("bump"))
      throw ConfigError(where + " needs \"pathA\", \"pathB\" and \"bump\"");
    LoopSpec loop{resolve_path(ctx, l.at("pathA"), where + ".pathA"), resolve_path(ctx, l.at("pathB"), where + ".pathB"),
                  parse(where + ".bump", [&] { return bump_from_json(l.at("bump")); })};
    ctx.loops[name] = loop;
  }
  if (config.contains("model")) parse_model(ctx, config.at("model"));
  return ctx;
}

// ---------- tasks ----------

using Handler = void (*)(const Context&, const json&, Report&);

struct TaskDef {
  const char* name;
  const char* description;
  Handler handler;
  bool needs_loop;
  bool needs_model;
};

json windings_entry(const Integer& w) { return w.convert_to<long long>(); }

void task_lemma21(const Context& ctx, const json& p, Report& rep) {
  const int samples = positive_int(p, "samples", 100, "verify-lemma21");
  const std::uint64_t seed = p.value("seed", ctx.numeric.seed);
  std::optional<PathSpec> fixed;
  if (p.contains("path")) fixed = resolve_path(ctx, p.at("path"), "verify-lemma21.path");
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  double field_dev = 0.0, display_dev = 0.0, printed_dev = 0.0, dh_dev = 0.0;
  const Matrix4 J = symplectic_j();
  const double h = 1e-3;
  for (int i = 0; i < samples; ++i) {
    const PathSpec spec = fixed ? *fixed : random_path_spec(seed, static_cast<std::uint64_t>(i));
    const double t = unit(rng);
    const Vector4 x = sample_ball(2.0, seed, static_cast<std::uint64_t>(i));
    const auto field = HamiltonianField::path(spec);
    const Vector4 lx = generator(spec, t) * x;
    const Vector4 X = field.vector_field(t, x);
    field_dev = std::max(field_dev, (X - lx).cwiseAbs().maxCoeff());
    display_dev = std::max(
        display_dev, (displayed_vector_field(spec, t, x, DisplayedSign::Consistent) - lx).cwiseAbs().maxCoeff());
    printed_dev = std::max(
        printed_dev, (displayed_vector_field(spec, t, x, DisplayedSign::AsPrinted) - lx).cwiseAbs().maxCoeff());
    for (int k = 0; k < 4; ++k) {
      const Vector4 v = sample_ball(1.0, seed + 1, static_cast<std::uint64_t>(4 * i + k));
      const double dh = (field.value(t, x + h * v) - field.value(t, x - h * v)) / (2.0 * h);
      dh_dev = std::max(dh_dev, std::abs(dh - X.dot(J * v)));
    }
  }
  const auto& tol = ctx.numeric.tol;
  rep.checks.add("verify-lemma21: J grad H = Lambda x", field_dev <= tol.field, field_dev, tol.field);
  rep.checks.add("verify-lemma21: displayed field = Lambda x", display_dev <= tol.field, display_dev, tol.field);
  rep.checks.add("verify-lemma21: iota_X omega0 = dH", dh_dev <= tol.dh, dh_dev, tol.dh);
  rep.diagnostics["lemma21_display_as_printed"] = {
      {"max_deviation", printed_dev},
      {"note", "sign of the y1 term in the d/dy2 component as printed; J grad H fixes it to +"}};
  rep.tasks.push_back({{"task", "verify-lemma21"},
                       {"samples", samples},
                       {"max_field_deviation", field_dev},
                       {"max_display_deviation", display_dev},
                       {"max_dh_deviation", dh_dev}});
}

void task_winding(const Context& ctx, const json& p, Report& rep) {
  const auto& loop = loop_ref(ctx, p, "winding");
  const std::string name = p.at("loop").get<std::string>();
  const auto compat = check_compatibility(loop, ctx.numeric.jet_order);
  rep.checks.add("winding[" + name + "]: compatible at t = 1", compat.compatible, compat.diagnostic);
  json entry = {{"task", "winding"}, {"loop", name}, {"jet_order", ctx.numeric.jet_order},
                {"achieved_jet_order", compat.achieved_order}, {"compatibility", compat.diagnostic}};
  try {
    const Integer w = winding(loop);
    entry["winding"] = windings_entry(w);
    rep.windings[name] = windings_entry(w);
    if (p.contains("expect")) {
      const long long want = p.at("expect").get<long long>();
      rep.checks.add("winding[" + name + "] = " + std::to_string(want), w == want, w.str());
    }
  } catch (const std::domain_error& e) {
    rep.checks.add("winding[" + name + "]: integer", false, e.what());
  }
  rep.tasks.push_back(entry);
}

void task_lemma22(const Context& ctx, const json& p, Report& rep) {
  std::vector<double> radii = p.value("radii", std::vector<double>{0.5, 1.0, 1.7});
  std::vector<PathSpec> specs;
  if (p.contains("path")) specs.push_back(resolve_path(ctx, p.at("path"), "lemma22.path"));
  else {
    const int samples = positive_int(p, "samples", 10, "lemma22");
    const std::uint64_t seed = p.value("seed", ctx.numeric.seed);
    for (int i = 0; i < samples; ++i) specs.push_back(random_path_spec(seed, static_cast<std::uint64_t>(i)));
  }
  double worst = 0.0;
  for (std::size_t i = 0; i < specs.size(); ++i) {
    const auto field = HamiltonianField::path(specs[i]);
    const double shift = 1.0 + specs[i].alpha.eval(Rational(0)) - specs[i].alpha.eval(Rational(1));
    for (double r : radii) {
      const double measured = quad_spacetime(field, Region::ball(r), 0.0, 1.0, ctx.numeric.resolution, ctx.numeric.time_rule);
      const double closed = std::pow(kPi, 3) * std::pow(r, 6) / 6.0 * shift;
      rep.integral("lemma22", "path " + std::to_string(i) + ", r = " + std::to_string(r), measured, closed);
      worst = std::max(worst, closed == 0.0 ? std::abs(measured) : rel_err(measured, closed));
    }
  }
  rep.checks.add("lemma22: ball integral = (pi^3 r^6 / 6)(1 + alpha(0) - alpha(1))", worst <= ctx.numeric.tol.rel, worst,
                 ctx.numeric.tol.rel);
  rep.tasks.push_back({{"task", "lemma22"}, {"paths", specs.size()}, {"radii", radii}, {"max_rel_err", worst}});
}

void task_prop23(const Context& ctx, const json& p, Report& rep) {
  const auto& loop = loop_ref(ctx, p, "prop23");
  const std::string name = p.at("loop").get<std::string>();
  const double r = p.value("r", loop.bump.r0);
  const Integer w = winding(loop);
  const double closed = std::pow(kPi, 3) * std::pow(r, 6) / 6.0 * w.convert_to<double>();
  const auto& n = ctx.numeric;
  const double signed_value =
      quad_spacetime(HamiltonianField::loop(loop, n.jet_order, Reversal::Signed), Region::ball(r), 0.0, 2.0,
                     n.resolution, n.time_rule);
  const double unsigned_value =
      quad_spacetime(HamiltonianField::loop(loop, n.jet_order, Reversal::Unsigned), Region::ball(r), 0.0, 2.0,
                     n.resolution, n.time_rule);
  rep.integral("prop23", name + " reversal -H(2-t)", signed_value, closed);
  const double err = rel_err(signed_value, closed);
  const double tol = closed == 0.0 ? n.tol.abs : n.tol.rel;
  rep.checks.add("prop23[" + name + "]: B_r integral = (pi^3 r^6 / 6) w", err <= tol, err, tol);
  rep.windings[name] = windings_entry(w);
  rep.diagnostics["prop23_unsigned_reversal"][name] = {{"value", unsigned_value}, {"reversal", "+H(2-t)"}};
  rep.tasks.push_back({{"task", "prop23"}, {"loop", name}, {"r", r}, {"winding", windings_entry(w)},
                       {"signed", signed_value}, {"unsigned", unsigned_value}, {"closed_form", closed}});
}

void task_calabi_r4(const Context& ctx, const json& p, Report& rep) {
  const auto& loop = loop_ref(ctx, p, "calabi-r4");
  const std::string name = p.at("loop").get<std::string>();
  const auto c = calabi_r4(loop, ctx.numeric.resolution, ctx.numeric.time_rule);
  rep.integral("calabi-r4", name + " against M(rho) pi w", c.measured, c.oracle);
  const double err = rel_err(c.measured, c.oracle);
  const double tol = c.oracle == 0.0 ? ctx.numeric.tol.abs : ctx.numeric.tol.rel;
  rep.checks.add("calabi-r4[" + name + "]: measured = M(rho) pi w", err <= tol, err, tol);
  rep.windings[name] = windings_entry(c.winding);
  json branches = {{"measured", c.measured}, {"oracle", c.oracle}, {"reference", c.reference},
                   {"reference_note", "stated value of the full-space integral; informational"}};
  if (ctx.model) {
    const double V = to_double(ctx.model->volume());
    branches["c_integral"] = {{"stated", 0.0}, {"measured", c.measured / V}, {"oracle", c.oracle / V}};
  }
  rep.diagnostics["calabi_r4_branches"][name] = branches;
  rep.tasks.push_back({{"task", "calabi-r4"}, {"loop", name}, {"measured", c.measured}, {"oracle", c.oracle},
                       {"reference", c.reference}});
}

void task_weinstein(const Context& ctx, const json& p, Report& rep) {
  const auto& loop = loop_ref(ctx, p, "weinstein");
  const std::string name = p.at("loop").get<std::string>();
  const auto& model = *ctx.model;
  const std::size_t j = p.value("ball", std::size_t{1});
  if (j < 1 || j > model.balls.size()) throw ConfigError("weinstein.ball out of range");
  const auto stated = weinstein_numeric(loop, model, j, Branch::Stated, ctx.numeric.resolution);
  const auto measured = weinstein_numeric(loop, model, j, Branch::Measured, ctx.numeric.resolution);
  const double closed_value = stated.closed_form / stated.denominator;
  const double err = rel_err(stated.value, closed_value);
  const double tol = closed_value == 0.0 ? ctx.numeric.tol.abs : ctx.numeric.tol.rel;
  rep.integral("weinstein", name + " ball integral", stated.ball_integral, stated.closed_form);
  rep.checks.add("weinstein[" + name + "]: value = (pi^3 r^6 w / 6) / (V - sum pi^2 r^4 / 2)", err <= tol, err, tol);

  const Integer w = winding(loop);
  std::vector<Integer> ws(model.balls.size(), Integer(0));
  ws[j - 1] = w;
  json entry = {{"task", "weinstein"},
                {"loop", name},
                {"ball", j},
                {"stated", {{"value", stated.value}, {"c_integral", stated.c_integral}}},
                {"measured", {{"value", measured.value}, {"c_integral", measured.c_integral}}},
                {"closed_form", closed_value},
                {"denominator", stated.denominator}};
  const QRatFunc value = weinstein_value(j, model.balls.size(), model.volume(), Rational(w));
  entry["symbolic"] = to_json(value);
  if (w != 0) {
    const auto cert = infinite_order(value, model.lattice());
    rep.checks.add("weinstein[" + name + "]: infinite order", cert.verdict == Verdict::InfiniteOrder,
                   to_string(cert.verdict));
    rep.checks.add("weinstein[" + name + "]: certificate replays", replay(cert).ok, "replay");
    rep.certificates.push_back(to_json(cert));
  } else {
    entry["degenerate"] = "zero winding: the value vanishes and no certificate is produced";
  }
  rep.tasks.push_back(entry);
}

void task_calabi_blowup(const Context& ctx, const json& p, Report& rep) {
  const auto& loop = loop_ref(ctx, p, "calabi-blowup");
  const std::string name = p.at("loop").get<std::string>();
  const double r = p.value("r", loop.bump.r0);
  const auto c = calabi_blowup(loop, r, ctx.numeric.resolution);
  const Integer w = winding(loop);
  rep.integral("calabi-blowup", name + " stated branch", c.stated_branch, c.closed_form);
  const double err = rel_err(c.stated_branch, c.closed_form);
  const double tol = c.closed_form == 0.0 ? ctx.numeric.tol.abs : ctx.numeric.tol.rel;
  rep.checks.add("calabi-blowup[" + name + "]: stated branch = -(pi^3 r^6 / 12) w", err <= tol, err, tol);
  json entry = {{"task", "calabi-blowup"},
                {"loop", name},
                {"r", r},
                {"stated_branch", c.stated_branch},
                {"measured_branch", c.measured_branch},
                {"closed_form", c.closed_form}};
  if (w != 0) entry["hofer_lower_bound"] = hofer_lower_bound(w, r);
  else entry["hofer_lower_bound"] = nullptr;
  rep.tasks.push_back(entry);
}

void task_rank(const Context& ctx, const json&, Report& rep) {
  const auto& model = *ctx.model;
  std::vector<LoopSpec> loops;
  for (std::size_t j = 0; j < ctx.ball_loops.size(); ++j) {
    if (ctx.ball_loops[j].empty()) throw ConfigError("rank: model.balls[" + std::to_string(j) + "] has no \"loop\"");
    loops.push_back(ctx.loops.at(ctx.ball_loops[j]));
  }
  try {
    const auto r = rank_certificate(model, loops);
    bool replays = true;
    for (const auto& c : r.bundle.infinite_order) replays = replays && replay(c).ok;
    for (const auto& c : r.bundle.pairs) replays = replays && replay(c).ok;
    rep.checks.add("rank: " + r.verdict, r.bundle.rank_at_least_k, r.verdict);
    rep.checks.add("rank: all certificates replay", replays, "replay");
    for (const auto& c : r.bundle.infinite_order) rep.certificates.push_back(to_json(c));
    for (const auto& c : r.bundle.pairs) rep.certificates.push_back(to_json(c));
    json entry = {{"task", "rank"}, {"k", r.k}, {"verdict", r.verdict},
                  {"infinite_order", r.bundle.infinite_order.size()}, {"pair_distinct", r.bundle.pairs.size()}};
    json ws = json::array();
    for (const auto& w : r.windings) ws.push_back(windings_entry(w));
    entry["windings"] = ws;
    rep.tasks.push_back(entry);
  } catch (const GeometryError& e) {
    rep.checks.add("rank: geometry", false, e.what());
    rep.tasks.push_back({{"task", "rank"}, {"error", "geometry"}, {"message", e.what()}});
  } catch (const DegenerateLoopError& e) {
    rep.checks.add("rank: non-degenerate loops", false, e.what());
    rep.tasks.push_back({{"task", "rank"}, {"error", "degenerate"}, {"message", e.what()}});
  }
}

void task_lemma_help(const Context&, const json& p, Report& rep) {
  const int k = positive_int(p, "k", 2, "lemma-help");
  const std::string pairs = p.value("pairs", "all");
  if (pairs != "all" && pairs != "distinct") throw ConfigError("lemma-help.pairs must be \"all\" or \"distinct\"");
  json results = json::array();
  for (int j = 1; j <= k; ++j) {
    for (int s = 1; s <= k; ++s) {
      if (pairs == "distinct" && j == s) continue;
      const auto cert = lemma_help_check(k, j, s);
      const std::string tag = "lemma-help[k=" + std::to_string(k) + ", j=" + std::to_string(j) + ", s=" +
                              std::to_string(s) + "]";
      rep.checks.add(tag + ": UNSAT", cert.verdict == Verdict::Unsat, to_string(cert.verdict));
      rep.checks.add(tag + ": replays", replay(cert).ok, "replay");
      results.push_back({{"j", j}, {"s", s}, {"verdict", to_string(cert.verdict)}});
      rep.certificates.push_back(to_json(cert));
    }
  }
  if (p.value("control", true)) {
    const auto cert = lemma_help_check(k, 1, std::min(2, k), false);
    rep.checks.add("lemma-help[k=" + std::to_string(k) + "]: control without y_s^3 is SAT", cert.verdict == Verdict::Sat,
                   to_string(cert.verdict));
    results.push_back({{"control", true}, {"verdict", to_string(cert.verdict)}});
  }
  rep.tasks.push_back({{"task", "lemma-help"}, {"k", k}, {"pairs", pairs}, {"results", results}});
}

void task_flow(const Context& ctx, const json& p, Report& rep) {
  const auto& loop = loop_ref(ctx, p, "flow-diagnostics");
  const std::string name = p.at("loop").get<std::string>();
  const auto& n = ctx.numeric;
  const auto field = HamiltonianField::loop(loop, n.jet_order);
  const int samples = positive_int(p, "samples", 200, "flow-diagnostics");
  const double fraction = positive(p, "radius_fraction", 0.9, "flow-diagnostics");
  const std::vector<double> times = p.value("times", std::vector<double>{0.5, 1.0, 2.0});
  const std::uint64_t seed = p.value("seed", n.seed);
  json agreement = json::object();
  for (double t : times) {
    const double dev = matrix_agreement(field, loop, fraction * loop.bump.r0, t, samples, seed, n.steps);
    agreement[std::to_string(t)] = dev;
    rep.checks.add("flow[" + name + "]: matrix agreement at t = " + std::to_string(t), dev <= n.tol.flow, dev, n.tol.flow);
  }
  double origin = 0.0;
  for (double t : times)
    origin = std::max(origin, integrate(field, 0.0, t, Vector4::Zero(), static_cast<int>(std::ceil(t * n.steps)))
                                  .endpoint.norm());
  rep.checks.add("flow[" + name + "]: origin fixed", origin <= n.tol.origin, origin, n.tol.origin);

  const auto grid = radial_grid(1.2 * loop.bump.R0, positive_int(p, "shells", 12, "flow-diagnostics"),
                                positive_int(p, "directions", 8, "flow-diagnostics"), seed);
  const auto closure = loop_closure(field, grid, n.steps);
  const Vector4 probe = sample_ball(loop.bump.R0, seed, 0).normalized() * 0.5 * (loop.bump.r0 + loop.bump.R0);
  const double defect = symplecticity(field, 0.0, 2.0, probe, 2 * n.steps);
  rep.diagnostics["loop_closure"][name] = {{"inner", closure.inner},
                                           {"annulus", closure.annulus},
                                           {"outer", closure.outer},
                                           {"inner_points", closure.inner_points},
                                           {"annulus_points", closure.annulus_points},
                                           {"outer_points", closure.outer_points}};
  rep.diagnostics["symplecticity"][name] = {{"annulus_point_defect", defect}};
  rep.tasks.push_back({{"task", "flow-diagnostics"}, {"loop", name}, {"matrix_agreement", agreement},
                       {"origin_displacement", origin}});
}

const std::vector<TaskDef>& task_defs() {
  static const std::vector<TaskDef> defs{
      {"verify-lemma21", "closed-form vector field against the realified generator and dH", task_lemma21, false, false},
      {"winding", "exact winding alpha(0) - alpha(1) - beta(0) + beta(1) and compatibility", task_winding, true, false},
      {"lemma22", "ball integral of an unbumped path against its closed form", task_lemma22, false, false},
      {"prop23", "B_r0 space-time integral of a loop against (pi^3 r^6 / 6) w", task_prop23, true, false},
      {"calabi-r4", "full-support integral against the radial oracle M(rho) pi w", task_calabi_r4, true, false},
      {"weinstein", "Weinstein value on a blow-up, numeric branches and order certificate", task_weinstein, true, true},
      {"calabi-blowup", "Calabi value on the blow-up and the Hofer lower bound", task_calabi_blowup, true, false},
      {"rank", "geometry, windings and the rank >= k certificate bundle", task_rank, false, true},
      {"lemma-help", "decides the cubic identity for every (j, s) and the control", task_lemma_help, false, false},
      {"flow-diagnostics", "flow against the matrix prediction, loop closure, symplecticity", task_flow, true, false},
  };
  return defs;
}

const TaskDef& find_task(const std::string& name) {
  for (const auto& d : task_defs())
    if (name == d.name) return d;
  throw ConfigError("unknown task '" + name + "'");
}

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read " + path);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

}  // namespace

const std::vector<std::pair<std::string, std::string>>& task_catalog() {
  static const auto catalog = [] {
    std::vector<std::pair<std::string, std::string>> out;
    for (const auto& d : task_defs()) out.emplace_back(d.name, d.description);
    return out;
  }();
  return catalog;
}

json run_config(const json& config, const Overrides& overrides) {
  const Context ctx = parse_context(config, overrides);
  if (!config.contains("tasks") || !config.at("tasks").is_array())
    throw ConfigError("config needs a \"tasks\" array");
  std::vector<std::pair<const TaskDef*, json>> tasks;
  for (const auto& t : config.at("tasks")) {
    json params = t.is_string() ? json{{"task", t}} : t;
    if (!params.is_object() || !params.contains("task") || !params.at("task").is_string())
      throw ConfigError("each task needs a \"task\" name");
    const auto& def = find_task(params.at("task").get<std::string>());
    if (def.needs_loop) loop_ref(ctx, params, def.name);
    if (def.needs_model && !ctx.model) throw ConfigError(std::string(def.name) + " needs a \"model\"");
    tasks.emplace_back(&def, params);
  }

  Report rep;
  for (const auto& [def, params] : tasks) {
    try {
      def->handler(ctx, params, rep);
    } catch (const ConfigError&) {
      throw;
    } catch (const GeometryError& e) {
      rep.checks.add(std::string(def->name) + ": geometry", false, e.what());
    } catch (const std::exception& e) {
      rep.checks.add(std::string(def->name) + ": completed", false, e.what());
    }
  }

  json conventions = {{"volume", "omega^2/2"},
                      {"reversal", "-H(2-t)"},
                      {"vector_field", "iota_X omega0 = dH"},
                      {"jet_order", ctx.numeric.jet_order},
                      {"assumption", kIndependenceAssumption}};
  json numeric = {{"steps_per_unit", ctx.numeric.steps},
                  {"resolution",
                   {{"radial", ctx.numeric.resolution.radial},
                    {"polar", ctx.numeric.resolution.polar},
                    {"azimuthal", ctx.numeric.resolution.azimuthal}}},
                  {"time_panels", ctx.numeric.time_rule.panels_per_unit},
                  {"seed", ctx.numeric.seed}};
  return {{"inputs", config},
          {"numeric", numeric},
          {"conventions", conventions},
          {"windings", rep.windings},
          {"integrals", rep.integrals},
          {"certificates", rep.certificates},
          {"diagnostics", rep.diagnostics},
          {"tasks", rep.tasks},
          {"checks", rep.checks.list()},
          {"status", rep.checks.ok() ? "pass" : "fail"}};
}

int run(const std::string& config_path, const std::string& out_path, const Overrides& overrides, std::ostream& out,
        std::ostream& err) {
  json report;
  try {
    const json config = json::parse(read_file(config_path));
    report = run_config(config, overrides);
  } catch (const json::parse_error& e) {
    err << "error: " << config_path << ": " << e.what() << "\n";
    return 2;
  } catch (const ConfigError& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }
  std::ofstream file(out_path);
  if (!file) {
    err << "error: cannot write " << out_path << "\n";
    return 2;
  }
  file << report.dump(2) << "\n";
  std::size_t failed = 0;
  for (const auto& c : report.at("checks")) {
    if (c.at("passed").get<bool>()) continue;
    ++failed;
    err << "FAIL " << c.at("name").get<std::string>();
    if (c.contains("detail")) err << ": " << c.at("detail").get<std::string>();
    else err << ": " << c.at("value").get<double>() << " > " << c.at("tolerance").get<double>();
    err << "\n";
  }
  out << report.at("checks").size() - failed << "/" << report.at("checks").size() << " checks passed; report "
      << out_path << "\n";
  return failed == 0 ? 0 : 1;
}

int explain(const std::string& path, std::ostream& out, std::ostream& err) {
  json j;
  try {
    j = json::parse(read_file(path));
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }
  std::vector<json> certs;
  if (j.is_array()) certs.assign(j.begin(), j.end());
  else if (j.is_object() && j.contains("certificates") && !j.contains("verdict"))
    certs.assign(j.at("certificates").begin(), j.at("certificates").end());
  else certs.push_back(j);

  bool ok = true;
  for (std::size_t i = 0; i < certs.size(); ++i) {
    Certificate c;
    try {
      c = certificate_from_json(certs[i]);
    } catch (const std::exception& e) {
      err << "error: certificate " << i << ": " << e.what() << "\n";
      return 2;
    }
    out << "certificate " << i << ": " << c.kind << " -> " << to_string(c.verdict) << "\n";
    for (const auto& a : c.assumptions) out << "  assuming " << a << "\n";
    const auto r = replay(c);
    for (const auto& l : r.lines) out << "  " << l.text << "\n";
    ok = ok && r.ok;
  }
  out << (ok ? "all certificates replay OK" : "replay FAILED") << "\n";
  return ok ? 0 : 1;
}

int main(int argc, char** argv) {
  CLI::App app{"hamloop: checks Hamiltonian loops on R^4 and their invariants"};
  app.require_subcommand(1);

  std::string config, out_path, cert_path;
  Overrides o;
  int steps = 0, resolution = 0, jet = -1;
  auto* run_cmd = app.add_subcommand("run", "run the tasks of a config and write a JSON report");
  run_cmd->add_option("--config", config, "experiment config (JSON)")->required();
  run_cmd->add_option("--out", out_path, "report path")->required();
  run_cmd->add_option("--steps", steps, "RK4 steps per unit time");
  run_cmd->add_option("--resolution", resolution, "quadrature resolution multiplier");
  run_cmd->add_option("--jet-order", jet, "compatibility jet order at t = 1");
  auto* explain_cmd = app.add_subcommand("explain", "replay a certificate (or every certificate of a report)");
  explain_cmd->add_option("file", cert_path, "certificate or report JSON")->required();
  auto* list_cmd = app.add_subcommand("list-tasks", "list task names");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  if (*run_cmd) {
    if (run_cmd->count("--steps")) o.steps = steps;
    if (run_cmd->count("--resolution")) o.resolution = resolution;
    if (run_cmd->count("--jet-order")) o.jet_order = jet;
    return run(config, out_path, o, std::cout, std::cerr);
  }
  if (*explain_cmd) return explain(cert_path, std::cout, std::cerr);
  if (*list_cmd) {
    for (const auto& [name, desc] : task_catalog()) std::cout << name << "  " << desc << "\n";
    return 0;
  }
  return 2;
}

}  // namespace hamloop::cli
