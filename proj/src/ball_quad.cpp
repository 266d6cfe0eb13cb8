#include "hamloop/ball_quad.hpp"

#include "hamloop/parallel.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <numbers>
#include <stdexcept>

namespace hamloop {

namespace {

constexpr double kPi = std::numbers::pi;

// Gamma((e+1)/2) / sqrt(pi) for even e: (e-1)!! / 2^(e/2).
Rational half_gamma_ratio(int e) {
  Rational r(1);
  for (int k = e - 1; k > 0; k -= 2) r *= k;
  for (int k = 0; k < e / 2; ++k) r /= 2;
  return r;
}

// Nodes and weights on [-1, 1], cached per order.
const GaussRule& unit_gauss(int n) {
  static std::mutex mutex;
  static std::map<int, GaussRule> cache;
  std::lock_guard lock(mutex);
  auto it = cache.find(n);
  if (it != cache.end()) return it->second;
  GaussRule rule;
  rule.nodes.resize(n);
  rule.weights.resize(n);
  for (int i = 0; i < (n + 1) / 2; ++i) {
    double x = std::cos(kPi * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0, p1 = x;
      for (int k = 2; k <= n; ++k) {
        const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      const double pn = n == 0 ? 1.0 : p1;
      const double pn1 = n == 1 ? 1.0 : p0;
      dp = n * (x * pn - pn1) / (x * x - 1.0);
      const double dx = pn / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    rule.nodes[i] = -x;
    rule.nodes[n - 1 - i] = x;
    rule.weights[i] = w;
    rule.weights[n - 1 - i] = w;
  }
  return cache.emplace(n, std::move(rule)).first->second;
}

}  // namespace

double Moment::value() const { return to_double(factor) * kPi * kPi * std::pow(radius, degree); }

Moment ball_moment(const std::array<int, 4>& exponents, double radius) {
  Moment m;
  m.exponents = exponents;
  m.radius = radius;
  int total = 0;
  for (int e : exponents) {
    if (e < 0) throw std::invalid_argument("moment exponents must be non-negative");
    total += e;
  }
  m.degree = 4 + total;
  for (int e : exponents)
    if (e % 2 != 0) return m;
  Rational f(1);
  for (int e : exponents) f *= half_gamma_ratio(e);
  // Gamma(3 + total/2) = (2 + total/2)!
  for (int k = 2; k <= 2 + total / 2; ++k) f /= k;
  m.factor = f;
  return m;
}

GaussRule gauss_legendre(int n, double a, double b) {
  if (n < 1) throw std::invalid_argument("Gauss-Legendre order must be positive");
  const GaussRule& u = unit_gauss(n);
  GaussRule r;
  const double half = 0.5 * (b - a);
  const double mid = 0.5 * (a + b);
  for (int i = 0; i < n; ++i) {
    r.nodes.push_back(mid + half * u.nodes[i]);
    r.weights.push_back(half * u.weights[i]);
  }
  return r;
}

std::vector<QuadNode> shell_nodes(double r_in, double r_out, const Resolution& res) {
  if (res.radial < 1 || res.polar < 1 || res.azimuthal < 1)
    throw std::invalid_argument("quadrature resolution must be positive");
  std::vector<QuadNode> nodes;
  if (!(r_out > r_in)) return nodes;
  const GaussRule radial = gauss_legendre(res.radial, r_in, r_out);
  const GaussRule polar = gauss_legendre(res.polar, 0.0, kPi / 2);
  const int na = res.azimuthal;
  const double dxi = 2.0 * kPi / na;
  nodes.reserve(static_cast<std::size_t>(res.radial) * res.polar * na * na);
  for (int i = 0; i < res.radial; ++i) {
    const double s = radial.nodes[i];
    for (int j = 0; j < res.polar; ++j) {
      const double eta = polar.nodes[j];
      const double w = radial.weights[i] * polar.weights[j] * s * s * s * std::cos(eta) * std::sin(eta) * dxi * dxi;
      const double m1 = s * std::cos(eta);
      const double m2 = s * std::sin(eta);
      for (int a = 0; a < na; ++a) {
        const double xi1 = (a + 0.5) * dxi;
        for (int b = 0; b < na; ++b) {
          const double xi2 = (b + 0.25) * dxi;
          Vector4 x;
          x << m1 * std::cos(xi1), m1 * std::sin(xi1), m2 * std::cos(xi2), m2 * std::sin(xi2);
          nodes.push_back({x, w});
        }
      }
    }
  }
  return nodes;
}

double quad_shell(const Integrand& f, double r_in, double r_out, const Resolution& res) {
  double acc = 0.0;
  for (const auto& n : shell_nodes(r_in, r_out, res)) acc += n.weight * f(n.x);
  return acc;
}

double quad_ball(const Integrand& f, double radius, const Resolution& res) {
  return quad_shell(f, 0.0, radius, res);
}

double simpson(const std::function<double(double)>& f, double a, double b, int panels) {
  if (panels < 2 || panels % 2 != 0) throw std::invalid_argument("Simpson needs an even number of panels");
  const double h = (b - a) / panels;
  double acc = f(a) + f(b);
  for (int i = 1; i < panels; ++i) acc += (i % 2 == 1 ? 4.0 : 2.0) * f(a + i * h);
  return acc * h / 3.0;
}

double quad_spacetime(const HamiltonianField& field, const Region& region, double t0, double t1,
                      const Resolution& res, TimeRule time_rule) {
  std::vector<QuadNode> nodes;
  switch (region.kind) {
    case Region::Kind::Ball:
    case Region::Kind::Annulus: {
      if (region.r_out <= 0.0) return 0.0;
      // Split at the cutoff's inner radius so each radial rule sees a smooth integrand.
      std::vector<double> cuts{region.r_in};
      if (field.bump()) {
        for (double c : {field.bump()->r0, field.bump()->R0})
          if (c > region.r_in && c < region.r_out) cuts.push_back(c);
      }
      cuts.push_back(region.r_out);
      for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
        auto part = shell_nodes(cuts[i], cuts[i + 1], res);
        nodes.insert(nodes.end(), part.begin(), part.end());
      }
      break;
    }
    case Region::Kind::Support: {
      if (!field.bump()) throw std::invalid_argument("support region requires a bumped field");
      nodes = shell_nodes(0.0, field.bump()->r0, res);
      auto outer = shell_nodes(field.bump()->r0, field.bump()->R0, res);
      nodes.insert(nodes.end(), outer.begin(), outer.end());
      break;
    }
  }
  if (t0 == t1 || nodes.empty()) return 0.0;

  const double lo = std::min(t0, t1);
  const double hi = std::max(t0, t1);
  std::vector<double> cuts{lo};
  for (const auto& p : field.pieces())
    if (p.t_end > lo && p.t_end < hi) cuts.push_back(p.t_end);
  cuts.push_back(hi);

  // (time, Simpson weight, piece) triples; a breakpoint appears once per adjacent segment.
  struct TimeNode {
    double t;
    double w;
    std::size_t piece;
  };
  std::vector<TimeNode> tnodes;
  for (std::size_t s = 0; s + 1 < cuts.size(); ++s) {
    const double a = cuts[s], b = cuts[s + 1];
    int panels = static_cast<int>(std::ceil(time_rule.panels_per_unit * (b - a)));
    panels = std::max(2, panels + (panels % 2));
    const double h = (b - a) / panels;
    const std::size_t piece = field.piece_index(0.5 * (a + b));
    for (int i = 0; i <= panels; ++i) {
      const double w = (i == 0 || i == panels) ? 1.0 : (i % 2 == 1 ? 4.0 : 2.0);
      tnodes.push_back({a + i * h, w * h / 3.0, piece});
    }
  }

  std::vector<double> slice(tnodes.size());
  parallel_for(tnodes.size(), [&](std::size_t k) {
    const QuadCoeffs q = field.pieces()[tnodes[k].piece].coeffs(tnodes[k].t);
    double acc = 0.0;
    for (const auto& n : nodes) acc += n.weight * field.value_with(q, n.x);
    slice[k] = acc;
  });
  double total = 0.0;
  for (std::size_t k = 0; k < tnodes.size(); ++k) total += tnodes[k].w * slice[k];
  return t1 >= t0 ? total : -total;
}

}  // namespace hamloop
