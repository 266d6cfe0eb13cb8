#include "hamloop/period_lattice.hpp"

#include "hamloop/json_io.hpp"

#include <algorithm>
#include <stdexcept>

namespace hamloop {

namespace {

using RMatrix = std::vector<std::vector<Rational>>;

// Gaussian elimination over Q. Returns a solution of a x = b with free variables at 0.
std::optional<std::vector<Rational>> solve_linear(RMatrix a, std::vector<Rational> b) {
  const std::size_t rows = a.size();
  const std::size_t cols = rows == 0 ? 0 : a[0].size();
  std::vector<std::size_t> pivot_col;
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t p = r;
    while (p < rows && a[p][c] == 0) ++p;
    if (p == rows) continue;
    std::swap(a[p], a[r]);
    std::swap(b[p], b[r]);
    const Rational inv = Rational(1) / a[r][c];
    for (auto& v : a[r]) v *= inv;
    b[r] *= inv;
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == r || a[i][c] == 0) continue;
      const Rational f = a[i][c];
      for (std::size_t k = 0; k < cols; ++k) a[i][k] -= f * a[r][k];
      b[i] -= f * b[r];
    }
    pivot_col.push_back(c);
    ++r;
  }
  for (std::size_t i = r; i < rows; ++i)
    if (b[i] != 0) return std::nullopt;
  std::vector<Rational> x(cols, Rational(0));
  for (std::size_t i = 0; i < r; ++i) x[pivot_col[i]] = b[i];
  return x;
}

std::size_t rank_of(RMatrix a) {
  const std::size_t rows = a.size();
  if (rows == 0) return 0;
  std::vector<Rational> zeros(rows, Rational(0));
  std::size_t rank = 0;
  const std::size_t cols = a[0].size();
  for (std::size_t c = 0; c < cols && rank < rows; ++c) {
    std::size_t p = rank;
    while (p < rows && a[p][c] == 0) ++p;
    if (p == rows) continue;
    std::swap(a[p], a[rank]);
    for (std::size_t i = rank + 1; i < rows; ++i) {
      if (a[i][c] == 0) continue;
      const Rational f = a[i][c] / a[rank][c];
      for (std::size_t k = c; k < cols; ++k) a[i][k] -= f * a[rank][k];
    }
    ++rank;
  }
  return rank;
}

// Coefficient of unknown u (degree-1 term) and constant term of a linear equation.
Rational linear_coeff(const QPoly& p, std::size_t u) {
  Exponents e(p.nvars(), 0);
  e[u] = 1;
  return p.coefficient(e);
}

void require_linear(const std::vector<CertEquation>& eqs) {
  for (const auto& e : eqs)
    if (e.poly.total_degree() > 1) throw std::logic_error("linear certificate over a non-linear system");
}

// Rows = equations, columns = unknowns.
RMatrix coefficient_matrix(const std::vector<CertEquation>& eqs, std::size_t n) {
  RMatrix a(eqs.size(), std::vector<Rational>(n));
  for (std::size_t i = 0; i < eqs.size(); ++i)
    for (std::size_t u = 0; u < n; ++u) a[i][u] = linear_coeff(eqs[i].poly, u);
  return a;
}

// lambda with sum lambda_i eq_i = target, where target is a linear form + constant
// given as (coefficients per unknown, constant).
std::optional<std::vector<Rational>> find_multipliers(const std::vector<CertEquation>& eqs, std::size_t n,
                                                      const std::vector<Rational>& target_coeffs,
                                                      const Rational& target_const) {
  RMatrix m(n + 1, std::vector<Rational>(eqs.size()));
  for (std::size_t i = 0; i < eqs.size(); ++i) {
    for (std::size_t u = 0; u < n; ++u) m[u][i] = linear_coeff(eqs[i].poly, u);
    m[n][i] = eqs[i].poly.constant_term();
  }
  std::vector<Rational> rhs = target_coeffs;
  rhs.push_back(target_const);
  return solve_linear(std::move(m), std::move(rhs));
}

CertStep combine_step(const std::vector<CertEquation>& eqs, const std::vector<Rational>& lambda, std::size_t n) {
  CertStep step;
  step.kind = CertStep::Kind::Combine;
  step.result = QPoly(n);
  for (std::size_t i = 0; i < lambda.size(); ++i) {
    if (lambda[i] == 0) continue;
    step.multipliers.emplace_back(i, lambda[i]);
    step.result += lambda[i] * eqs[i].poly;
  }
  return step;
}

std::string equation_text(const CertEquation& e, const std::vector<std::string>& unknowns) {
  return "[" + e.monomial + "] " + e.poly.to_string(unknowns) + " = 0";
}

std::string combine_text(const CertStep& step, const std::vector<CertEquation>& eqs,
                         const std::vector<std::string>& unknowns) {
  std::string out = "combine ";
  bool first = true;
  for (const auto& [i, l] : step.multipliers) {
    if (!first) out += " + ";
    first = false;
    out += "(" + to_string(l) + ")*[" + eqs[i].monomial + "]";
  }
  return out + " => " + step.result.to_string(unknowns) + " = 0";
}

Rational lcm_int(const Integer& a, const Integer& b) {
  if (a == 0 || b == 0) return Rational(0);
  return Rational(boost::multiprecision::lcm(a, b));
}

// ---------- system builders ----------

struct LinearProblem {
  std::vector<QRatFunc> values;
  std::vector<std::optional<Rational>> fixed;  // per value: fixed multiplier or formal
  std::vector<std::string> names;              // per value: multiplier name
  PeriodLattice lattice;
};

json problem_json(const std::string& kind, const LinearProblem& p) {
  json vals = json::array();
  for (const auto& v : p.values) vals.push_back(to_json(v));
  json fixed = json::array();
  for (const auto& f : p.fixed) fixed.push_back(f ? json(to_string(*f)) : json(nullptr));
  return {{"kind", kind}, {"values", vals}, {"multipliers", fixed}, {"multiplier_names", p.names},
          {"lattice", to_json(p.lattice)}};
}

detail::SystemSpec build_linear(const LinearProblem& p) {
  if (p.values.empty()) throw std::invalid_argument("no values to test");
  const std::size_t k = p.values.front().nvars();
  for (const auto& v : p.values)
    if (v.nvars() != k) throw std::invalid_argument("values over different variable sets");
  p.lattice.validate(k);

  detail::SystemSpec spec;
  std::vector<std::size_t> multiplier_slot(p.values.size(), 0);
  for (std::size_t i = 0; i < p.values.size(); ++i) {
    if (!p.fixed[i]) {
      multiplier_slot[i] = spec.unknowns.size();
      spec.targets.push_back(spec.unknowns.size());
      spec.unknowns.push_back(p.names[i]);
    }
  }
  if (!p.lattice.rational_gens.empty()) {
    spec.rational_slot = spec.unknowns.size();
    spec.unknowns.push_back("s");
    spec.rational_generator = p.lattice.rational_generator();
  }
  std::vector<std::size_t> formal_slot;
  for (int g : p.lattice.formal_gens) {
    formal_slot.push_back(spec.unknowns.size());
    spec.integer_slots.push_back(spec.unknowns.size());
    spec.unknowns.push_back("n_x" + std::to_string(g));
  }

  const std::size_t n = spec.unknowns.size();
  const std::size_t total = k + n;
  auto unknown = [&](std::size_t u) { return QPoly::variable(total, k + u); };

  // Common denominator: shared when all values agree on it, else the product.
  bool shared = true;
  for (const auto& v : p.values) shared = shared && v.den == p.values.front().den;
  QPoly common = QPoly::constant(k, Rational(1));
  if (shared) common = p.values.front().den;
  else
    for (const auto& v : p.values) common = common * v.den;

  QPoly identity(total);
  for (std::size_t i = 0; i < p.values.size(); ++i) {
    QPoly term = p.values[i].num;
    if (!shared)
      for (std::size_t l = 0; l < p.values.size(); ++l)
        if (l != i) term = term * p.values[l].den;
    QPoly lifted = term.embed(total, 0);
    if (p.fixed[i]) identity += *p.fixed[i] * lifted;
    else identity += unknown(multiplier_slot[i]) * lifted;
  }
  QPoly lattice_element(total);
  if (spec.rational_slot) lattice_element += unknown(*spec.rational_slot);
  for (std::size_t g = 0; g < p.lattice.formal_gens.size(); ++g)
    lattice_element += unknown(formal_slot[g]) *
                       QPoly::variable(total, static_cast<std::size_t>(p.lattice.formal_gens[g] - 1));
  identity -= lattice_element * common.embed(total, 0);

  const auto xnames = indexed_names("x", k);
  for (auto& [mono, coeff] : identity.collect_leading(k))
    spec.equations.push_back({monomial_string(mono, xnames), coeff});
  return spec;
}

LinearProblem linear_from_json(const json& j) {
  LinearProblem p;
  for (const auto& v : j.at("values")) p.values.push_back(qratfunc_from_json(v));
  for (const auto& f : j.at("multipliers"))
    p.fixed.push_back(f.is_null() ? std::nullopt : std::optional<Rational>(rational_from_json(f)));
  p.names = j.at("multiplier_names").get<std::vector<std::string>>();
  p.lattice = lattice_from_json(j.at("lattice"));
  if (p.fixed.size() != p.values.size() || p.names.size() != p.values.size())
    throw std::invalid_argument("malformed linear problem");
  return p;
}

detail::SystemSpec build_lemma(std::size_t k, std::size_t j, std::size_t s, bool include_lone_cube) {
  if (k < 1 || j < 1 || j > k || s < 1 || s > k) throw std::invalid_argument("lemma indices out of range");
  detail::SystemSpec spec;
  spec.unknowns = {"a", "b", "c"};
  for (const auto& q : indexed_names("q", k)) spec.unknowns.push_back(q);
  const std::size_t n = spec.unknowns.size();
  const std::size_t total = k + n;
  auto y = [&](std::size_t i) { return QPoly::variable(total, i - 1); };
  auto u = [&](std::size_t i) { return QPoly::variable(total, k + i); };

  QPoly left = u(0);  // a + sum q_i y_i
  QPoly right = u(1);  // b - sum y_i^2
  for (std::size_t i = 1; i <= k; ++i) {
    left += u(2 + i) * y(i);
    right -= y(i) * y(i);
  }
  QPoly identity = left * right + u(2) * y(j) * y(j) * y(j);
  if (include_lone_cube) identity += y(s) * y(s) * y(s);

  const auto ynames = indexed_names("y", k);
  for (auto& [mono, coeff] : identity.collect_leading(k))
    spec.equations.push_back({monomial_string(mono, ynames), coeff});
  return spec;
}

// ---------- certificate helpers ----------

Certificate start(const std::string& kind, json problem, const detail::SystemSpec& spec) {
  Certificate c;
  c.kind = kind;
  c.assumptions = {kIndependenceAssumption};
  c.problem = std::move(problem);
  c.unknowns = spec.unknowns;
  c.equations = spec.equations;
  for (const auto& e : spec.equations) c.trace.push_back(equation_text(e, spec.unknowns));
  return c;
}

bool integral_point(const detail::SystemSpec& spec, const std::vector<Rational>& x, std::string* why) {
  for (std::size_t slot : spec.integer_slots) {
    if (!is_integer(x[slot])) {
      if (why) *why = spec.unknowns[slot] + " = " + to_string(x[slot]) + " is not an integer";
      return false;
    }
  }
  if (spec.rational_slot && spec.rational_generator != 0) {
    const Rational ratio = x[*spec.rational_slot] / spec.rational_generator;
    if (!is_integer(ratio)) {
      if (why)
        *why = "s = " + to_string(x[*spec.rational_slot]) + " is not in " + to_string(spec.rational_generator) + "Z";
      return false;
    }
  }
  return true;
}

std::string witness_text(const std::vector<std::string>& names, const std::vector<Rational>& x) {
  std::string out = "witness:";
  for (std::size_t i = 0; i < names.size(); ++i) out += " " + names[i] + " = " + to_string(x[i]) + ";";
  return out;
}

// Tries to force every target unknown to zero; appends combine steps. Returns true on success.
bool force_targets(Certificate& cert, const detail::SystemSpec& spec) {
  const std::size_t n = spec.unknowns.size();
  std::vector<CertStep> steps;
  for (std::size_t t : spec.targets) {
    std::vector<Rational> target(n, Rational(0));
    target[t] = 1;
    auto lambda = find_multipliers(spec.equations, n, target, Rational(0));
    if (!lambda) return false;
    steps.push_back(combine_step(spec.equations, *lambda, n));
  }
  for (auto& s : steps) {
    cert.trace.push_back(combine_text(s, spec.equations, spec.unknowns));
    cert.steps.push_back(std::move(s));
  }
  return true;
}

// Kernel vector of the homogeneous system with some target unknown equal to 1.
std::optional<std::vector<Rational>> nonzero_target_solution(const detail::SystemSpec& spec) {
  const std::size_t n = spec.unknowns.size();
  for (std::size_t t : spec.targets) {
    RMatrix a = coefficient_matrix(spec.equations, n);
    std::vector<Rational> b(spec.equations.size());
    for (std::size_t i = 0; i < spec.equations.size(); ++i) b[i] = -spec.equations[i].poly.constant_term();
    std::vector<Rational> pin(n, Rational(0));
    pin[t] = 1;
    a.push_back(pin);
    b.push_back(Rational(1));
    if (auto x = solve_linear(a, b)) return x;
  }
  return std::nullopt;
}

// Smallest positive integer multiple of x that is integral in every constrained slot.
Rational integral_scale(const detail::SystemSpec& spec, const std::vector<Rational>& x) {
  Rational scale(1);
  auto absorb = [&](const Rational& v) {
    const Integer den = boost::multiprecision::denominator(v);
    scale = lcm_int(boost::multiprecision::numerator(scale), den);
  };
  for (std::size_t slot : spec.integer_slots) absorb(x[slot]);
  for (std::size_t t : spec.targets) absorb(x[t]);
  if (spec.rational_slot && spec.rational_generator != 0) absorb(x[*spec.rational_slot] / spec.rational_generator);
  return scale;
}

}  // namespace

// ---------- public API ----------

void PeriodLattice::validate(std::size_t nvars) const {
  for (const auto& q : rational_gens)
    if (q == 0) throw std::invalid_argument("rational lattice generators must be non-zero");
  for (int g : formal_gens)
    if (g < 1 || static_cast<std::size_t>(g) > nvars)
      throw std::invalid_argument("formal generator x" + std::to_string(g) + " out of range");
}

Rational PeriodLattice::rational_generator() const {
  // gcd(a/b, c/d) = gcd(a d, c b) / (b d)
  Rational g(0);
  for (const auto& q : rational_gens) {
    const Rational aq = q < 0 ? Rational(-q) : q;
    if (g == 0) {
      g = aq;
      continue;
    }
    using boost::multiprecision::denominator;
    using boost::multiprecision::numerator;
    const Integer num = boost::multiprecision::gcd(numerator(g) * denominator(aq), numerator(aq) * denominator(g));
    g = Rational(num, denominator(g) * denominator(aq));
  }
  return g;
}

QRatFunc weinstein_value(std::size_t j, std::size_t k, const Rational& volume, const Rational& winding) {
  if (volume <= 0) throw std::invalid_argument("volume must be positive");
  if (j < 1 || j > k) throw std::invalid_argument("ball index out of range");
  Exponents cube(k, 0);
  cube[j - 1] = 3;
  QPoly num = QPoly::monomial(cube, winding / 6);
  QPoly den = QPoly::constant(k, volume);
  for (std::size_t i = 0; i < k; ++i) {
    Exponents sq(k, 0);
    sq[i] = 2;
    den.add_term(sq, Rational(-1, 2));
  }
  return QRatFunc(std::move(num), std::move(den));
}

Certificate membership(const Rational& m, const QRatFunc& val, const PeriodLattice& lat) {
  LinearProblem p{{val}, {m}, {"m"}, lat};
  const auto spec = build_linear(p);
  Certificate cert = start("membership", problem_json("membership", p), spec);
  require_linear(spec.equations);
  const std::size_t n = spec.unknowns.size();

  std::vector<Rational> no_target(n, Rational(0));
  if (auto lambda = find_multipliers(spec.equations, n, no_target, Rational(1))) {
    CertStep step = combine_step(spec.equations, *lambda, n);
    cert.trace.push_back(combine_text(step, spec.equations, spec.unknowns) + "  (inconsistent)");
    cert.steps.push_back(std::move(step));
    cert.verdict = Verdict::NotMember;
    cert.details["rational_relaxation"] = "unsolvable";
    cert.trace.push_back("no rational coefficients exist, so " + to_string(m) + " * value is not in the lattice");
    return cert;
  }
  RMatrix a = coefficient_matrix(spec.equations, n);
  std::vector<Rational> b(spec.equations.size());
  for (std::size_t i = 0; i < b.size(); ++i) b[i] = -spec.equations[i].poly.constant_term();
  auto x = solve_linear(a, b);
  if (!x) throw std::logic_error("consistent system without solution");
  cert.details["rational_relaxation"] = "solvable";
  CertStep w;
  w.kind = CertStep::Kind::Witness;
  w.values = *x;
  cert.steps.push_back(w);
  cert.trace.push_back(witness_text(spec.unknowns, *x));
  std::string why;
  if (integral_point(spec, *x, &why)) {
    cert.verdict = Verdict::Member;
    cert.trace.push_back("witness is integral: member of the lattice");
  } else {
    cert.verdict = Verdict::NotMember;
    cert.details["unique_solution"] = rank_of(a) == n;
    cert.trace.push_back("unique rational solution; " + why);
  }
  return cert;
}

Certificate infinite_order(const QRatFunc& val, const PeriodLattice& lat) {
  LinearProblem p{{val}, {std::nullopt}, {"m"}, lat};
  const auto spec = build_linear(p);
  Certificate cert = start("infinite-order", problem_json("infinite-order", p), spec);
  require_linear(spec.equations);
  if (force_targets(cert, spec)) {
    cert.verdict = Verdict::InfiniteOrder;
    cert.trace.push_back("m = 0 is forced, so m * value is outside the lattice for every m >= 1");
    return cert;
  }
  auto x = nonzero_target_solution(spec);
  if (!x) throw std::logic_error("target neither forced nor free");
  const Rational scale = integral_scale(spec, *x);
  for (auto& v : *x) v *= scale;
  CertStep w;
  w.kind = CertStep::Kind::Witness;
  w.values = *x;
  cert.steps.push_back(w);
  cert.verdict = Verdict::FiniteOrder;
  cert.details["order"] = to_string((*x)[spec.targets.front()]);
  cert.trace.push_back(witness_text(spec.unknowns, *x));
  cert.trace.push_back("finite order " + to_string((*x)[spec.targets.front()]));
  return cert;
}

Certificate pair_distinct(const QRatFunc& val_j, const QRatFunc& val_s, const PeriodLattice& lat,
                          std::size_t label_j, std::size_t label_s) {
  if (label_j == label_s) throw std::invalid_argument("pair_distinct requires distinct indices");
  QRatFunc neg_s(Rational(-1) * val_s.num, val_s.den);
  LinearProblem p{{val_j, neg_s}, {std::nullopt, std::nullopt}, {"m", "n"}, lat};
  const auto spec = build_linear(p);
  json problem = problem_json("pair-distinct", p);
  problem["labels"] = {label_j, label_s};
  Certificate cert = start("pair-distinct", problem, spec);
  require_linear(spec.equations);
  if (force_targets(cert, spec)) {
    cert.verdict = Verdict::Unsat;
    cert.trace.push_back("m = n = 0 is forced: A(psi_" + std::to_string(label_j) + "^m) != A(psi_" +
                         std::to_string(label_s) + "^n) for all m, n >= 1");
    return cert;
  }
  auto x = nonzero_target_solution(spec);
  if (!x) throw std::logic_error("targets neither forced nor free");
  const Rational scale = integral_scale(spec, *x);
  for (auto& v : *x) v *= scale;
  CertStep w;
  w.kind = CertStep::Kind::Witness;
  w.values = *x;
  cert.steps.push_back(w);
  cert.verdict = Verdict::Sat;
  cert.details["degenerate"] = val_j.is_zero() && val_s.is_zero();
  cert.trace.push_back(witness_text(spec.unknowns, *x));
  return cert;
}

Certificate joint_independence(const std::vector<QRatFunc>& values, const PeriodLattice& lat) {
  LinearProblem p;
  p.values = values;
  p.fixed.assign(values.size(), std::nullopt);
  p.names = indexed_names("m", values.size());
  p.lattice = lat;
  const auto spec = build_linear(p);
  Certificate cert = start("joint-independence", problem_json("joint-independence", p), spec);
  require_linear(spec.equations);
  if (force_targets(cert, spec)) {
    cert.verdict = Verdict::Unsat;
    cert.trace.push_back("every m_j = 0 is forced: the values are Z-independent modulo the lattice");
    return cert;
  }
  auto x = nonzero_target_solution(spec);
  if (!x) throw std::logic_error("targets neither forced nor free");
  const Rational scale = integral_scale(spec, *x);
  for (auto& v : *x) v *= scale;
  CertStep w;
  w.kind = CertStep::Kind::Witness;
  w.values = *x;
  cert.steps.push_back(w);
  cert.verdict = Verdict::Sat;
  cert.trace.push_back(witness_text(spec.unknowns, *x));
  return cert;
}

Certificate lemma_help_check(std::size_t k, std::size_t j, std::size_t s, bool include_lone_cube) {
  const auto spec = build_lemma(k, j, s, include_lone_cube);
  json problem = {{"kind", "lemma-help"}, {"k", k}, {"j", j}, {"s", s}, {"include_lone_cube", include_lone_cube}};
  Certificate cert = start("lemma-help", problem, spec);
  cert.assumptions = {"y_1..y_k are algebraically independent over Q"};
  const std::size_t n = spec.unknowns.size();
  std::vector<std::optional<Rational>> known(n);
  bool assumed = false;

  for (;;) {
    bool progress = false;
    for (std::size_t i = 0; i < spec.equations.size() && !progress; ++i) {
      const QPoly r = spec.equations[i].poly.substitute(known);
      if (r.is_zero()) continue;
      if (r.is_constant()) {
        if (assumed) {
          cert.verdict = Verdict::Unknown;
          cert.trace.push_back("[" + spec.equations[i].monomial + "] fails under a free choice; undecided");
          return cert;
        }
        CertStep step;
        step.kind = CertStep::Kind::Contradiction;
        step.equation = i;
        cert.steps.push_back(step);
        cert.trace.push_back("[" + spec.equations[i].monomial + "] reduces to " + r.to_string(spec.unknowns) +
                             " = 0: contradiction");
        cert.verdict = Verdict::Unsat;
        return cert;
      }
      if (r.total_degree() != 1) continue;
      std::optional<std::size_t> var;
      bool single = true;
      for (const auto& [e, c] : r.terms()) {
        for (std::size_t u = 0; u < n; ++u) {
          if (e[u] == 0) continue;
          if (var && *var != u) single = false;
          var = u;
        }
      }
      if (!single || !var) continue;
      const Rational value = -r.constant_term() / linear_coeff(r, *var);
      known[*var] = value;
      CertStep step;
      step.kind = CertStep::Kind::Deduce;
      step.equation = i;
      step.variable = *var;
      step.value = value;
      cert.steps.push_back(step);
      cert.trace.push_back("[" + spec.equations[i].monomial + "] " + r.to_string(spec.unknowns) + " = 0 => " +
                           spec.unknowns[*var] + " = " + to_string(value));
      progress = true;
    }
    if (progress) continue;

    std::optional<std::size_t> free_var;
    for (const auto& e : spec.equations) {
      const QPoly r = e.poly.substitute(known);
      for (const auto& [ex, c] : r.terms())
        for (std::size_t u = 0; u < n; ++u)
          if (ex[u] != 0 && (!free_var || u < *free_var)) free_var = u;
    }
    if (!free_var) break;
    known[*free_var] = Rational(0);
    assumed = true;
    CertStep step;
    step.kind = CertStep::Kind::Assume;
    step.variable = *free_var;
    step.value = 0;
    cert.steps.push_back(step);
    cert.trace.push_back("choose " + spec.unknowns[*free_var] + " = 0");
  }

  CertStep w;
  w.kind = CertStep::Kind::Witness;
  for (std::size_t u = 0; u < n; ++u) w.values.push_back(known[u].value_or(Rational(0)));
  cert.trace.push_back(witness_text(spec.unknowns, w.values) + " makes the identity hold");
  cert.steps.push_back(std::move(w));
  cert.verdict = Verdict::Sat;
  return cert;
}

namespace detail {

SystemSpec rebuild_system(const nlohmann::json& problem) {
  const std::string kind = problem.at("kind").get<std::string>();
  if (kind == "lemma-help")
    return build_lemma(problem.at("k").get<std::size_t>(), problem.at("j").get<std::size_t>(),
                       problem.at("s").get<std::size_t>(), problem.value("include_lone_cube", true));
  if (kind == "membership" || kind == "infinite-order" || kind == "pair-distinct" || kind == "joint-independence")
    return build_linear(linear_from_json(problem));
  throw std::invalid_argument("unknown certificate problem kind '" + kind + "'");
}

}  // namespace detail

}  // namespace hamloop
