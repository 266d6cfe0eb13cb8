#include "hamloop/certificate.hpp"

#include "hamloop/json_io.hpp"
#include "hamloop/period_lattice.hpp"

#include <algorithm>
#include <array>
#include <stdexcept>

namespace hamloop {

namespace {

constexpr std::array<std::pair<Verdict, const char*>, 7> kVerdictNames{{
    {Verdict::Member, "MEMBER"},
    {Verdict::NotMember, "NOT-MEMBER"},
    {Verdict::InfiniteOrder, "INFINITE-ORDER"},
    {Verdict::FiniteOrder, "FINITE-ORDER"},
    {Verdict::Unsat, "UNSAT"},
    {Verdict::Sat, "SAT"},
    {Verdict::Unknown, "UNKNOWN"},
}};

constexpr std::array<std::pair<CertStep::Kind, const char*>, 5> kStepNames{{
    {CertStep::Kind::Combine, "combine"},
    {CertStep::Kind::Deduce, "deduce"},
    {CertStep::Kind::Assume, "assume"},
    {CertStep::Kind::Contradiction, "contradiction"},
    {CertStep::Kind::Witness, "witness"},
}};

std::size_t unknown_index(const std::vector<std::string>& unknowns, const std::string& name) {
  auto it = std::find(unknowns.begin(), unknowns.end(), name);
  if (it == unknowns.end()) throw std::invalid_argument("certificate step names unknown '" + name + "'");
  return static_cast<std::size_t>(it - unknowns.begin());
}

std::size_t ring_size(const Certificate& c) { return c.unknowns.size(); }

Rational linear_coeff(const QPoly& p, std::size_t u) {
  Exponents e(p.nvars(), 0);
  e[u] = 1;
  return p.coefficient(e);
}

// True when p is exactly the unknown u (coefficient 1, nothing else).
bool is_single_unknown(const QPoly& p, std::size_t u) {
  return p.terms().size() == 1 && p.total_degree() == 1 && linear_coeff(p, u) == 1;
}

bool is_linear_in_only(const QPoly& r, std::size_t var) {
  if (r.total_degree() != 1) return false;
  for (const auto& [e, c] : r.terms())
    for (std::size_t u = 0; u < e.size(); ++u)
      if (e[u] != 0 && u != var) return false;
  return linear_coeff(r, var) != 0;
}

}  // namespace

std::string to_string(Verdict v) {
  for (const auto& [k, name] : kVerdictNames)
    if (k == v) return name;
  return "UNKNOWN";
}

Verdict verdict_from_string(const std::string& s) {
  for (const auto& [k, name] : kVerdictNames)
    if (s == name) return k;
  throw std::invalid_argument("unknown verdict '" + s + "'");
}

nlohmann::json to_json(const Certificate& cert) {
  json eqs = json::array();
  for (const auto& e : cert.equations)
    eqs.push_back({{"monomial", e.monomial}, {"poly", to_json(e.poly)}, {"text", e.poly.to_string(cert.unknowns) + " = 0"}});
  json steps = json::array();
  for (const auto& s : cert.steps) {
    json j;
    for (const auto& [k, name] : kStepNames)
      if (k == s.kind) j["kind"] = name;
    switch (s.kind) {
      case CertStep::Kind::Combine: {
        json ms = json::array();
        for (const auto& [i, l] : s.multipliers) ms.push_back({{"eq", i}, {"lambda", to_string(l)}});
        j["multipliers"] = ms;
        j["result"] = to_json(s.result);
        break;
      }
      case CertStep::Kind::Deduce:
        j["eq"] = s.equation;
        [[fallthrough]];
      case CertStep::Kind::Assume:
        j["var"] = cert.unknowns.at(s.variable);
        j["value"] = to_string(s.value);
        break;
      case CertStep::Kind::Contradiction:
        j["eq"] = s.equation;
        break;
      case CertStep::Kind::Witness: {
        json vals = json::object();
        for (std::size_t u = 0; u < s.values.size() && u < cert.unknowns.size(); ++u)
          vals[cert.unknowns[u]] = to_string(s.values[u]);
        j["values"] = vals;
        break;
      }
    }
    steps.push_back(j);
  }
  return {{"kind", cert.kind},       {"verdict", to_string(cert.verdict)}, {"assumptions", cert.assumptions},
          {"problem", cert.problem}, {"unknowns", cert.unknowns},          {"equations", eqs},
          {"steps", steps},          {"trace", cert.trace},                {"details", cert.details}};
}

Certificate certificate_from_json(const nlohmann::json& j) {
  Certificate c;
  c.kind = j.at("kind").get<std::string>();
  c.verdict = verdict_from_string(j.at("verdict").get<std::string>());
  c.assumptions = j.value("assumptions", std::vector<std::string>{});
  c.problem = j.at("problem");
  c.unknowns = j.at("unknowns").get<std::vector<std::string>>();
  const std::size_t n = ring_size(c);
  for (const auto& e : j.at("equations"))
    c.equations.push_back({e.at("monomial").get<std::string>(), qpoly_from_json(e.at("poly"), n)});
  for (const auto& s : j.at("steps")) {
    CertStep step;
    const auto kind = s.at("kind").get<std::string>();
    bool found = false;
    for (const auto& [k, name] : kStepNames)
      if (kind == name) {
        step.kind = k;
        found = true;
      }
    if (!found) throw std::invalid_argument("unknown step kind '" + kind + "'");
    step.result = QPoly(n);
    switch (step.kind) {
      case CertStep::Kind::Combine:
        for (const auto& m : s.at("multipliers"))
          step.multipliers.emplace_back(m.at("eq").get<std::size_t>(), rational_from_json(m.at("lambda")));
        step.result = qpoly_from_json(s.at("result"), n);
        break;
      case CertStep::Kind::Deduce:
        step.equation = s.at("eq").get<std::size_t>();
        [[fallthrough]];
      case CertStep::Kind::Assume:
        step.variable = unknown_index(c.unknowns, s.at("var").get<std::string>());
        step.value = rational_from_json(s.at("value"));
        break;
      case CertStep::Kind::Contradiction:
        step.equation = s.at("eq").get<std::size_t>();
        break;
      case CertStep::Kind::Witness: {
        const auto& vals = s.at("values");
        for (const auto& name : c.unknowns) step.values.push_back(rational_from_json(vals.at(name)));
        break;
      }
    }
    c.steps.push_back(std::move(step));
  }
  c.trace = j.value("trace", std::vector<std::string>{});
  c.details = j.value("details", nlohmann::json::object());
  return c;
}

ReplayResult replay(const Certificate& cert) {
  ReplayResult out;
  auto line = [&](bool ok, std::string text) {
    out.lines.push_back({(ok ? "OK   " : "FAIL ") + text, ok});
    out.ok = out.ok && ok;
  };

  detail::SystemSpec spec;
  try {
    spec = detail::rebuild_system(cert.problem);
  } catch (const std::exception& e) {
    line(false, std::string("rebuild problem: ") + e.what());
    return out;
  }
  if (spec.unknowns != cert.unknowns) {
    line(false, "unknowns differ from the rebuilt system");
    return out;
  }
  line(true, "unknowns: " + std::to_string(spec.unknowns.size()));
  if (spec.equations.size() != cert.equations.size()) {
    line(false, "equation count " + std::to_string(cert.equations.size()) + " != rebuilt " +
                    std::to_string(spec.equations.size()));
    return out;
  }
  for (std::size_t i = 0; i < spec.equations.size(); ++i) {
    const auto& want = spec.equations[i];
    const auto& got = cert.equations[i];
    const bool same = want.monomial == got.monomial && want.poly == got.poly;
    line(same, "[" + got.monomial + "] " + got.poly.to_string(cert.unknowns) + " = 0" +
                   (same ? "" : "  (rebuilt: [" + want.monomial + "] " + want.poly.to_string(spec.unknowns) + " = 0)"));
  }
  if (!out.ok) return out;

  const std::size_t n = spec.unknowns.size();
  const auto& eqs = spec.equations;
  std::vector<std::optional<Rational>> known(n);
  std::vector<bool> forced_zero(n, false);
  bool assumed = false;
  bool contradiction = false;
  bool inconsistent = false;
  std::optional<std::vector<Rational>> witness;

  for (const auto& s : cert.steps) {
    switch (s.kind) {
      case CertStep::Kind::Combine: {
        QPoly sum(n);
        bool in_range = true;
        for (const auto& [i, l] : s.multipliers) {
          if (i >= eqs.size()) {
            in_range = false;
            break;
          }
          sum += l * eqs[i].poly;
        }
        if (!in_range) {
          line(false, "combine references a missing equation");
          break;
        }
        const bool matches = sum == s.result;
        std::string text = "combine of " + std::to_string(s.multipliers.size()) + " equations gives " +
                           sum.to_string(spec.unknowns) + " = 0";
        if (!matches) {
          line(false, text + "  (recorded " + s.result.to_string(spec.unknowns) + ")");
          break;
        }
        if (sum.is_constant() && !sum.is_zero()) {
          inconsistent = true;
          line(true, text + ": inconsistent");
          break;
        }
        std::optional<std::size_t> var;
        for (std::size_t u = 0; u < n; ++u)
          if (is_single_unknown(sum, u)) var = u;
        if (var) {
          forced_zero[*var] = true;
          line(true, text + ": " + spec.unknowns[*var] + " forced to 0");
        } else {
          line(true, text);
        }
        break;
      }
      case CertStep::Kind::Deduce: {
        if (s.equation >= eqs.size() || s.variable >= n) {
          line(false, "deduce references a missing equation or unknown");
          break;
        }
        const QPoly r = eqs[s.equation].poly.substitute(known);
        const bool ok = is_linear_in_only(r, s.variable) &&
                        -r.constant_term() / linear_coeff(r, s.variable) == s.value;
        line(ok, "[" + eqs[s.equation].monomial + "] " + r.to_string(spec.unknowns) + " = 0 => " +
                     spec.unknowns[s.variable] + " = " + to_string(s.value));
        if (ok) known[s.variable] = s.value;
        break;
      }
      case CertStep::Kind::Assume:
        if (s.variable >= n) {
          line(false, "assume references a missing unknown");
          break;
        }
        assumed = true;
        known[s.variable] = s.value;
        line(true, "choose " + spec.unknowns[s.variable] + " = " + to_string(s.value));
        break;
      case CertStep::Kind::Contradiction: {
        if (s.equation >= eqs.size()) {
          line(false, "contradiction references a missing equation");
          break;
        }
        const QPoly r = eqs[s.equation].poly.substitute(known);
        const bool ok = r.is_constant() && !r.is_zero();
        line(ok, "[" + eqs[s.equation].monomial + "] reduces to " + r.to_string(spec.unknowns) + " = 0" +
                     (ok ? ": contradiction" : ": not a contradiction"));
        if (ok && !assumed) contradiction = true;
        break;
      }
      case CertStep::Kind::Witness: {
        if (s.values.size() != n) {
          line(false, "witness has the wrong number of values");
          break;
        }
        std::vector<std::optional<Rational>> full(s.values.begin(), s.values.end());
        bool ok = true;
        for (const auto& e : eqs) ok = ok && e.poly.substitute(full).is_zero();
        line(ok, std::string("witness satisfies all ") + std::to_string(eqs.size()) + " equations");
        if (ok) witness = s.values;
        break;
      }
    }
  }

  auto integral = [&](const std::vector<Rational>& x) {
    for (std::size_t slot : spec.integer_slots)
      if (!is_integer(x[slot])) return false;
    if (spec.rational_slot && spec.rational_generator != 0)
      return is_integer(x[*spec.rational_slot] / spec.rational_generator);
    return true;
  };
  const bool all_targets_forced =
      !spec.targets.empty() &&
      std::all_of(spec.targets.begin(), spec.targets.end(), [&](std::size_t t) { return forced_zero[t]; });
  const bool refuted = inconsistent || contradiction;

  bool supported = false;
  std::string why;
  switch (cert.verdict) {
    case Verdict::Unsat:
    case Verdict::InfiniteOrder:
      supported = refuted || all_targets_forced;
      why = "targets forced to zero or system refuted";
      break;
    case Verdict::NotMember:
      if (inconsistent) {
        supported = true;
        why = "system inconsistent over Q";
      } else if (witness) {
        // A unique rational solution that is not integral rules out integral ones.
        std::vector<std::vector<Rational>> rows;
        std::size_t rank = 0;
        {
          std::vector<std::vector<Rational>> a(eqs.size(), std::vector<Rational>(n));
          for (std::size_t i = 0; i < eqs.size(); ++i)
            for (std::size_t u = 0; u < n; ++u) a[i][u] = linear_coeff(eqs[i].poly, u);
          for (std::size_t c = 0; c < n && rank < a.size(); ++c) {
            std::size_t p = rank;
            while (p < a.size() && a[p][c] == 0) ++p;
            if (p == a.size()) continue;
            std::swap(a[p], a[rank]);
            for (std::size_t i = rank + 1; i < a.size(); ++i) {
              if (a[i][c] == 0) continue;
              const Rational f = a[i][c] / a[rank][c];
              for (std::size_t k = c; k < n; ++k) a[i][k] -= f * a[rank][k];
            }
            ++rank;
          }
        }
        supported = rank == n && !integral(*witness);
        why = "unique rational solution is not integral";
      }
      break;
    case Verdict::Member:
      supported = witness && integral(*witness);
      why = "integral witness";
      break;
    case Verdict::FiniteOrder:
      supported = witness && integral(*witness) && !spec.targets.empty() && (*witness)[spec.targets.front()] >= 1;
      why = "integral witness with positive order";
      break;
    case Verdict::Sat:
      supported = witness.has_value() &&
                  (spec.targets.empty() || std::any_of(spec.targets.begin(), spec.targets.end(),
                                                       [&](std::size_t t) { return (*witness)[t] != 0; })) &&
                  (spec.targets.empty() || integral(*witness));
      why = "witness with a non-zero target";
      break;
    case Verdict::Unknown:
      supported = false;
      why = "undecided verdicts cannot be verified";
      break;
  }
  if (supported && refuted && cert.verdict != Verdict::Unsat && cert.verdict != Verdict::InfiniteOrder &&
      cert.verdict != Verdict::NotMember) {
    supported = false;
    why = "steps refute the system but the verdict claims a solution";
  }
  line(supported, "verdict " + to_string(cert.verdict) + ": " + why);
  return out;
}

}  // namespace hamloop
