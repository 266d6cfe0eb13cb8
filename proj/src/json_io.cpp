#include "hamloop/json_io.hpp"

#include <stdexcept>

namespace hamloop {

Rational rational_from_json(const json& j) {
  if (j.is_string()) return parse_rational(j.get<std::string>());
  if (j.is_number_integer()) return Rational(j.get<long long>());
  throw std::invalid_argument("expected a rational as \"p/q\" string or integer, got " + j.dump());
}

json to_json(const TrigPoly& f) {
  json hs = json::array();
  for (const auto& h : f.harmonics())
    hs.push_back({{"n", h.n}, {"P", to_string(h.p)}, {"Q", to_string(h.q)}});
  json j = {{"c0", to_string(f.c0())}, {"c1", to_string(f.c1())}, {"harmonics", hs}};
  if (f.order() != 0) j["order"] = f.order();
  return j;
}

TrigPoly trig_poly_from_json(const json& j) {
  if (!j.is_object()) throw std::invalid_argument("TrigPoly must be a JSON object");
  std::vector<Harmonic> hs;
  if (j.contains("harmonics")) {
    for (const auto& h : j.at("harmonics")) {
      Harmonic x;
      x.n = h.at("n").get<int>();
      x.p = h.contains("P") ? rational_from_json(h.at("P")) : Rational(0);
      x.q = h.contains("Q") ? rational_from_json(h.at("Q")) : Rational(0);
      hs.push_back(x);
    }
  }
  const Rational c0 = j.contains("c0") ? rational_from_json(j.at("c0")) : Rational(0);
  const Rational c1 = j.contains("c1") ? rational_from_json(j.at("c1")) : Rational(0);
  return TrigPoly(c0, c1, std::move(hs), j.value("order", 0));
}

json to_json(const PathSpec& p) { return {{"theta", to_json(p.theta)}, {"alpha", to_json(p.alpha)}}; }

PathSpec path_spec_from_json(const json& j) {
  PathSpec p;
  p.theta = j.contains("theta") ? trig_poly_from_json(j.at("theta")) : TrigPoly();
  p.alpha = trig_poly_from_json(j.at("alpha"));
  return p;
}

json to_json(const BumpProfile& b) { return {{"r0", b.r0}, {"R0", b.R0}, {"sharpness", b.sharpness}}; }

BumpProfile bump_from_json(const json& j) {
  BumpProfile b{j.at("r0").get<double>(), j.at("R0").get<double>(), j.value("sharpness", 1.0)};
  b.validate();
  return b;
}

json to_json(const LoopSpec& l) {
  return {{"pathA", to_json(l.path_a)}, {"pathB", to_json(l.path_b)}, {"bump", to_json(l.bump)}};
}

json to_json(const QPoly& p) {
  json terms = json::array();
  for (const auto& [e, c] : p.terms()) terms.push_back({{"exp", e}, {"coeff", to_string(c)}});
  return terms;
}

QPoly qpoly_from_json(const json& j, std::size_t nvars) {
  QPoly p(nvars);
  for (const auto& t : j) p.add_term(t.at("exp").get<Exponents>(), rational_from_json(t.at("coeff")));
  return p;
}

json to_json(const QRatFunc& f) {
  return {{"nvars", f.nvars()}, {"num", to_json(f.num)}, {"den", to_json(f.den)}};
}

QRatFunc qratfunc_from_json(const json& j) {
  const auto n = j.at("nvars").get<std::size_t>();
  return QRatFunc(qpoly_from_json(j.at("num"), n), qpoly_from_json(j.at("den"), n));
}

json to_json(const PeriodLattice& l) {
  json rat = json::array();
  for (const auto& q : l.rational_gens) rat.push_back(to_string(q));
  return {{"rational", rat}, {"formal", l.formal_gens}};
}

PeriodLattice lattice_from_json(const json& j) {
  PeriodLattice l;
  for (const auto& q : j.value("rational", json::array())) l.rational_gens.push_back(rational_from_json(q));
  l.formal_gens = j.value("formal", std::vector<int>{});
  return l;
}

}  // namespace hamloop
