#include <doctest.h>

#include "hamloop/json_io.hpp"
#include "hamloop/period_lattice.hpp"

using namespace hamloop;

namespace {

PeriodLattice cp2() {
  PeriodLattice lat;
  lat.rational_gens = {Rational(10)};
  lat.formal_gens = {1};
  return lat;
}

Certificate single_ball_order() { return infinite_order(weinstein_value(1, 1, 50, 1), cp2()); }

std::size_t first_failure(const ReplayResult& r) {
  for (std::size_t i = 0; i < r.lines.size(); ++i)
    if (!r.lines[i].ok) return i;
  return r.lines.size();
}

}  // namespace

TEST_CASE("verdict names") {
  for (auto v : {Verdict::Member, Verdict::NotMember, Verdict::InfiniteOrder, Verdict::FiniteOrder, Verdict::Unsat,
                 Verdict::Sat, Verdict::Unknown})
    CHECK(verdict_from_string(to_string(v)) == v);
  CHECK(to_string(Verdict::InfiniteOrder) == "INFINITE-ORDER");
  CHECK_THROWS(verdict_from_string("MAYBE"));
}

TEST_CASE("JSON round trip preserves replay") {
  const auto c = single_ball_order();
  const json j = to_json(c);
  CHECK(j.at("verdict") == "INFINITE-ORDER");
  CHECK(j.at("assumptions").size() == 1);
  CHECK(j.at("trace").is_array());
  const auto back = certificate_from_json(j);
  CHECK(to_json(back) == j);
  const auto r = replay(back);
  CHECK(r.ok);
  for (const auto& l : r.lines) CHECK(l.text.rfind("OK", 0) == 0);

  const auto lemma = lemma_help_check(3, 2, 3);
  CHECK(replay(certificate_from_json(to_json(lemma))).ok);
}

TEST_CASE("tampered equation fails at the edited line") {
  json j = to_json(single_ball_order());
  // [x1^3] 1/6*m + 1/2*n_x1 = 0 -> change 1/6 to 1/5
  auto& eqs = j.at("equations");
  std::size_t target = 0;
  for (std::size_t i = 0; i < eqs.size(); ++i)
    if (eqs[i].at("monomial") == "x1^3") target = i;
  for (auto& t : eqs[target].at("poly"))
    if (t.at("coeff") == "1/6") t["coeff"] = "1/5";
  const auto r = replay(certificate_from_json(j));
  CHECK_FALSE(r.ok);
  // line 0 is the unknowns header, equations follow
  CHECK(first_failure(r) == target + 1);
  CHECK(r.lines[target + 1].text.find("x1^3") != std::string::npos);
}

TEST_CASE("tampered multiplier or verdict fails") {
  json j = to_json(single_ball_order());
  for (auto& s : j.at("steps"))
    if (s.at("kind") == "combine") s.at("multipliers")[0]["lambda"] = "1/7";
  CHECK_FALSE(replay(certificate_from_json(j)).ok);

  json v = to_json(single_ball_order());
  v["verdict"] = "FINITE-ORDER";
  CHECK_FALSE(replay(certificate_from_json(v)).ok);

  json p = to_json(single_ball_order());
  p["problem"]["values"][0]["num"][0]["coeff"] = "1/3";
  CHECK_FALSE(replay(certificate_from_json(p)).ok);

  json w = to_json(lemma_help_check(2, 1, 1));
  for (auto& s : w.at("steps"))
    if (s.at("kind") == "witness") s.at("values")["c"] = "1";
  CHECK_FALSE(replay(certificate_from_json(w)).ok);

  json u = to_json(lemma_help_check(2, 1, 2));
  u["verdict"] = "SAT";
  CHECK_FALSE(replay(certificate_from_json(u)).ok);
}

TEST_CASE("witness-only membership certificate replays") {
  const QRatFunc zero(QPoly(1), QPoly::constant(1, 1));
  json j = to_json(membership(4, zero, cp2()));
  CHECK(j.at("verdict") == "MEMBER");
  j["trace"] = json::array();
  const auto r = replay(certificate_from_json(j));
  CHECK(r.ok);
  CHECK(r.lines.back().text.find("integral witness") != std::string::npos);
}

TEST_CASE("unknown verdicts never replay") {
  auto c = single_ball_order();
  c.verdict = Verdict::Unknown;
  CHECK_FALSE(replay(c).ok);
}
