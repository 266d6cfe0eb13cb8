#include <doctest.h>

#include "hamloop/period_lattice.hpp"

#include <random>

using namespace hamloop;

namespace {

QPoly random_qpoly(std::mt19937_64& rng, std::size_t nvars) {
  std::uniform_int_distribution<int> c(-6, 6), e(0, 3), terms(1, 5);
  QPoly p(nvars);
  const int n = terms(rng);
  for (int i = 0; i < n; ++i) {
    Exponents ex(nvars);
    for (auto& v : ex) v = e(rng);
    p.add_term(ex, Rational(c(rng), 1 + std::abs(c(rng))));
  }
  return p;
}

PeriodLattice cp2(std::size_t k) {
  PeriodLattice lat;
  lat.rational_gens = {Rational(10)};
  for (std::size_t j = 1; j <= k; ++j) lat.formal_gens.push_back(static_cast<int>(j));
  return lat;
}

}  // namespace

TEST_CASE("QPoly arithmetic matches numeric evaluation") {
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> u(-1.5, 1.5);
  for (int i = 0; i < 50; ++i) {
    const auto f = random_qpoly(rng, 3);
    const auto g = random_qpoly(rng, 3);
    const std::array<double, 3> x{u(rng), u(rng), u(rng)};
    CHECK(std::abs((f + g).evaluate(x) - (f.evaluate(x) + g.evaluate(x))) < 1e-10);
    CHECK(std::abs((f * g).evaluate(x) - f.evaluate(x) * g.evaluate(x)) < 1e-10);
    CHECK((f - f).is_zero());
  }
}

TEST_CASE("QPoly helpers") {
  const auto x = QPoly::variable(2, 0);
  const auto y = QPoly::variable(2, 1);
  const auto p = x * x * y + Rational(3) * y - QPoly::constant(2, Rational(1, 2));
  CHECK(p.total_degree() == 3);
  CHECK(p.constant_term() == Rational(-1, 2));
  CHECK(p.to_string(indexed_names("x", 2)) == "x1^2*x2 + 3*x2 - 1/2");
  const auto s = p.substitute({Rational(2), std::nullopt});
  CHECK(s == Rational(7) * y - QPoly::constant(2, Rational(1, 2)));
  const auto groups = p.collect_leading(1);
  CHECK(groups.size() == 2);
  CHECK_THROWS(QRatFunc(x, QPoly(2)));
  CHECK(QRatFunc(x * y, y * y) == QRatFunc(x, y));
}

TEST_CASE("weinstein_value") {
  const auto v = weinstein_value(1, 1, 50, 1);
  QPoly num = QPoly::monomial({3}, Rational(1, 6));
  QPoly den = QPoly::constant(1, 50);
  den.add_term({2}, Rational(-1, 2));
  CHECK(v == QRatFunc(num, den));
  CHECK(weinstein_value(1, 1, 50, 0).is_zero());
  const auto v2 = weinstein_value(2, 2, 50, 1);
  const std::array<double, 2> pt{0.7, 1.3};
  CHECK(v2.evaluate(pt) == doctest::Approx((1.3 * 1.3 * 1.3 / 6) / (50 - (0.49 + 1.69) / 2)));
  CHECK_THROWS(weinstein_value(1, 1, 0, 1));
}

TEST_CASE("membership") {
  const auto val = weinstein_value(1, 1, 50, 1);
  const auto c = membership(6, val, cp2(1));
  CHECK(c.verdict == Verdict::NotMember);
  CHECK(replay(c).ok);

  CHECK(membership(5, weinstein_value(1, 1, 50, 0), cp2(1)).verdict == Verdict::Member);

  PeriodLattice q;
  q.rational_gens = {Rational(3, 2), Rational(5)};
  const QRatFunc q1(QPoly::constant(1, Rational(3, 2)), QPoly::constant(1, 1));
  const auto m = membership(1, q1, q);
  CHECK(m.verdict == Verdict::Member);
  CHECK(replay(m).ok);
  const QRatFunc third(QPoly::constant(1, Rational(1, 4)), QPoly::constant(1, 1));
  const auto nm = membership(1, third, q);
  CHECK(nm.verdict == Verdict::NotMember);
  CHECK(nm.details.at("rational_relaxation") == "solvable");
  CHECK(replay(nm).ok);
  CHECK(membership(2, third, q).verdict == Verdict::Member);  // gcd(3/2, 5) = 1/2

  // x itself is a lattice generator
  const QRatFunc x(QPoly::variable(1, 0), QPoly::constant(1, 1));
  CHECK(membership(3, x, cp2(1)).verdict == Verdict::Member);
}

TEST_CASE("membership is invariant under rescaling numerator and denominator") {
  std::mt19937_64 rng(3);
  const auto val = weinstein_value(1, 1, 50, 1);
  for (int i = 0; i < 5; ++i) {
    QPoly s = random_qpoly(rng, 1);
    if (s.is_zero()) continue;
    const QRatFunc scaled(val.num * s, val.den * s);
    for (int m : {1, 2, 6})
      CHECK(membership(m, scaled, cp2(1)).verdict == membership(m, val, cp2(1)).verdict);
  }
}

TEST_CASE("infinite_order") {
  const auto c = infinite_order(weinstein_value(1, 1, 50, 1), cp2(1));
  CHECK(c.verdict == Verdict::InfiniteOrder);
  CHECK(c.equations.size() == 4);
  CHECK(replay(c).ok);
  CHECK(c.assumptions.front() == kIndependenceAssumption);

  const auto zero = infinite_order(weinstein_value(1, 1, 50, 0), cp2(1));
  CHECK(zero.verdict == Verdict::FiniteOrder);
  CHECK(zero.details.at("order") == "1");
  CHECK(replay(zero).ok);

  PeriodLattice q;
  q.rational_gens = {Rational(1)};
  const QRatFunc r(QPoly::constant(1, Rational(2, 3)), QPoly::constant(1, 1));
  const auto f = infinite_order(r, q);
  CHECK(f.verdict == Verdict::FiniteOrder);
  CHECK(f.details.at("order") == "3");
  CHECK(replay(f).ok);

  for (std::size_t j = 1; j <= 3; ++j)
    CHECK(infinite_order(weinstein_value(j, 3, 50, 1), cp2(3)).verdict == Verdict::InfiniteOrder);
}

TEST_CASE("pair_distinct") {
  const auto a = weinstein_value(1, 2, 50, 1);
  const auto b = weinstein_value(2, 2, 50, 1);
  const auto c = pair_distinct(a, b, cp2(2), 1, 2);
  CHECK(c.verdict == Verdict::Unsat);
  CHECK(replay(c).ok);
  CHECK_THROWS(pair_distinct(a, a, cp2(2), 1, 1));
  const auto z = pair_distinct(weinstein_value(1, 2, 50, 0), weinstein_value(2, 2, 50, 0), cp2(2), 1, 2);
  CHECK(z.verdict == Verdict::Sat);
  CHECK(z.details.at("degenerate") == true);
  CHECK(replay(z).ok);
}

TEST_CASE("joint independence") {
  std::vector<QRatFunc> vals;
  for (std::size_t j = 1; j <= 4; ++j) vals.push_back(weinstein_value(j, 4, 50, 1));
  const auto c = joint_independence(vals, cp2(4));
  CHECK(c.verdict == Verdict::Unsat);
  CHECK(replay(c).ok);
}

TEST_CASE("cubic identity checker") {
  const auto c = lemma_help_check(2, 1, 2);
  CHECK(c.verdict == Verdict::Unsat);
  CHECK(replay(c).ok);
  for (std::size_t k = 2; k <= 5; ++k)
    for (std::size_t j = 1; j <= k; ++j)
      for (std::size_t s = 1; s <= k; ++s)
        if (j != s) CHECK(lemma_help_check(k, j, s).verdict == Verdict::Unsat);

  // With j = s the identity holds for c = -1, a = b = q_i = 0: the checker must find it.
  for (std::size_t k = 1; k <= 5; ++k) {
    const auto same = lemma_help_check(k, 1, 1);
    CHECK(same.verdict == Verdict::Sat);
    CHECK(replay(same).ok);
    const auto& w = same.steps.back();
    REQUIRE(w.kind == CertStep::Kind::Witness);
    if (k >= 2) CHECK(w.values[2] == -1);  // c is forced once some q_i y_i^3 term is absent
  }

  const auto control = lemma_help_check(3, 1, 2, false);
  CHECK(control.verdict == Verdict::Sat);
  for (const auto& v : control.steps.back().values) CHECK(v == 0);
  CHECK(replay(control).ok);
  CHECK_THROWS(lemma_help_check(2, 3, 1));
}

TEST_CASE("lattice generator") {
  PeriodLattice l;
  l.rational_gens = {Rational(3, 2), Rational(-5, 3)};
  CHECK(l.rational_generator() == Rational(1, 6));
  CHECK(PeriodLattice{}.rational_generator() == 0);
  l.formal_gens = {3};
  CHECK_THROWS(l.validate(2));
}
