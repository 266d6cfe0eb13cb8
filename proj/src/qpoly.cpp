#include "hamloop/qpoly.hpp"

#include <cmath>
#include <optional>
#include <stdexcept>

namespace hamloop {

QPoly QPoly::constant(std::size_t nvars, const Rational& c) {
  QPoly p(nvars);
  p.add_term(Exponents(nvars, 0), c);
  return p;
}

QPoly QPoly::variable(std::size_t nvars, std::size_t index) {
  if (index >= nvars) throw std::out_of_range("variable index out of range");
  Exponents e(nvars, 0);
  e[index] = 1;
  return monomial(e, Rational(1));
}

QPoly QPoly::monomial(const Exponents& e, const Rational& c) {
  QPoly p(e.size());
  p.add_term(e, c);
  return p;
}

bool QPoly::is_constant() const {
  if (terms_.empty()) return true;
  if (terms_.size() > 1) return false;
  for (int k : terms_.begin()->first)
    if (k != 0) return false;
  return true;
}

Rational QPoly::constant_term() const { return coefficient(Exponents(nvars_, 0)); }

Rational QPoly::coefficient(const Exponents& e) const {
  auto it = terms_.find(e);
  return it == terms_.end() ? Rational(0) : it->second;
}

int QPoly::total_degree() const {
  int deg = -1;
  for (const auto& [e, c] : terms_) {
    int d = 0;
    for (int k : e) d += k;
    deg = std::max(deg, d);
  }
  return deg;
}

void QPoly::add_term(const Exponents& e, const Rational& c) {
  if (e.size() != nvars_) throw std::invalid_argument("exponent vector length mismatch");
  for (int k : e)
    if (k < 0) throw std::invalid_argument("negative exponent");
  if (c == 0) return;
  auto [it, inserted] = terms_.try_emplace(e, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

QPoly& QPoly::operator+=(const QPoly& o) {
  if (o.nvars_ != nvars_) throw std::invalid_argument("QPoly variable count mismatch");
  for (const auto& [e, c] : o.terms_) add_term(e, c);
  return *this;
}

QPoly& QPoly::operator-=(const QPoly& o) {
  if (o.nvars_ != nvars_) throw std::invalid_argument("QPoly variable count mismatch");
  for (const auto& [e, c] : o.terms_) add_term(e, -c);
  return *this;
}

QPoly operator-(const QPoly& a) { return Rational(-1) * a; }

QPoly operator*(const QPoly& a, const QPoly& b) {
  if (a.nvars_ != b.nvars_) throw std::invalid_argument("QPoly variable count mismatch");
  QPoly r(a.nvars_);
  Exponents e(a.nvars_);
  for (const auto& [ea, ca] : a.terms_) {
    for (const auto& [eb, cb] : b.terms_) {
      for (std::size_t i = 0; i < e.size(); ++i) e[i] = ea[i] + eb[i];
      r.add_term(e, ca * cb);
    }
  }
  return r;
}

QPoly operator*(const Rational& s, const QPoly& a) {
  QPoly r(a.nvars_);
  if (s == 0) return r;
  for (const auto& [e, c] : a.terms_) r.terms_.emplace(e, s * c);
  return r;
}

double QPoly::evaluate(std::span<const double> point) const {
  if (point.size() != nvars_) throw std::invalid_argument("evaluation point has wrong dimension");
  double acc = 0.0;
  for (const auto& [e, c] : terms_) {
    double m = to_double(c);
    for (std::size_t i = 0; i < e.size(); ++i)
      if (e[i] != 0) m *= std::pow(point[i], e[i]);
    acc += m;
  }
  return acc;
}

QPoly QPoly::substitute(const std::vector<std::optional<Rational>>& values) const {
  if (values.size() != nvars_) throw std::invalid_argument("substitution has wrong dimension");
  QPoly r(nvars_);
  for (const auto& [e, c] : terms_) {
    Rational coeff = c;
    Exponents rest = e;
    for (std::size_t i = 0; i < e.size(); ++i) {
      if (values[i] && e[i] > 0) {
        for (int k = 0; k < e[i]; ++k) coeff *= *values[i];
        rest[i] = 0;
      }
    }
    r.add_term(rest, coeff);
  }
  return r;
}

std::map<Exponents, QPoly> QPoly::collect_leading(std::size_t k) const {
  if (k > nvars_) throw std::invalid_argument("collect_leading beyond variable count");
  std::map<Exponents, QPoly> groups;
  for (const auto& [e, c] : terms_) {
    Exponents lead(e.begin(), e.begin() + static_cast<std::ptrdiff_t>(k));
    Exponents rest(e.begin() + static_cast<std::ptrdiff_t>(k), e.end());
    auto [it, inserted] = groups.try_emplace(lead, QPoly(nvars_ - k));
    it->second.add_term(rest, c);
  }
  std::erase_if(groups, [](const auto& kv) { return kv.second.is_zero(); });
  return groups;
}

QPoly QPoly::embed(std::size_t new_nvars, std::size_t offset) const {
  if (offset + nvars_ > new_nvars) throw std::invalid_argument("embedding does not fit");
  QPoly r(new_nvars);
  for (const auto& [e, c] : terms_) {
    Exponents big(new_nvars, 0);
    for (std::size_t i = 0; i < e.size(); ++i) big[i + offset] = e[i];
    r.add_term(big, c);
  }
  return r;
}

std::string monomial_string(const Exponents& e, std::span<const std::string> names) {
  std::string out;
  for (std::size_t i = 0; i < e.size(); ++i) {
    if (e[i] == 0) continue;
    if (!out.empty()) out += "*";
    out += i < names.size() ? names[i] : "v" + std::to_string(i + 1);
    if (e[i] > 1) out += "^" + std::to_string(e[i]);
  }
  return out.empty() ? "1" : out;
}

std::string QPoly::to_string(std::span<const std::string> names) const {
  if (terms_.empty()) return "0";
  std::string out;
  // Descending total degree reads more naturally.
  for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
    const auto& [e, c] = *it;
    const std::string mono = monomial_string(e, names);
    Rational mag = c < 0 ? Rational(-c) : c;
    if (out.empty()) out += c < 0 ? "-" : "";
    else out += c < 0 ? " - " : " + ";
    if (mono == "1") out += hamloop::to_string(mag);
    else if (mag == 1) out += mono;
    else out += hamloop::to_string(mag) + "*" + mono;
  }
  return out;
}

std::vector<std::string> indexed_names(const std::string& stem, std::size_t k) {
  std::vector<std::string> names;
  for (std::size_t i = 1; i <= k; ++i) names.push_back(stem + std::to_string(i));
  return names;
}

QRatFunc::QRatFunc(QPoly n, QPoly d) : num(std::move(n)), den(std::move(d)) {
  if (den.is_zero()) throw std::invalid_argument("rational function with zero denominator");
  if (num.nvars() != den.nvars()) throw std::invalid_argument("numerator/denominator variable mismatch");
}

}  // namespace hamloop
