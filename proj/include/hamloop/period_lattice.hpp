#ifndef HAMLOOP_PERIOD_LATTICE_HPP
#define HAMLOOP_PERIOD_LATTICE_HPP

#include "hamloop/certificate.hpp"
#include "hamloop/qpoly.hpp"

#include <optional>
#include <string>
#include <vector>

namespace hamloop {

inline constexpr const char* kIndependenceAssumption =
    "the formal generators x_j = pi r_j^2 are algebraically independent over Q";

/// Z-span of finitely many rationals and formal generators x_j (1-based indices).
struct PeriodLattice {
  std::vector<Rational> rational_gens;
  std::vector<int> formal_gens;

  void validate(std::size_t nvars) const;

  /// Positive generator g of the rational part (g Z = Z<q_1, ..., q_s>), or 0 when there is none.
  Rational rational_generator() const;
};

/// (w x_j^3 / 6) / (V - sum_i x_i^2 / 2) over k formal variables; j is 1-based.
QRatFunc weinstein_value(std::size_t j, std::size_t k, const Rational& volume, const Rational& winding);

/// Does m * val lie in the lattice? Decided by clearing the denominator and comparing
/// coefficients; the rational relaxation is recorded in details["rational_relaxation"].
Certificate membership(const Rational& m, const QRatFunc& val, const PeriodLattice& lat);

/// INFINITE-ORDER iff no m >= 1 puts m * val in the lattice, with m kept formal.
/// Otherwise FINITE-ORDER with the minimal order in details["order"].
Certificate infinite_order(const QRatFunc& val, const PeriodLattice& lat);

/// UNSAT iff m * val_j - n * val_s in the lattice forces m = n = 0 (m, n formal).
Certificate pair_distinct(const QRatFunc& val_j, const QRatFunc& val_s, const PeriodLattice& lat,
                          std::size_t label_j, std::size_t label_s);

/// UNSAT iff sum_j m_j val_j in the lattice forces every m_j = 0.
Certificate joint_independence(const std::vector<QRatFunc>& values, const PeriodLattice& lat);

/// Searches rationals a, b, c, q_1..q_k with
///   (a + sum q_i y_i)(b - sum y_i^2) + c y_j^3 + y_s^3 = 0
/// as a polynomial identity in independent y_1..y_k. UNSAT by a forced deduction chain,
/// SAT with a verified witness. `include_lone_cube` = false drops the y_s^3 term.
Certificate lemma_help_check(std::size_t k, std::size_t j, std::size_t s, bool include_lone_cube = true);

namespace detail {

/// Unknowns and equations of a certificate problem, rebuilt from its JSON description.
struct SystemSpec {
  std::vector<std::string> unknowns;
  std::vector<CertEquation> equations;
  std::vector<std::size_t> targets;          // unknowns that must be forced to zero
  std::optional<std::size_t> rational_slot;  // unknown carrying the rational lattice part
  std::vector<std::size_t> integer_slots;    // unknowns that must be integers
  Rational rational_generator{0};
};

SystemSpec rebuild_system(const nlohmann::json& problem);

}  // namespace detail

}  // namespace hamloop

#endif  // HAMLOOP_PERIOD_LATTICE_HPP
