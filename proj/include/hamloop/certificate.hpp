#ifndef HAMLOOP_CERTIFICATE_HPP
#define HAMLOOP_CERTIFICATE_HPP

#include "hamloop/qpoly.hpp"

#include <json.hpp>

#include <string>
#include <utility>
#include <vector>

namespace hamloop {

enum class Verdict { Member, NotMember, InfiniteOrder, FiniteOrder, Unsat, Sat, Unknown };

std::string to_string(Verdict v);
Verdict verdict_from_string(const std::string& s);

/// One coefficient-comparison equation: `poly` (a polynomial in the unknowns) = 0,
/// obtained as the coefficient of `monomial` in the cleared identity.
struct CertEquation {
  std::string monomial;
  QPoly poly;
};

struct CertStep {
  enum class Kind {
    Combine,        // sum of multiplier * equation equals `result`
    Deduce,         // equation `equation`, after substitution, is linear in `variable` only
    Assume,         // free choice `variable` = `value` (witness search only)
    Contradiction,  // equation `equation`, after substitution, is a non-zero constant
    Witness,        // `values` for every unknown satisfy all equations
  };
  Kind kind = Kind::Combine;
  std::vector<std::pair<std::size_t, Rational>> multipliers;
  QPoly result;
  std::size_t equation = 0;
  std::size_t variable = 0;
  Rational value{0};
  std::vector<Rational> values;
};

/// Exact, re-checkable record of a decision by coefficient comparison.
/// All verdicts are conditional on the algebraic independence of the formal generators.
struct Certificate {
  std::string kind;  // membership | infinite-order | pair-distinct | joint-independence | lemma-help
  Verdict verdict = Verdict::Unknown;
  std::vector<std::string> assumptions;
  nlohmann::json problem;
  std::vector<std::string> unknowns;
  std::vector<CertEquation> equations;
  std::vector<CertStep> steps;
  std::vector<std::string> trace;
  nlohmann::json details = nlohmann::json::object();
};

struct ReplayLine {
  std::string text;
  bool ok = true;
};

struct ReplayResult {
  std::vector<ReplayLine> lines;
  bool ok = true;
};

/// Rebuilds the equation system from `problem`, compares it line by line with the
/// recorded one, re-executes every step and checks that they support the verdict.
ReplayResult replay(const Certificate& cert);

nlohmann::json to_json(const Certificate& cert);
Certificate certificate_from_json(const nlohmann::json& j);

}  // namespace hamloop

#endif  // HAMLOOP_CERTIFICATE_HPP
