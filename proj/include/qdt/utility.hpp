#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "qdt/prop.hpp"
#include "qdt/rank.hpp"

namespace qdt {

/// One ordered utility clause: worlds matching the formula get the level,
/// first match wins, unmatched worlds get 0.
struct UtilClause {
  std::int64_t level = 0;
  Prop formula;
};

/// Integer utility ranking of worlds: sign is the desirability direction,
/// magnitude i means utility of order 1/eps^i.
class UtilityRanking {
 public:
  static UtilityRanking from_values(int n_vars, std::vector<std::int64_t> mu);
  static UtilityRanking from_clauses(int n_vars, std::span<const UtilClause> clauses);

  int n_vars() const { return n_vars_; }
  std::int64_t at(World w) const { return mu_[w.bits]; }
  std::int64_t max_abs_level() const { return max_abs_level_; }
  const std::vector<std::int64_t>& values() const { return mu_; }

  friend bool operator==(const UtilityRanking&, const UtilityRanking&) = default;

 private:
  UtilityRanking(int n_vars, std::vector<std::int64_t> mu, std::int64_t max_abs)
      : n_vars_(n_vars), mu_(std::move(mu)), max_abs_level_(max_abs) {}

  int n_vars_;
  std::vector<std::int64_t> mu_;
  std::int64_t max_abs_level_;
};

/// Outcome of ranking an expected utility: the best reachable positive level
/// discounted by its surprise, the symmetric negative level, and either their
/// difference or an ambiguity marker when both sides tie above zero.
struct UtilityRankResult {
  std::int64_t n_plus = 0;
  std::int64_t n_minus = 0;

  bool ambiguous() const { return n_plus == n_minus && n_plus > 0; }
  std::int64_t value() const { return n_plus - n_minus; }  // meaningful when !ambiguous()

  std::string to_string() const {
    if (ambiguous()) return "ambiguous(" + std::to_string(n_plus) + ")";
    return std::to_string(value());
  }

  friend bool operator==(const UtilityRankResult&, const UtilityRankResult&) = default;
};

enum class RiskPolicy {
  RiskAverse,  // ambiguous(n) resolves to -n
  Strict,      // resolving an ambiguous value is an error
};

/// Collapses a result to a comparable integer under the policy.
std::int64_t resolve(const UtilityRankResult& r, RiskPolicy policy);

}  // namespace qdt
