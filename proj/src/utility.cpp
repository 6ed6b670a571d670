#include "qdt/utility.hpp"

#include <cstdlib>

#include "qdt/errors.hpp"

namespace qdt {

UtilityRanking UtilityRanking::from_values(int n_vars, std::vector<std::int64_t> mu) {
  if (n_vars < 0 || n_vars > kMaxVariables) throw CapError("too many variables for a utility ranking");
  if (mu.size() != world_count(n_vars))
    throw SemanticError("utility table has " + std::to_string(mu.size()) + " entries, expected " +
                        std::to_string(world_count(n_vars)));
  std::int64_t max_abs = 0;
  for (std::int64_t v : mu) max_abs = std::max(max_abs, std::abs(v));
  return UtilityRanking(n_vars, std::move(mu), max_abs);
}

UtilityRanking UtilityRanking::from_clauses(int n_vars, std::span<const UtilClause> clauses) {
  for (const UtilClause& c : clauses) check_prop_vars(c.formula, n_vars);
  std::vector<std::int64_t> mu(world_count(n_vars), 0);
  for (std::uint32_t w = 0; w < world_count(n_vars); ++w) {
    for (const UtilClause& c : clauses) {
      if (c.formula.eval(World{w})) {
        mu[w] = c.level;
        break;
      }
    }
  }
  return from_values(n_vars, std::move(mu));
}

std::int64_t resolve(const UtilityRankResult& r, RiskPolicy policy) {
  if (!r.ambiguous()) return r.value();
  if (policy == RiskPolicy::Strict)
    throw AmbiguityError("expected utility is ambiguous at level " + std::to_string(r.n_plus));
  return -r.n_plus;
}

}  // namespace qdt
