#pragma once

#include <vector>

#include "qdt/prop.hpp"
#include "qdt/rank.hpp"
#include "qdt/world.hpp"

namespace qdt {

/// A total belief ranking over all 2^n worlds. Invariant: the minimum rank is
/// 0 and at least one world is finite. Worlds are indexed in binary counting
/// order (bit 0 = variable index 0). Immutable after construction.
class RankingFunction {
 public:
  /// Shifts the table so the minimum becomes 0. Throws DegenerateBeliefError
  /// if every world is infinite.
  static RankingFunction normalized(int n_vars, std::vector<Rank> ranks);

  /// Accepts a table that is already normalized; throws if the minimum is not
  /// exactly 0. Used where normalization holds by construction, so a violation
  /// signals a computation bug rather than bad input.
  static RankingFunction exact(int n_vars, std::vector<Rank> ranks);

  int n_vars() const { return n_vars_; }
  std::uint32_t size() const { return static_cast<std::uint32_t>(ranks_.size()); }

  Rank at(World w) const { return ranks_[w.bits]; }
  const std::vector<Rank>& table() const { return ranks_; }

  /// min rank over models of p; infinity when p has no finitely ranked model.
  Rank rank_of(const Prop& p) const;

  /// rank(p & q) - rank(q). Throws ConditioningError when rank(q) is infinite.
  Rank cond_rank(const Prop& p, const Prop& q) const;

  /// Belief revision by observation: models of q keep their rank shifted down
  /// by rank(q), everything else becomes infinite.
  RankingFunction condition(const Prop& q) const;

  friend bool operator==(const RankingFunction&, const RankingFunction&) = default;

 private:
  RankingFunction(int n_vars, std::vector<Rank> ranks)
      : n_vars_(n_vars), ranks_(std::move(ranks)) {}

  int n_vars_;
  std::vector<Rank> ranks_;
};

}  // namespace qdt
