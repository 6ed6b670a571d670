#include "qdt/ranking.hpp"

#include <string>

#include "qdt/errors.hpp"

namespace qdt {

namespace {

void check_shape(int n_vars, const std::vector<Rank>& ranks) {
  if (n_vars < 0 || n_vars > kMaxVariables)
    throw CapError("ranking over " + std::to_string(n_vars) + " variables exceeds the cap of " +
                   std::to_string(kMaxVariables));
  if (ranks.size() != world_count(n_vars))
    throw SemanticError("ranking table has " + std::to_string(ranks.size()) +
                        " entries, expected " + std::to_string(world_count(n_vars)));
}

Rank min_rank(const std::vector<Rank>& ranks) {
  Rank m = Rank::infinity();
  for (Rank r : ranks) m = min(m, r);
  return m;
}

}  // namespace

RankingFunction RankingFunction::normalized(int n_vars, std::vector<Rank> ranks) {
  check_shape(n_vars, ranks);
  Rank m = min_rank(ranks);
  if (m.is_infinite()) throw DegenerateBeliefError("every world has infinite rank");
  if (m > Rank()) {
    for (Rank& r : ranks) r = r - m;
  }
  return RankingFunction(n_vars, std::move(ranks));
}

RankingFunction RankingFunction::exact(int n_vars, std::vector<Rank> ranks) {
  check_shape(n_vars, ranks);
  Rank m = min_rank(ranks);
  if (m.is_infinite()) throw DegenerateBeliefError("every world has infinite rank");
  if (m != Rank())
    throw EngineError("ranking expected to be normalized but minimum is " + m.to_string());
  return RankingFunction(n_vars, std::move(ranks));
}

Rank RankingFunction::rank_of(const Prop& p) const {
  check_prop_vars(p, n_vars_);
  Rank m = Rank::infinity();
  for (std::uint32_t w = 0; w < size(); ++w) {
    if (ranks_[w].is_finite() && p.eval(World{w})) m = min(m, ranks_[w]);
  }
  return m;
}

Rank RankingFunction::cond_rank(const Prop& p, const Prop& q) const {
  Rank kq = rank_of(q);
  if (kq.is_infinite()) throw ConditioningError("conditioning on a disbelieved proposition");
  return rank_of(p & q) - kq;
}

RankingFunction RankingFunction::condition(const Prop& q) const {
  Rank kq = rank_of(q);
  if (kq.is_infinite()) throw ConditioningError("conditioning on a disbelieved proposition");
  std::vector<Rank> out(ranks_.size(), Rank::infinity());
  for (std::uint32_t w = 0; w < size(); ++w) {
    if (q.eval(World{w}) && ranks_[w].is_finite()) out[w] = ranks_[w] - kq;
  }
  // Some model of q attains rank kq, so the result has minimum 0.
  return exact(n_vars_, std::move(out));
}

}  // namespace qdt
