#include "qdt/decision.hpp"

#include "qdt/errors.hpp"

namespace qdt {

EpistemicState EpistemicState::make(CausalNetwork net, UtilityRanking mu) {
  if (mu.n_vars() != net.n_vars())
    throw SemanticError("utility ranking and network variable sets differ");
  RankingFunction prior = net.stratified_joint();
  return EpistemicState{std::move(net), std::move(mu), std::move(prior)};
}

UtilityRankResult expected_utility_rank(const Prop& phi, const RankingFunction& k_post,
                                        const UtilityRanking& mu) {
  if (mu.n_vars() != k_post.n_vars())
    throw SemanticError("utility ranking and belief ranking variable sets differ");
  if (k_post.rank_of(phi) != Rank())
    throw InvalidPostRankingError("post ranking must give the evaluated proposition rank 0");

  UtilityRankResult out;
  for (std::uint32_t w = 0; w < k_post.size(); ++w) {
    Rank r = k_post.at(World{w});
    if (r.is_infinite() || !phi.eval(World{w})) continue;
    std::int64_t level = mu.at(World{w});
    if (level > 0)
      out.n_plus = std::max(out.n_plus, level - r.finite_value());
    else if (level < 0)
      out.n_minus = std::max(out.n_minus, -level - r.finite_value());
  }
  return out;
}

int three_level_rank(const Prop& phi, const RankingFunction& k_post, const UtilityRanking& mu) {
  if (mu.max_abs_level() > 1)
    throw SemanticError("three-level rating requires utility levels in {-1, 0, +1}");
  if (k_post.rank_of(phi) != Rank())
    throw InvalidPostRankingError("post ranking must give the evaluated proposition rank 0");

  Rank disaster = Rank::infinity();
  Rank success = Rank::infinity();
  for (std::uint32_t w = 0; w < k_post.size(); ++w) {
    Rank r = k_post.at(World{w});
    if (r.is_infinite() || !phi.eval(World{w})) continue;
    std::int64_t level = mu.at(World{w});
    if (level < 0)
      disaster = min(disaster, r);
    else if (level > 0)
      success = min(success, r);
  }
  if (disaster == Rank()) return -1;
  if (success == Rank()) return +1;
  return 0;
}

OughtVerdict ought_with_belief(const CausalNetwork& net, const UtilityRanking& mu,
                               const RankingFunction& belief, const ActionDNF& a,
                               RiskPolicy policy, OughtMode mode, PostActionTrace* trace) {
  UtilityRankResult baseline_result = expected_utility_rank(Prop::top(), belief, mu);
  RankingFunction post = post_action_ranking_dnf(net, belief, a, trace);
  UtilityRankResult action_result = expected_utility_rank(a.to_prop(), post, mu);
  std::int64_t baseline_value = resolve(baseline_result, policy);
  std::int64_t action_value = resolve(action_result, policy);
  bool assertable = action_value > baseline_value;

  std::optional<std::int64_t> counter_value;
  if (mode == OughtMode::Strong) {
    std::vector<ActionConjunct> opposite = negate_dnf(a);
    if (!opposite.empty()) {
      ActionDNF counter{std::move(opposite)};
      RankingFunction counter_post = post_action_ranking_dnf(net, belief, counter);
      counter_value = resolve(expected_utility_rank(counter.to_prop(), counter_post, mu), policy);
      assertable = assertable && action_value > *counter_value;
    }
    // When "not a" cannot be enacted (a holds in every world), only the
    // baseline comparison remains.
  }
  return OughtVerdict{assertable,   action_value,    baseline_value, counter_value,
                      mode,         action_result,   baseline_result, std::move(post)};
}

OughtVerdict ought(const EpistemicState& es, const ActionDNF& a, const Prop& c, RiskPolicy policy,
                   OughtMode mode) {
  return ought_with_belief(es.network, es.utility, es.prior.condition(c), a, policy, mode);
}

bool dmc_with_belief(const CausalNetwork& net, const RankingFunction& belief, const ActionDNF& a,
                     const Prop& b) {
  check_prop_vars(b, net.n_vars());
  if (belief.rank_of(!b) != Rank()) return false;
  RankingFunction post = post_action_ranking_dnf(net, belief, a);
  return post.rank_of(!b) > Rank();
}

bool dmc(const EpistemicState& es, const ActionDNF& a, const Prop& b, const Prop& c) {
  return dmc_with_belief(es.network, es.prior.condition(c), a, b);
}

}  // namespace qdt
