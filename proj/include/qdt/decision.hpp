#pragma once

#include <optional>

#include "qdt/action.hpp"
#include "qdt/network.hpp"
#include "qdt/utility.hpp"

namespace qdt {

/// The three ingredients a conditional ought needs: beliefs (as a stratified
/// prior over the network), causal structure, and desirability.
struct EpistemicState {
  CausalNetwork network;
  UtilityRanking utility;
  RankingFunction prior;

  static EpistemicState make(CausalNetwork net, UtilityRanking mu);
};

/// Ranks the expected utility of phi under the post-event ranking k_post:
/// n_plus is the largest level i whose formula remains seriously reachable
/// within phi after discounting by surprise (max over i of i - rank), clamped
/// at 0; n_minus symmetrically for negative levels. Requires rank(phi) = 0
/// under k_post.
UtilityRankResult expected_utility_rank(const Prop& phi, const RankingFunction& k_post,
                                        const UtilityRanking& mu);

/// Three-level special case with risk aversion built in: -1 when disaster is
/// a serious possibility given phi, +1 when it is not and success is, else 0.
/// Requires mu to take values in {-1, 0, +1}.
int three_level_rank(const Prop& phi, const RankingFunction& k_post, const UtilityRanking& mu);

enum class OughtMode {
  Standard,  // acting must beat inaction
  Strong,    // acting must beat both inaction and doing the opposite
};

struct OughtVerdict {
  bool assertable = false;
  std::int64_t action_value = 0;
  std::int64_t baseline_value = 0;
  std::optional<std::int64_t> counter_action_value;  // Strong mode, when "not A" is enactable
  OughtMode mode = OughtMode::Standard;
  UtilityRankResult action_result;
  UtilityRankResult baseline_result;
  RankingFunction post_ranking;  // the hypothetical post-action belief
};

/// Assertability of "given the beliefs in `belief`, one ought to do a":
/// compares the utility rank of acting (under the persistence-aware update)
/// against the utility rank of leaving the belief alone.
OughtVerdict ought_with_belief(const CausalNetwork& net, const UtilityRanking& mu,
                               const RankingFunction& belief, const ActionDNF& a,
                               RiskPolicy policy = RiskPolicy::RiskAverse,
                               OughtMode mode = OughtMode::Standard,
                               PostActionTrace* trace = nullptr);

/// O(a | c): conditions the prior on c first.
OughtVerdict ought(const EpistemicState& es, const ActionDNF& a, const Prop& c,
                   RiskPolicy policy = RiskPolicy::RiskAverse,
                   OughtMode mode = OughtMode::Standard);

/// Decision-making conditional "if I were to do a, b would come about":
/// not-b is a serious possibility before acting and surprising after.
bool dmc_with_belief(const CausalNetwork& net, const RankingFunction& belief, const ActionDNF& a,
                     const Prop& b);

bool dmc(const EpistemicState& es, const ActionDNF& a, const Prop& b, const Prop& c);

}  // namespace qdt
