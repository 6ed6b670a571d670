#pragma once

#include <vector>

#include "qdt/network.hpp"

namespace qdt {

/// A consistent conjunction of literals to be enforced by intervention.
/// Literals are kept sorted by variable index; duplicates collapse and
/// conflicting targets are rejected at construction.
struct ActionConjunct {
  std::vector<std::pair<int, bool>> literals;  // (variable index, target value)

  static ActionConjunct of(std::vector<std::pair<int, bool>> lits);

  bool targets(int var) const;
  bool satisfied_by(World w) const;
  Prop to_prop() const;
};

/// A disjunction of conjunct actions: "do A or do B", each branch enforced
/// regardless of the current state.
struct ActionDNF {
  std::vector<ActionConjunct> disjuncts;  // non-empty

  static ActionDNF single(ActionConjunct c) { return ActionDNF{{std::move(c)}}; }

  Prop to_prop() const;
};

/// Disjunctive normal form of "not A". May be empty when A is tautological
/// over its variables (no consistent way to violate it).
std::vector<ActionConjunct> negate_dnf(const ActionDNF& a);

/// Persistence charge for variable i between a pre-action world and a
/// post-action world: s_i when the value changed without causal support
/// (roots always lack support; elsewhere support means the old value is now
/// surprising given the new parent assignment), 0 otherwise.
Rank spontaneity(const CausalNetwork& net, int i, World now, World prev);

/// Pre-action worlds attaining the minimum, per post-action world. Kept for
/// explainability; the update itself only needs the minimum value.
struct PostActionTrace {
  std::vector<std::vector<std::uint32_t>> argmin_prev;  // indexed by world bits
};

/// The persistence-aware belief update for a conjunct action, given the
/// belief held after the session's observations. For each world satisfying
/// the action, charges the causal terms of unforced non-root variables plus
/// the cheapest persistence-consistent pre-action explanation; all other
/// worlds become infinite. Computed as a residual sum so that infinite prior
/// ranks never need to be subtracted. Result is normalized.
RankingFunction post_action_ranking(const CausalNetwork& net, const RankingFunction& belief,
                                    const ActionConjunct& a, PostActionTrace* trace = nullptr);

/// Independent oracle for post_action_ranking: materializes the two-layer
/// (pre-action, post-action) joint ranking, linking each variable to its
/// previous value with the persistence rule — causal forces win, unforced
/// change costs s_i — then minimizes out the pre-action layer. Capped at 10
/// variables (2^(2n) pairs).
RankingFunction doubled_network_ranking(const CausalNetwork& net, const RankingFunction& belief,
                                        const ActionConjunct& a);

/// Pointwise minimum over the disjuncts' updates.
RankingFunction post_action_ranking_dnf(const CausalNetwork& net, const RankingFunction& belief,
                                        const ActionDNF& a, PostActionTrace* trace = nullptr);

}  // namespace qdt
