#pragma once

#include <vector>

#include "qdt/decision.hpp"
#include "qdt/network.hpp"

// The two worked models, built programmatically so the core tests do not
// depend on the parser. Variable order fixes the world indexing used by the
// frozen tables below.

namespace qdt::fixtures {

// c=0, r=1, u=2. Rain on a clear day costs 1; rain without an umbrella is the
// only bad outcome.
inline CausalNetwork umbrella_network() {
  NetworkDraft d;
  d.variables = {{"c", 0, 1}, {"r", 1, 1}, {"u", 2, 1}};
  d.edges = {{0, 1}};
  d.tables = {
      {0, {}, {{Rank(), Rank()}}},
      {1, {0}, {{Rank::finite(1), Rank()}, {Rank(), Rank()}}},  // row 0: c=F, row 1: c=T
      {2, {}, {{Rank(), Rank()}}},
  };
  return CausalNetwork::build(std::move(d));
}

inline UtilityRanking umbrella_utility() {
  std::vector<UtilClause> clauses = {{-1, Prop::var(1) & !Prop::var(2)}};
  return UtilityRanking::from_clauses(3, clauses);
}

inline EpistemicState umbrella_state() {
  return EpistemicState::make(umbrella_network(), umbrella_utility());
}

// u=0, n=1, l=2. The light is a function of switch position and switch type;
// the switch is initially believed normal (rank 1 against !n).
inline CausalNetwork switch_network() {
  NetworkDraft d;
  d.variables = {{"u", 0, 1}, {"n", 1, 1}, {"l", 2, 1}};
  d.edges = {{0, 2}, {1, 2}};
  auto inf = Rank::infinity();
  d.tables = {
      {0, {}, {{Rank(), Rank()}}},
      {1, {}, {{Rank(), Rank::finite(1)}}},
      // rows indexed by (u bit 0, n bit 1): l holds iff u == n
      {2, {0, 1}, {{Rank(), inf}, {inf, Rank()}, {inf, Rank()}, {Rank(), inf}}},
  };
  return CausalNetwork::build(std::move(d));
}

inline UtilityRanking switch_utility() {
  std::vector<UtilClause> clauses = {{-1, !Prop::var(2)}};
  return UtilityRanking::from_clauses(3, clauses);
}

inline EpistemicState switch_state() {
  return EpistemicState::make(switch_network(), switch_utility());
}

// Frozen joint for the switch model: worlds (u,n,l) and (!u,n,!l) at 0,
// (u,!n,!l) and (!u,!n,l) at 1, everything else impossible.
inline std::vector<Rank> switch_prior_table() {
  auto inf = Rank::infinity();
  return {inf, Rank::finite(1), Rank(), inf, Rank::finite(1), inf, inf, Rank()};
}

// After observing !l: (!u,n,!l) at 0, (u,!n,!l) at 1.
inline std::vector<Rank> switch_after_dark_table() {
  auto inf = Rank::infinity();
  return {inf, Rank::finite(1), Rank(), inf, inf, inf, inf, inf};
}

// Pushing the switch up after observing !l: (u,n,l) at 0, (u,!n,!l) at 1.
inline std::vector<Rank> switch_push_up_table() {
  auto inf = Rank::infinity();
  return {inf, Rank::finite(1), inf, inf, inf, inf, inf, Rank()};
}

// Pushing it down after additionally observing u: (!u,!n,l) at 0, (!u,n,!l) at 1.
inline std::vector<Rank> switch_push_down_table() {
  auto inf = Rank::infinity();
  return {inf, inf, Rank::finite(1), inf, Rank(), inf, inf, inf};
}

}  // namespace qdt::fixtures
