#pragma once

#include "qdt/network.hpp"

// Independent reference implementations kept out of the library on purpose:
// the production code paths must never share logic with these.

namespace qdt::oracles {

// Atomic intervention via the explicit augmented-network construction: a
// fresh regulator node with values {enforce-true, enforce-false, idle} is
// attached to the acted-on variable, the acted-on variable's table is
// replaced by the three-case rule (idle keeps the old table, enforcement
// pins the value), and the joint is conditioned on the enforcing value.
inline RankingFunction augmented_action_oracle(const CausalNetwork& net, AtomicAction a) {
  const int n = net.n_vars();
  const std::uint32_t count = world_count(n);

  enum class Regulator { EnforceTrue, EnforceFalse, Idle };
  auto acted_node_rank = [&](World w, Regulator r) -> Rank {
    switch (r) {
      case Regulator::Idle:
        return net.cond_rank(a.variable, w);
      case Regulator::EnforceTrue:
        return w.value(a.variable) ? Rank() : Rank::infinity();
      case Regulator::EnforceFalse:
        return w.value(a.variable) ? Rank::infinity() : Rank();
    }
    return Rank::infinity();
  };

  // The regulator is a root with all three values at rank 0; conditioning on
  // the enforcing value subtracts the slice minimum, which normalized() does.
  Regulator enforce = a.value ? Regulator::EnforceTrue : Regulator::EnforceFalse;
  std::vector<Rank> slice(count);
  for (std::uint32_t wb = 0; wb < count; ++wb) {
    World w{wb};
    Rank sum = acted_node_rank(w, enforce);
    for (int j = 0; j < n && sum.is_finite(); ++j) {
      if (j == a.variable) continue;
      sum += net.cond_rank(j, w);
    }
    slice[wb] = sum;
  }
  return RankingFunction::normalized(n, std::move(slice));
}

// Per-world joint recomputed by scanning each table for the matching parent
// assignment instead of indexing it.
inline RankingFunction naive_joint(const CausalNetwork& net) {
  const int n = net.n_vars();
  const std::uint32_t count = world_count(n);
  std::vector<Rank> ranks(count);
  for (std::uint32_t wb = 0; wb < count; ++wb) {
    World w{wb};
    Rank sum;
    for (int i = 0; i < n; ++i) {
      const ConditionalRankTable& t = net.table(i);
      for (std::uint32_t row = 0; row < t.rows.size(); ++row) {
        bool matches = true;
        for (std::size_t j = 0; j < t.parents.size(); ++j)
          if (w.value(t.parents[j]) != (((row >> j) & 1u) != 0)) matches = false;
        if (matches) {
          sum += w.value(i) ? t.rows[row].if_true : t.rows[row].if_false;
          break;
        }
      }
    }
    ranks[wb] = sum;
  }
  return RankingFunction::normalized(n, std::move(ranks));
}

}  // namespace qdt::oracles
