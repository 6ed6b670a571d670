#pragma once

#include "qdt/action.hpp"
#include "qdt/network.hpp"
#include "qdt/rng.hpp"
#include "qdt/utility.hpp"

namespace qdt {

/// Bounds for randomly sampled epistemic states. Small enough to exhaust
/// interesting structure, large enough to exceed the three-level regime.
struct GeneratorConfig {
  int min_vars = 2;
  int max_vars = 4;
  int max_parents = 2;
  int max_rank = 2;                // finite table ranks in [0, max_rank]
  double infinite_row_chance = 0.2;  // chance the nonzero side of a row is inf
  std::int64_t max_util_level = 2;
  int max_util_clauses = 4;
  std::int64_t max_persistence = 2;
};

/// Random DAG over n variables (edges only go from lower to higher index)
/// with per-row-normalized random tables and random persistence strengths.
CausalNetwork random_network(Rng& rng, const GeneratorConfig& cfg);

/// Ordered first-match-wins utility clauses over random literal conjunctions.
std::vector<UtilClause> random_utility_clauses(Rng& rng, int n_vars, const GeneratorConfig& cfg);

/// Random formula of bounded depth (literals, negations, binary connectives).
Prop random_prop(Rng& rng, int n_vars, int depth = 2);

/// Random consistent conjunct over 1..max_lits distinct variables.
ActionConjunct random_conjunct(Rng& rng, int n_vars, int max_lits = 2);

/// Random DNF with 1..max_disjuncts conjuncts.
ActionDNF random_dnf(Rng& rng, int n_vars, int max_disjuncts = 2, int max_lits = 2);

/// Belief obtained by conditioning the stratified prior on a random
/// observation that is believable under it (rank finite).
RankingFunction random_belief(Rng& rng, const CausalNetwork& net);

}  // namespace qdt
