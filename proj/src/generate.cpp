#include "qdt/generate.hpp"

#include <algorithm>

namespace qdt {

CausalNetwork random_network(Rng& rng, const GeneratorConfig& cfg) {
  NetworkDraft draft;
  const int n = rng.range(cfg.min_vars, cfg.max_vars);
  for (int i = 0; i < n; ++i) {
    std::string name(1, static_cast<char>('a' + i % 26));
    if (i >= 26) name += std::to_string(i / 26);
    draft.variables.push_back(
        Variable{name, i, rng.range(1, static_cast<int>(cfg.max_persistence))});
  }
  for (int i = 0; i < n; ++i) {
    // Candidate parents are lower-indexed variables, so the graph is acyclic
    // by construction.
    std::vector<int> parents;
    for (int p = 0; p < i; ++p)
      if (static_cast<int>(parents.size()) < cfg.max_parents && rng.coin(0.4)) parents.push_back(p);
    ConditionalRankTable t;
    t.node = i;
    t.parents = parents;
    const std::uint32_t rows = 1u << parents.size();
    for (std::uint32_t r = 0; r < rows; ++r) {
      bool zero_on_true = rng.coin();
      Rank other = rng.coin(cfg.infinite_row_chance)
                       ? Rank::infinity()
                       : Rank::finite(rng.range(0, cfg.max_rank));
      t.rows.push_back(zero_on_true ? RankPair{Rank(), other} : RankPair{other, Rank()});
    }
    draft.tables.push_back(std::move(t));
    for (int p : parents) draft.edges.emplace_back(p, i);
  }
  return CausalNetwork::build(std::move(draft));
}

std::vector<UtilClause> random_utility_clauses(Rng& rng, int n_vars, const GeneratorConfig& cfg) {
  std::vector<UtilClause> clauses;
  const int count = rng.range(0, cfg.max_util_clauses);
  for (int i = 0; i < count; ++i) {
    std::int64_t level = 0;
    while (level == 0)
      level = rng.range(static_cast<int>(-cfg.max_util_level),
                        static_cast<int>(cfg.max_util_level));
    ActionConjunct c = random_conjunct(rng, n_vars, 2);
    clauses.push_back(UtilClause{level, c.to_prop()});
  }
  return clauses;
}

Prop random_prop(Rng& rng, int n_vars, int depth) {
  if (depth <= 0 || rng.coin(0.4)) {
    Prop p = Prop::var(rng.range(0, n_vars - 1));
    return rng.coin() ? p : !p;
  }
  Prop a = random_prop(rng, n_vars, depth - 1);
  Prop b = random_prop(rng, n_vars, depth - 1);
  return rng.coin() ? (a & b) : (a | b);
}

ActionConjunct random_conjunct(Rng& rng, int n_vars, int max_lits) {
  const int count = rng.range(1, std::min(max_lits, n_vars));
  std::vector<int> vars;
  while (static_cast<int>(vars.size()) < count) {
    int v = rng.range(0, n_vars - 1);
    if (std::find(vars.begin(), vars.end(), v) == vars.end()) vars.push_back(v);
  }
  std::vector<std::pair<int, bool>> lits;
  for (int v : vars) lits.emplace_back(v, rng.coin());
  return ActionConjunct::of(std::move(lits));
}

ActionDNF random_dnf(Rng& rng, int n_vars, int max_disjuncts, int max_lits) {
  const int count = rng.range(1, max_disjuncts);
  std::vector<ActionConjunct> disjuncts;
  for (int i = 0; i < count; ++i) disjuncts.push_back(random_conjunct(rng, n_vars, max_lits));
  return ActionDNF{std::move(disjuncts)};
}

RankingFunction random_belief(Rng& rng, const CausalNetwork& net) {
  RankingFunction prior = net.stratified_joint();
  for (int attempt = 0; attempt < 8; ++attempt) {
    Prop obs = random_prop(rng, net.n_vars());
    if (prior.rank_of(obs).is_finite()) return prior.condition(obs);
  }
  return prior;
}

}  // namespace qdt
