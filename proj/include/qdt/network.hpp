#pragma once

#include <string>
#include <utility>
#include <vector>

#include "qdt/ranking.hpp"

namespace qdt {

struct RankPair {
  Rank if_true;
  Rank if_false;

  Rank at(bool value) const { return value ? if_true : if_false; }
};

/// Conditional rank table for one node: one row per assignment of its parents
/// (row index = parent bits, parents listed in ascending variable order).
/// Every row must contain a 0 so that stratified joints stay normalized.
struct ConditionalRankTable {
  int node = 0;
  std::vector<int> parents;  // ascending variable indices
  std::vector<RankPair> rows;

  std::uint32_t row_index(World w) const {
    std::uint32_t idx = 0;
    for (std::size_t j = 0; j < parents.size(); ++j)
      if (w.value(parents[j])) idx |= (1u << j);
    return idx;
  }
};

struct AtomicAction {
  int variable = 0;
  bool value = true;
};

/// Unvalidated network description, as produced by a parser or generator.
struct NetworkDraft {
  std::vector<Variable> variables;
  std::vector<std::pair<int, int>> edges;  // parent -> child
  std::vector<ConditionalRankTable> tables;
};

struct Diagnostic {
  std::string code;  // "cycle", "row not normalized", ...
  std::string message;
};

/// Checks acyclicity, table/parent-set agreement, per-row normalization and
/// basic well-formedness. Returns every violation found.
std::vector<Diagnostic> validate_network(const NetworkDraft& draft);

/// A validated causal network: DAG + conditional rank tables + persistence
/// strengths. Immutable after construction; all operations are pure.
class CausalNetwork {
 public:
  /// Throws SemanticError listing all diagnostics when the draft is invalid.
  static CausalNetwork build(NetworkDraft draft);

  int n_vars() const { return static_cast<int>(vars_.size()); }
  const std::vector<Variable>& variables() const { return vars_; }
  const Variable& variable(int i) const { return vars_[static_cast<std::size_t>(i)]; }
  const std::vector<int>& parents(int i) const { return parents_[static_cast<std::size_t>(i)]; }
  const ConditionalRankTable& table(int i) const { return tables_[static_cast<std::size_t>(i)]; }
  const std::vector<std::pair<int, int>>& edges() const { return edges_; }
  bool is_root(int i) const { return parents(i).empty(); }

  /// Topological order of variable indices (parents before children).
  const std::vector<int>& topo_order() const { return topo_; }

  /// All strict descendants of node i.
  std::vector<int> descendants(int i) const;

  /// Rank of the value X_i takes at w, given w's parent assignment.
  Rank cond_rank(int i, World w) const {
    const auto& t = tables_[static_cast<std::size_t>(i)];
    return t.rows[t.row_index(w)].at(w.value(i));
  }

  /// Rank of X_i = value at w's parent assignment (ignores w's own value of i).
  Rank cond_rank_value(int i, World w, bool value) const {
    const auto& t = tables_[static_cast<std::size_t>(i)];
    return t.rows[t.row_index(w)].at(value);
  }

  /// The joint ranking obtained by summing per-node conditional ranks at each
  /// world. Normalized by construction (every row contains a 0).
  RankingFunction stratified_joint() const;

  /// Observation-free update for an atomic intervention: worlds violating the
  /// action become infinite, the rest keep the sum of every other node's
  /// conditional rank (the acted-on node's own term is dropped, which is the
  /// subtraction-free form of removing kappa(A | pa_A)). Does not account for
  /// prior observations or persistence; the persistence-aware update lives in
  /// action.hpp.
  RankingFunction atomic_action_update(AtomicAction a) const;

 private:
  CausalNetwork() = default;

  std::vector<Variable> vars_;
  std::vector<std::pair<int, int>> edges_;
  std::vector<std::vector<int>> parents_;
  std::vector<ConditionalRankTable> tables_;
  std::vector<int> topo_;
};

}  // namespace qdt
