#pragma once

#include <string>

#include "json.hpp"
#include "qdt/decision.hpp"
#include "qdt/dsl.hpp"

namespace qdt {

/// Pretty world table of the finite-rank worlds, canonical world order:
///   "  100  u=T n=F l=F  rank=1\n" ...
std::string ranking_table_text(const RankingFunction& k, std::span<const Variable> vars);

/// Full belief array for the JSON trace: every world in canonical order,
/// rank as an integer or "inf".
nlohmann::ordered_json ranking_json(const RankingFunction& k, int n_vars);

struct TranscriptEntry {
  std::string text;  // may be empty (observe/do/reset produce no output)
  nlohmann::ordered_json json;
};

/// A query session: observations and enacted actions update the belief;
/// ought and dmc evaluate hypotheticals and leave it untouched.
class SessionState {
 public:
  SessionState(EpistemicState es, RiskPolicy policy, OughtMode default_mode);

  TranscriptEntry execute(const QueryCommand& cmd);

  const RankingFunction& belief() const { return belief_; }
  const EpistemicState& epistemic_state() const { return es_; }
  const std::vector<QueryCommand>& history() const { return history_; }

 private:
  EpistemicState es_;
  RankingFunction belief_;
  RiskPolicy policy_;
  OughtMode default_mode_;
  std::vector<QueryCommand> history_;
};

}  // namespace qdt
