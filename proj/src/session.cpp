#include "qdt/session.hpp"

#include <algorithm>

#include "qdt/errors.hpp"

namespace qdt {

std::string ranking_table_text(const RankingFunction& k, std::span<const Variable> vars) {
  std::string out;
  for (std::uint32_t w = 0; w < k.size(); ++w) {
    Rank r = k.at(World{w});
    if (r.is_infinite()) continue;
    out += "  " + world_bitstring(World{w}, k.n_vars()) + "  " + world_assignment(World{w}, vars) +
           "  rank=" + r.to_string() + "\n";
  }
  return out;
}

nlohmann::ordered_json ranking_json(const RankingFunction& k, int n_vars) {
  nlohmann::ordered_json arr = nlohmann::ordered_json::array();
  for (std::uint32_t w = 0; w < k.size(); ++w) {
    Rank r = k.at(World{w});
    nlohmann::ordered_json entry;
    entry["world"] = world_bitstring(World{w}, n_vars);
    if (r.is_infinite())
      entry["rank"] = "inf";
    else
      entry["rank"] = r.finite_value();
    arr.push_back(std::move(entry));
  }
  return arr;
}

SessionState::SessionState(EpistemicState es, RiskPolicy policy, OughtMode default_mode)
    : es_(std::move(es)),
      belief_(es_.prior),
      policy_(policy),
      default_mode_(default_mode) {}

TranscriptEntry SessionState::execute(const QueryCommand& cmd) {
  const auto& vars = es_.network.variables();
  TranscriptEntry entry;
  entry.json["command"] = serialize_command(cmd, vars);

  switch (cmd.kind) {
    case QueryCommand::Kind::Observe: {
      try {
        belief_ = belief_.condition(cmd.formula);
      } catch (const ConditioningError&) {
        throw ConditioningError("contradictory observation");
      }
      entry.json["belief"] = ranking_json(belief_, es_.network.n_vars());
      break;
    }
    case QueryCommand::Kind::Do: {
      belief_ = post_action_ranking_dnf(es_.network, belief_, cmd.action);
      entry.json["belief"] = ranking_json(belief_, es_.network.n_vars());
      break;
    }
    case QueryCommand::Kind::Ought: {
      OughtMode mode = cmd.strong ? OughtMode::Strong : default_mode_;
      PostActionTrace trace;
      OughtVerdict v = ought_with_belief(es_.network, es_.utility, belief_, cmd.action, policy_,
                                         mode, &trace);
      entry.json["belief"] = ranking_json(v.post_ranking, es_.network.n_vars());
      entry.json["n_plus"] = v.action_result.n_plus;
      entry.json["n_minus"] = v.action_result.n_minus;
      entry.json["verdict"] = v.action_value;
      entry.json["baseline"] = v.baseline_value;
      entry.json["assertable"] = v.assertable;
      std::vector<std::uint32_t> argmins;
      for (std::uint32_t w = 0; w < v.post_ranking.size(); ++w)
        for (std::uint32_t p : trace.argmin_prev[w])
          if (std::find(argmins.begin(), argmins.end(), p) == argmins.end()) argmins.push_back(p);
      std::sort(argmins.begin(), argmins.end());
      nlohmann::ordered_json arr = nlohmann::ordered_json::array();
      for (std::uint32_t p : argmins) arr.push_back(world_bitstring(World{p}, es_.network.n_vars()));
      entry.json["argmin_prev_worlds"] = std::move(arr);
      if (v.counter_action_value) entry.json["counter_action"] = *v.counter_action_value;

      entry.text = v.assertable ? "ASSERTABLE" : "NOT ASSERTABLE";
      entry.text += " (action " + std::to_string(v.action_value) +
                    (v.assertable ? " > " : " <= ") + "baseline " +
                    std::to_string(v.baseline_value);
      if (v.counter_action_value)
        entry.text += ", counter " + std::to_string(*v.counter_action_value);
      entry.text += ")\n";
      break;
    }
    case QueryCommand::Kind::Dmc: {
      check_prop_vars(cmd.formula, es_.network.n_vars());
      RankingFunction post = post_action_ranking_dnf(es_.network, belief_, cmd.action);
      bool holds = belief_.rank_of(!cmd.formula) == Rank() && post.rank_of(!cmd.formula) > Rank();
      entry.json["belief"] = ranking_json(post, es_.network.n_vars());
      entry.json["holds"] = holds;
      entry.text = holds ? "true\n" : "false\n";
      break;
    }
    case QueryCommand::Kind::ShowRanking: {
      entry.json["belief"] = ranking_json(belief_, es_.network.n_vars());
      entry.text = ranking_table_text(belief_, vars);
      break;
    }
    case QueryCommand::Kind::ShowUtility: {
      entry.json["belief"] = ranking_json(belief_, es_.network.n_vars());
      nlohmann::ordered_json arr = nlohmann::ordered_json::array();
      for (std::uint32_t w = 0; w < world_count(es_.network.n_vars()); ++w) {
        entry.text += "  " + world_bitstring(World{w}, es_.network.n_vars()) + "  " +
                      world_assignment(World{w}, vars) +
                      "  utility=" + std::to_string(es_.utility.at(World{w})) + "\n";
        arr.push_back(es_.utility.at(World{w}));
      }
      entry.json["utility"] = std::move(arr);
      break;
    }
    case QueryCommand::Kind::Reset: {
      belief_ = es_.prior;
      entry.json["belief"] = ranking_json(belief_, es_.network.n_vars());
      break;
    }
  }

  history_.push_back(cmd);
  return entry;
}

}  // namespace qdt
