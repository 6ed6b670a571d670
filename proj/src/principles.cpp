#include "qdt/principles.hpp"

#include "qdt/dsl.hpp"
#include "qdt/epsilon.hpp"
#include "qdt/errors.hpp"

namespace qdt {

Principle principle_from_name(const std::string& name) {
  if (name == "sure-thing") return Principle::SureThing;
  if (name == "weak-consistency") return Principle::WeakConsistency;
  throw SemanticError("unknown principle '" + name + "'");
}

std::string principle_name(Principle p) {
  return p == Principle::SureThing ? "sure-thing" : "weak-consistency";
}

namespace {

/// Replays every utility rank the verdict relied on through the numeric
/// semantics, plus the post-action ranking itself through the two-layer
/// numeric marginal. True when everything agrees, meaning the violation is a
/// property of the calculus rather than an implementation fault.
bool oracle_validates(const CausalNetwork& net, const UtilityRanking& mu,
                      const RankingFunction& belief, const ActionDNF& a,
                      const OughtVerdict& v, std::uint64_t seed) {
  EpsilonModel em;  // unit coefficients for the ranking checks
  for (const ActionConjunct& c : a.disjuncts)
    if (!check_post_action_agreement(net, em, belief, c).agreed()) return false;
  if (!check_utility_agreement(Prop::top(), belief, mu, em, 20, mix_seed(seed, 1)).agreed())
    return false;
  if (!check_utility_agreement(a.to_prop(), v.post_ranking, mu, em, 20, mix_seed(seed, 2))
           .agreed())
    return false;
  return true;
}

std::string ought_line(const ActionDNF& a, std::span<const Variable> vars) {
  QueryCommand cmd;
  cmd.kind = QueryCommand::Kind::Ought;
  cmd.action = a;
  return serialize_command(cmd, vars);
}

std::string observe_line(const Prop& p, std::span<const Variable> vars) {
  QueryCommand cmd;
  cmd.kind = QueryCommand::Kind::Observe;
  cmd.formula = p;
  return serialize_command(cmd, vars);
}

}  // namespace

PrincipleReport check_principle(Principle principle, const GeneratorConfig& cfg,
                                std::uint64_t trials, std::uint64_t seed) {
  if (cfg.max_vars > 4) throw SemanticError("principle search is bounded at 4 variables");

  PrincipleReport report;
  report.principle = principle;
  report.seed = seed;
  report.trials_requested = trials;

  for (std::uint64_t trial = 0; trial < trials; ++trial) {
    const std::uint64_t trial_seed = mix_seed(seed, trial);
    Rng rng(trial_seed);

    CausalNetwork net = random_network(rng, cfg);
    const int n = net.n_vars();
    std::vector<UtilClause> clauses = random_utility_clauses(rng, n, cfg);
    UtilityRanking mu = UtilityRanking::from_clauses(n, clauses);
    EpistemicState es = EpistemicState::make(net, mu);

    ActionDNF a = random_dnf(rng, n);
    Prop c = random_prop(rng, n);
    const auto& vars = es.network.variables();

    if (principle == Principle::SureThing) {
      if (es.prior.rank_of(c).is_infinite() || es.prior.rank_of(!c).is_infinite()) {
        ++report.trials_skipped;
        continue;
      }
      ++report.trials_run;
      OughtVerdict given_c = ought(es, a, c);
      if (!given_c.assertable) continue;
      OughtVerdict given_not_c = ought(es, a, !c);
      if (!given_not_c.assertable) continue;
      OughtVerdict unconditional = ought(es, a, Prop::top());
      if (unconditional.assertable) continue;

      Counterexample ce;
      ce.trial = trial;
      ce.model_text = serialize_model(document_from(es.network, clauses, "counterexample"));
      ce.query_text = observe_line(c, vars) + "\n" + ought_line(a, vars) + "\nreset\n" +
                      observe_line(!c, vars) + "\n" + ought_line(a, vars) + "\nreset\n" +
                      ought_line(a, vars) + "\n";
      ce.detail = "O(A|C) value " + std::to_string(given_c.action_value) + " > " +
                  std::to_string(given_c.baseline_value) + "; O(A|!C) value " +
                  std::to_string(given_not_c.action_value) + " > " +
                  std::to_string(given_not_c.baseline_value) + "; O(A) value " +
                  std::to_string(unconditional.action_value) + " <= " +
                  std::to_string(unconditional.baseline_value);
      ce.oracle_validated =
          oracle_validates(es.network, mu, es.prior.condition(c), a, given_c,
                           mix_seed(trial_seed, 10)) &&
          oracle_validates(es.network, mu, es.prior.condition(!c), a, given_not_c,
                           mix_seed(trial_seed, 11)) &&
          oracle_validates(es.network, mu, es.prior, a, unconditional, mix_seed(trial_seed, 12));
      report.counterexamples.push_back(std::move(ce));
    } else {
      if (es.prior.rank_of(c).is_infinite()) {
        ++report.trials_skipped;
        continue;
      }
      std::vector<ActionConjunct> opposite = negate_dnf(a);
      if (opposite.empty()) {
        ++report.trials_skipped;
        continue;
      }
      ++report.trials_run;
      ActionDNF not_a{std::move(opposite)};
      OughtVerdict do_a = ought(es, a, c);
      if (!do_a.assertable) continue;
      OughtVerdict do_not_a = ought(es, not_a, c);
      if (!do_not_a.assertable) continue;

      Counterexample ce;
      ce.trial = trial;
      ce.model_text = serialize_model(document_from(es.network, clauses, "counterexample"));
      ce.query_text = observe_line(c, vars) + "\n" + ought_line(a, vars) + "\n" +
                      ought_line(not_a, vars) + "\n";
      ce.detail = "O(A|C) value " + std::to_string(do_a.action_value) + " > " +
                  std::to_string(do_a.baseline_value) + " and O(!A|C) value " +
                  std::to_string(do_not_a.action_value) + " > " +
                  std::to_string(do_not_a.baseline_value);
      RankingFunction belief = es.prior.condition(c);
      ce.oracle_validated =
          oracle_validates(es.network, mu, belief, a, do_a, mix_seed(trial_seed, 10)) &&
          oracle_validates(es.network, mu, belief, not_a, do_not_a, mix_seed(trial_seed, 11));
      report.counterexamples.push_back(std::move(ce));
    }
  }
  return report;
}

}  // namespace qdt
