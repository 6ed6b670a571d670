#include "doctest.h"
#include "qdt/decision.hpp"
#include "qdt/generate.hpp"
#include "qdt/principles.hpp"
#include "support/fixtures.hpp"

using namespace qdt;

TEST_CASE("umbrella utilities reproduce the worked values") {
  EpistemicState es = fixtures::umbrella_state();
  Prop u = Prop::var(2);
  Prop c = Prop::var(0);

  SUBCASE("acting leaves no reachable disaster") {
    RankingFunction k = es.prior.condition(u & c);
    UtilityRankResult r = expected_utility_rank(u, k, es.utility);
    CHECK(r == UtilityRankResult{0, 0});
    CHECK(resolve(r, RiskPolicy::RiskAverse) == 0);
  }
  SUBCASE("doing nothing leaves rain without an umbrella seriously possible") {
    RankingFunction k = es.prior.condition(c);
    UtilityRankResult r = expected_utility_rank(Prop::top(), k, es.utility);
    CHECK(r == UtilityRankResult{0, 1});
    CHECK(resolve(r, RiskPolicy::RiskAverse) == -1);
  }
}

TEST_CASE("a flat utility ranking rates everything bearable") {
  EpistemicState es = fixtures::umbrella_state();
  UtilityRanking flat = UtilityRanking::from_values(3, std::vector<std::int64_t>(8, 0));
  CHECK(expected_utility_rank(Prop::top(), es.prior, flat) == UtilityRankResult{0, 0});
}

TEST_CASE("tied serious possibilities of disaster and success are ambiguous") {
  // Two rank-0 worlds, one at +1 and one at -1.
  std::vector<Rank> ranks = {Rank(), Rank(), Rank::infinity(), Rank::infinity()};
  RankingFunction k = RankingFunction::normalized(2, std::move(ranks));
  UtilityRanking mu = UtilityRanking::from_values(2, {1, -1, 0, 0});
  UtilityRankResult r = expected_utility_rank(Prop::top(), k, mu);
  CHECK(r.ambiguous());
  CHECK(r == UtilityRankResult{1, 1});
  CHECK(resolve(r, RiskPolicy::RiskAverse) == -1);
  CHECK_THROWS_AS(resolve(r, RiskPolicy::Strict), AmbiguityError);
}

TEST_CASE("the evaluated proposition must be unsurprising") {
  EpistemicState es = fixtures::umbrella_state();
  RankingFunction k = es.prior.condition(Prop::var(0));
  CHECK_THROWS_AS(expected_utility_rank(!Prop::var(0), k, es.utility), InvalidPostRankingError);
}

TEST_CASE("three-level rating matches the worked example") {
  EpistemicState es = fixtures::umbrella_state();
  CHECK(three_level_rank(Prop::top(), es.prior.condition(Prop::var(0)), es.utility) == -1);
  CHECK(three_level_rank(Prop::var(2), es.prior.condition(Prop::var(2) & Prop::var(0)),
                         es.utility) == 0);
}

TEST_CASE("three-level rating equals the general rank under risk aversion") {
  Rng rng(31);
  GeneratorConfig cfg;
  cfg.max_util_level = 1;
  for (int trial = 0; trial < 200; ++trial) {
    CausalNetwork net = random_network(rng, cfg);
    UtilityRanking mu =
        UtilityRanking::from_clauses(net.n_vars(), random_utility_clauses(rng, net.n_vars(), cfg));
    RankingFunction belief = random_belief(rng, net);
    CHECK(three_level_rank(Prop::top(), belief, mu) ==
          resolve(expected_utility_rank(Prop::top(), belief, mu), RiskPolicy::RiskAverse));

    ActionDNF a = random_dnf(rng, net.n_vars());
    RankingFunction post = post_action_ranking_dnf(net, belief, a);
    CHECK(three_level_rank(a.to_prop(), post, mu) ==
          resolve(expected_utility_rank(a.to_prop(), post, mu), RiskPolicy::RiskAverse));
  }
}

TEST_CASE("levels outside the three-level regime are rejected") {
  std::vector<Rank> ranks = {Rank(), Rank(), Rank(), Rank()};
  RankingFunction k = RankingFunction::normalized(2, std::move(ranks));
  UtilityRanking mu = UtilityRanking::from_values(2, {2, 0, 0, 0});
  CHECK_THROWS_AS(three_level_rank(Prop::top(), k, mu), SemanticError);
}

TEST_CASE("if it is cloudy you ought to take an umbrella") {
  EpistemicState es = fixtures::umbrella_state();
  ActionDNF take{ActionDNF::single(ActionConjunct::of({{2, true}}))};
  OughtVerdict v = ought(es, take, Prop::var(0));
  CHECK(v.assertable);
  CHECK(v.action_value == 0);
  CHECK(v.baseline_value == -1);
}

TEST_CASE("a surprising umbrella is still worth taking") {
  // Make carrying an umbrella surprising a priori; the advice must not
  // depend on that, since leaving it to chance risks the rain.
  NetworkDraft d;
  d.variables = {{"c", 0, 1}, {"r", 1, 1}, {"u", 2, 1}};
  d.edges = {{0, 1}};
  d.tables = {
      {0, {}, {{Rank(), Rank()}}},
      {1, {0}, {{Rank::finite(1), Rank()}, {Rank(), Rank()}}},
      {2, {}, {{Rank::finite(1), Rank()}}},
  };
  EpistemicState es = EpistemicState::make(CausalNetwork::build(std::move(d)),
                                           fixtures::umbrella_utility());
  OughtVerdict v = ought(es, ActionDNF::single(ActionConjunct::of({{2, true}})), Prop::var(0));
  CHECK(v.assertable);
  CHECK(v.action_value == 0);
  CHECK(v.baseline_value == -1);
}

TEST_CASE("the calculus also endorses stopping the rain") {
  // Nothing encodes that the weather is beyond control, so the criterion
  // endorses acting on it; reproducing this known blind spot is intended.
  EpistemicState es = fixtures::umbrella_state();
  ActionDNF stop_rain{ActionDNF::single(ActionConjunct::of({{1, false}}))};
  OughtVerdict v = ought(es, stop_rain, Prop::var(0) & !Prop::var(2));
  CHECK(v.assertable);
  CHECK(v.action_value == 0);
  CHECK(v.baseline_value == -1);
}

TEST_CASE("the switch dialogue reverses its advice") {
  EpistemicState es = fixtures::switch_state();
  Prop dark = !Prop::var(2);
  ActionDNF push_up{ActionDNF::single(ActionConjunct::of({{0, true}}))};
  ActionDNF push_down{ActionDNF::single(ActionConjunct::of({{0, false}}))};

  OughtVerdict first = ought(es, push_up, dark);
  CHECK(first.assertable);
  CHECK(first.action_value == 0);
  CHECK(first.baseline_value == -1);

  OughtVerdict second = ought(es, push_down, dark & Prop::var(0));
  CHECK(second.assertable);
  CHECK(second.action_value == 0);
  CHECK(second.baseline_value == -1);
}

TEST_CASE("ought conditions must be believable") {
  EpistemicState es = fixtures::switch_state();
  ActionDNF a{ActionDNF::single(ActionConjunct::of({{0, true}}))};
  // l with !n and u is excluded by the functional table.
  CHECK_THROWS_AS(ought(es, a, Prop::var(2) & !Prop::var(1) & Prop::var(0)), ConditioningError);
}

TEST_CASE("strong assertability implies standard assertability") {
  Rng rng(32);
  GeneratorConfig cfg;
  for (int trial = 0; trial < 150; ++trial) {
    CausalNetwork net = random_network(rng, cfg);
    UtilityRanking mu =
        UtilityRanking::from_clauses(net.n_vars(), random_utility_clauses(rng, net.n_vars(), cfg));
    EpistemicState es = EpistemicState::make(net, mu);
    ActionDNF a = random_dnf(rng, es.network.n_vars());
    Prop c = random_prop(rng, es.network.n_vars());
    if (es.prior.rank_of(c).is_infinite()) continue;

    OughtVerdict strong = ought(es, a, c, RiskPolicy::RiskAverse, OughtMode::Strong);
    OughtVerdict standard = ought(es, a, c, RiskPolicy::RiskAverse, OughtMode::Standard);
    if (strong.assertable) CHECK(standard.assertable);
  }
}

TEST_CASE("ought evaluation is deterministic") {
  EpistemicState es = fixtures::switch_state();
  ActionDNF a{ActionDNF::single(ActionConjunct::of({{0, true}}))};
  OughtVerdict v1 = ought(es, a, !Prop::var(2));
  OughtVerdict v2 = ought(es, a, !Prop::var(2));
  CHECK(v1.assertable == v2.assertable);
  CHECK(v1.action_value == v2.action_value);
  CHECK(v1.baseline_value == v2.baseline_value);
  CHECK(v1.post_ranking == v2.post_ranking);
}

TEST_CASE("worlds above every utility level cannot change a verdict") {
  Rng rng(33);
  GeneratorConfig cfg;
  for (int trial = 0; trial < 100; ++trial) {
    CausalNetwork net = random_network(rng, cfg);
    UtilityRanking mu =
        UtilityRanking::from_clauses(net.n_vars(), random_utility_clauses(rng, net.n_vars(), cfg));
    RankingFunction belief = random_belief(rng, net);

    std::vector<Rank> padded = belief.table();
    bool changed = false;
    for (std::uint32_t w = 0; w < padded.size(); ++w) {
      if (padded[w].is_infinite() && !changed) {
        padded[w] = Rank::finite(mu.max_abs_level());
        changed = true;
      }
    }
    if (!changed) continue;
    RankingFunction widened = RankingFunction::normalized(belief.n_vars(), std::move(padded));
    CHECK(expected_utility_rank(Prop::top(), belief, mu) ==
          expected_utility_rank(Prop::top(), widened, mu));
  }
}

TEST_CASE("after observing darkness, pushing up would light the room") {
  EpistemicState es = fixtures::switch_state();
  ActionDNF push_up{ActionDNF::single(ActionConjunct::of({{0, true}}))};
  CHECK(dmc(es, push_up, Prop::var(2), !Prop::var(2)));
}

TEST_CASE("a conditional whose consequent is already believed fails the first clause") {
  EpistemicState es = fixtures::switch_state();
  ActionDNF push_up{ActionDNF::single(ActionConjunct::of({{0, true}}))};
  // Given l, !l is already surprising, so the conditional is not a decision
  // maker's conditional.
  CHECK_FALSE(dmc(es, push_up, Prop::var(2), Prop::var(2)));
}

TEST_CASE("dmc conditions must be believable too") {
  EpistemicState es = fixtures::switch_state();
  ActionDNF push_up{ActionDNF::single(ActionConjunct::of({{0, true}}))};
  CHECK_THROWS_AS(dmc(es, push_up, Prop::var(2), Prop::var(2) & !Prop::var(1) & Prop::var(0)),
                  ConditioningError);
}

TEST_CASE("dmc equals its two-clause definition on random models") {
  Rng rng(34);
  GeneratorConfig cfg;
  for (int trial = 0; trial < 150; ++trial) {
    CausalNetwork net = random_network(rng, cfg);
    UtilityRanking mu =
        UtilityRanking::from_clauses(net.n_vars(), random_utility_clauses(rng, net.n_vars(), cfg));
    EpistemicState es = EpistemicState::make(net, mu);
    ActionDNF a = random_dnf(rng, es.network.n_vars());
    Prop b = random_prop(rng, es.network.n_vars());
    Prop c = random_prop(rng, es.network.n_vars());
    if (es.prior.rank_of(c).is_infinite()) continue;

    RankingFunction belief = es.prior.condition(c);
    bool expected = belief.rank_of(!b) == Rank() &&
                    post_action_ranking_dnf(es.network, belief, a).rank_of(!b) > Rank();
    CHECK(dmc(es, a, b, c) == expected);
  }
}

TEST_CASE("a vacuous principle search reports nothing") {
  PrincipleReport report = check_principle(Principle::SureThing, GeneratorConfig{}, 0, 7);
  CHECK(report.trials_run == 0);
  CHECK(report.counterexamples.empty());
}

TEST_CASE("every raw principle hit is validated by the numeric semantics") {
  // Violations do exist (see the finding tests below); what must never exist
  // is a hit the numeric oracle disowns, which would mean an engine bug.
  GeneratorConfig cfg;
  for (Principle p : {Principle::SureThing, Principle::WeakConsistency}) {
    PrincipleReport report = check_principle(p, cfg, 300, 7);
    CHECK(report.trials_run + report.trials_skipped == 300);
    for (const Counterexample& ce : report.counterexamples) {
      CAPTURE(ce.detail);
      CHECK(ce.oracle_validated);
      CHECK_FALSE(ce.model_text.empty());
      CHECK_FALSE(ce.query_text.empty());
    }
  }
}

TEST_CASE("the sure-thing principle survives the three-level atomic regime") {
  GeneratorConfig cfg;
  cfg.max_util_level = 1;
  std::uint64_t checked = 0;
  for (std::uint64_t trial = 0; trial < 4000; ++trial) {
    Rng rng(mix_seed(5150, trial));
    CausalNetwork net = random_network(rng, cfg);
    UtilityRanking mu =
        UtilityRanking::from_clauses(net.n_vars(), random_utility_clauses(rng, net.n_vars(), cfg));
    EpistemicState es = EpistemicState::make(net, mu);
    ActionDNF a = ActionDNF::single(random_conjunct(rng, net.n_vars(), 1));
    Prop c = random_prop(rng, net.n_vars());
    if (es.prior.rank_of(c).is_infinite() || es.prior.rank_of(!c).is_infinite()) continue;
    ++checked;
    if (ought(es, a, c).assertable && ought(es, a, !c).assertable)
      CHECK(ought(es, a, Prop::top()).assertable);
  }
  CHECK(checked > 1000);
}

TEST_CASE("finding: weak consistency fails even for atomic three-level models") {
  // Observed a & !b, where b normally follows a. Flipping a leads to the
  // normal (!a,!b) world; re-enforcing a re-derives b from its table (the
  // observational support for !b is clipped, and the unchanged !b pays its
  // causal term again). Both actions escape the bad state, so both oughts
  // are assertable. The numeric semantics agrees, so this is a property of
  // the calculus, not an implementation fault.
  NetworkDraft d;
  d.variables = {{"a", 0, 1}, {"b", 1, 1}};
  d.edges = {{0, 1}};
  d.tables = {
      {0, {}, {{Rank(), Rank()}}},
      {1, {0}, {{Rank::finite(1), Rank()}, {Rank(), Rank::finite(1)}}},
  };
  CausalNetwork net = CausalNetwork::build(std::move(d));
  UtilityRanking mu = UtilityRanking::from_values(2, {1, -1, 1, 1});
  EpistemicState es = EpistemicState::make(net, mu);
  Prop c = Prop::var(0) & !Prop::var(1);

  OughtVerdict flip = ought(es, ActionDNF::single(ActionConjunct::of({{0, false}})), c);
  OughtVerdict hold = ought(es, ActionDNF::single(ActionConjunct::of({{0, true}})), c);
  CHECK(flip.assertable);
  CHECK(hold.assertable);
  CHECK(flip.action_value == 1);
  CHECK(hold.action_value == 1);
  CHECK(flip.baseline_value == -1);
}

TEST_CASE("principle reports are reproducible from their seed") {
  GeneratorConfig cfg;
  for (Principle p : {Principle::SureThing, Principle::WeakConsistency}) {
    PrincipleReport a = check_principle(p, cfg, 200, 99);
    PrincipleReport b = check_principle(p, cfg, 200, 99);
    CHECK(a.trials_run == b.trials_run);
    CHECK(a.trials_skipped == b.trials_skipped);
    REQUIRE(a.counterexamples.size() == b.counterexamples.size());
    for (std::size_t i = 0; i < a.counterexamples.size(); ++i) {
      CHECK(a.counterexamples[i].trial == b.counterexamples[i].trial);
      CHECK(a.counterexamples[i].model_text == b.counterexamples[i].model_text);
    }
  }
}
