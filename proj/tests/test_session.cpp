#include "doctest.h"
#include "qdt/session.hpp"
#include "support/fixtures.hpp"

using namespace qdt;

namespace {

QueryCommand observe(const Prop& p) {
  QueryCommand cmd;
  cmd.kind = QueryCommand::Kind::Observe;
  cmd.formula = p;
  return cmd;
}

QueryCommand enact(ActionDNF a) {
  QueryCommand cmd;
  cmd.kind = QueryCommand::Kind::Do;
  cmd.action = std::move(a);
  return cmd;
}

QueryCommand ask_ought(ActionDNF a, bool strong = false) {
  QueryCommand cmd;
  cmd.kind = QueryCommand::Kind::Ought;
  cmd.action = std::move(a);
  cmd.strong = strong;
  return cmd;
}

QueryCommand just(QueryCommand::Kind kind) {
  QueryCommand cmd;
  cmd.kind = kind;
  return cmd;
}

}  // namespace

TEST_CASE("a session threads observations and actions through the belief") {
  SessionState s(fixtures::switch_state(), RiskPolicy::RiskAverse, OughtMode::Standard);
  CHECK(s.belief().table() == fixtures::switch_prior_table());

  s.execute(observe(!Prop::var(2)));
  CHECK(s.belief().table() == fixtures::switch_after_dark_table());

  // Asking never moves the belief.
  TranscriptEntry asked = s.execute(ask_ought(ActionDNF::single(ActionConjunct::of({{0, true}}))));
  CHECK(asked.json["assertable"] == true);
  CHECK(s.belief().table() == fixtures::switch_after_dark_table());

  // Acting does.
  s.execute(enact(ActionDNF::single(ActionConjunct::of({{0, true}}))));
  CHECK(s.belief().table() == fixtures::switch_push_up_table());

  // A later observation conditions the post-action belief.
  s.execute(observe(Prop::var(1)));
  CHECK(s.belief().rank_of(Prop::var(1)) == Rank());
  CHECK(s.belief().at(World{0b001}).is_infinite());

  s.execute(just(QueryCommand::Kind::Reset));
  CHECK(s.belief().table() == fixtures::switch_prior_table());
  CHECK(s.history().size() == 5);
}

TEST_CASE("contradictory observations surface with the documented message") {
  SessionState s(fixtures::switch_state(), RiskPolicy::RiskAverse, OughtMode::Standard);
  s.execute(observe(!Prop::var(2)));
  CHECK_THROWS_WITH_AS(s.execute(observe(Prop::var(2))), "contradictory observation",
                       ConditioningError);
}

TEST_CASE("strict sessions refuse to rank an ambiguous baseline") {
  NetworkDraft d;
  d.variables = {{"x", 0, 1}};
  d.tables = {{0, {}, {{Rank(), Rank()}}}};
  CausalNetwork net = CausalNetwork::build(std::move(d));
  UtilityRanking mu = UtilityRanking::from_values(1, {-1, 1});
  SessionState s(EpistemicState::make(net, mu), RiskPolicy::Strict, OughtMode::Standard);
  CHECK_THROWS_AS(s.execute(ask_ought(ActionDNF::single(ActionConjunct::of({{0, true}})))),
                  AmbiguityError);
}

TEST_CASE("a strong session can reject what a standard one asserts") {
  // Both pushing up and pushing down escape the dark state, so neither is
  // strongly assertable, while each is assertable in the standard sense.
  NetworkDraft d;
  d.variables = {{"a", 0, 1}, {"b", 1, 1}};
  d.edges = {{0, 1}};
  d.tables = {
      {0, {}, {{Rank(), Rank()}}},
      {1, {0}, {{Rank::finite(1), Rank()}, {Rank(), Rank::finite(1)}}},
  };
  EpistemicState es =
      EpistemicState::make(CausalNetwork::build(std::move(d)),
                           UtilityRanking::from_values(2, {1, -1, 1, 1}));
  Prop seen = Prop::var(0) & !Prop::var(1);
  ActionDNF hold = ActionDNF::single(ActionConjunct::of({{0, true}}));

  SessionState standard(es, RiskPolicy::RiskAverse, OughtMode::Standard);
  standard.execute(observe(seen));
  CHECK(standard.execute(ask_ought(hold)).json["assertable"] == true);

  SessionState strong(es, RiskPolicy::RiskAverse, OughtMode::Strong);
  strong.execute(observe(seen));
  TranscriptEntry got = strong.execute(ask_ought(hold));
  CHECK(got.json["assertable"] == false);
  CHECK(got.json["counter_action"] == 1);
}

TEST_CASE("show commands render the belief and the utility table") {
  SessionState s(fixtures::switch_state(), RiskPolicy::RiskAverse, OughtMode::Standard);
  TranscriptEntry ranking = s.execute(just(QueryCommand::Kind::ShowRanking));
  CHECK(ranking.text.find("111  u=T n=T l=T  rank=0") != std::string::npos);
  TranscriptEntry utility = s.execute(just(QueryCommand::Kind::ShowUtility));
  CHECK(utility.text.find("000  u=F n=F l=F  utility=-1") != std::string::npos);
  CHECK(utility.text.find("111  u=T n=T l=T  utility=0") != std::string::npos);
}
