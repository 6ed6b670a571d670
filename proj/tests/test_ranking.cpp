#include <vector>

#include "doctest.h"
#include "qdt/errors.hpp"
#include "qdt/ranking.hpp"
#include "qdt/rng.hpp"
#include "support/fixtures.hpp"

using namespace qdt;

namespace {

RankingFunction random_ranking(Rng& rng, int n_vars) {
  std::vector<Rank> ranks(world_count(n_vars));
  for (Rank& r : ranks)
    r = rng.coin(0.25) ? Rank::infinity() : Rank::finite(rng.range(0, 3));
  ranks[rng.below(ranks.size())] = Rank();  // keep at least one finite world
  return RankingFunction::normalized(n_vars, std::move(ranks));
}

Rank brute_min(const RankingFunction& k, const Prop& p) {
  Rank m = Rank::infinity();
  for (std::uint32_t w = 0; w < k.size(); ++w)
    if (p.eval(World{w})) m = min(m, k.at(World{w}));
  return m;
}

}  // namespace

TEST_CASE("eval_prop follows boolean semantics") {
  // umbrella variables: c=0, r=1, u=2
  World cloudy_only{0b001};
  CHECK_FALSE(eval_prop(cloudy_only, Prop::var(1) & !Prop::var(2)));
  CHECK(eval_prop(cloudy_only, Prop::top()));
  CHECK(eval_prop(World{0b001}, !Prop::var(1)));  // switch: u=T, n=F -> !n true
  CHECK_FALSE(eval_prop(cloudy_only, Prop::bottom()));
  CHECK(eval_prop(World{0b011}, Prop::var(0) | Prop::var(2)));
}

TEST_CASE("unknown variables are rejected") {
  RankingFunction k = fixtures::umbrella_network().stratified_joint();
  CHECK_THROWS_AS(k.rank_of(Prop::var(7)), SemanticError);
}

TEST_CASE("rank_of on the umbrella prior") {
  RankingFunction k = fixtures::umbrella_network().stratified_joint();
  CHECK(k.rank_of(Prop::var(1) & !Prop::var(0)) == Rank::finite(1));  // rain on a clear day
  CHECK(k.rank_of(Prop::top()) == Rank());
  CHECK(k.rank_of(Prop::bottom()) == Rank::infinity());
}

TEST_CASE("conditional ranks match their definition") {
  RankingFunction k = fixtures::umbrella_network().stratified_joint();
  Prop bad = Prop::var(1) & !Prop::var(2);      // rain, no umbrella
  Prop given = Prop::var(2) & Prop::var(0);     // umbrella and cloudy
  CHECK(k.cond_rank(bad, given) == Rank::infinity());
  CHECK(k.cond_rank(bad, Prop::top()) == k.rank_of(bad));
  CHECK_THROWS_AS(k.cond_rank(Prop::top(), Prop::bottom()), ConditioningError);
}

TEST_CASE("conditioning the switch prior on darkness") {
  RankingFunction k = fixtures::switch_network().stratified_joint();
  RankingFunction dark = k.condition(!Prop::var(2));
  CHECK(dark.table() == fixtures::switch_after_dark_table());
}

TEST_CASE("conditioning on truth is the identity") {
  RankingFunction k = fixtures::switch_network().stratified_joint();
  CHECK(k.condition(Prop::top()) == k);
}

TEST_CASE("random rankings: conditioning and conditional ranks agree with brute force") {
  Rng rng(2024);
  for (int trial = 0; trial < 200; ++trial) {
    const int n = rng.range(1, 4);
    RankingFunction k = random_ranking(rng, n);
    Prop p = Prop::lit(rng.range(0, n - 1), rng.coin());
    Prop q = Prop::lit(rng.range(0, n - 1), rng.coin()) | Prop::lit(rng.range(0, n - 1), rng.coin());

    CHECK(k.rank_of(p) == brute_min(k, p));
    if (k.rank_of(q).is_finite()) {
      CHECK(k.cond_rank(p, q) == brute_min(k, p & q) - brute_min(k, q));

      RankingFunction c = k.condition(q);
      CHECK(c.rank_of(Prop::top()) == Rank());  // normalized
      for (std::uint32_t w = 0; w < c.size(); ++w)
        if (!q.eval(World{w})) CHECK(c.at(World{w}).is_infinite());
    }
  }
}

TEST_CASE("disjunction law and chain law hold") {
  Rng rng(77);
  for (int trial = 0; trial < 200; ++trial) {
    const int n = rng.range(2, 4);
    RankingFunction k = random_ranking(rng, n);
    Prop p = rng.coin() ? Prop::lit(0, rng.coin())
                        : (Prop::lit(0, rng.coin()) & Prop::lit(1, rng.coin()));
    Prop q = Prop::lit(rng.range(0, n - 1), rng.coin());

    CHECK(k.rank_of(p | q) == min(k.rank_of(p), k.rank_of(q)));
    if (k.rank_of(q).is_finite()) CHECK(k.cond_rank(p, q) + k.rank_of(q) == k.rank_of(p & q));
  }
}

TEST_CASE("successive observations compose into their conjunction") {
  Rng rng(4096);
  for (int trial = 0; trial < 100; ++trial) {
    const int n = rng.range(2, 4);
    RankingFunction k = random_ranking(rng, n);
    Prop q1 = Prop::lit(rng.range(0, n - 1), rng.coin());
    Prop q2 = Prop::lit(rng.range(0, n - 1), rng.coin());
    if (k.rank_of(q1 & q2).is_infinite()) continue;
    CHECK(k.condition(q1).condition(q2) == k.condition(q1 & q2));
  }
}

TEST_CASE("a ranking with no finite world is rejected") {
  std::vector<Rank> all_inf(4, Rank::infinity());
  CHECK_THROWS_AS(RankingFunction::normalized(2, std::move(all_inf)), DegenerateBeliefError);
}

TEST_CASE("normalization shifts the minimum to zero") {
  std::vector<Rank> ranks = {Rank::finite(2), Rank::finite(5), Rank::infinity(), Rank::finite(3)};
  RankingFunction k = RankingFunction::normalized(2, std::move(ranks));
  CHECK(k.at(World{0}) == Rank());
  CHECK(k.at(World{1}) == Rank::finite(3));
  CHECK(k.rank_of(Prop::top()) == Rank());
}
