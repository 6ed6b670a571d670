#include "qdt/epsilon.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "qdt/errors.hpp"
#include "qdt/rng.hpp"

namespace qdt {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

double log_sum_exp(const std::vector<double>& logs) {
  double m = kNegInf;
  for (double v : logs) m = std::max(m, v);
  if (m == kNegInf) return kNegInf;
  double s = 0;
  for (double v : logs)
    if (v != kNegInf) s += std::exp(v - m);
  return m + std::log(s);
}

double log_add(double a, double b) {
  if (a == kNegInf) return b;
  if (b == kNegInf) return a;
  double m = std::max(a, b);
  return m + std::log(std::exp(a - m) + std::exp(b - m));
}

void check_cap(const CausalNetwork& net) {
  if (net.n_vars() > 10)
    throw CapError("numeric semantics capped at 10 variables, got " +
                   std::to_string(net.n_vars()));
}

// log(coeff * eps^rank), -inf for the infinite rank.
double log_weight(double coeff, Rank r, double log_eps) {
  if (r.is_infinite()) return kNegInf;
  return std::log(coeff) + static_cast<double>(r.finite_value()) * log_eps;
}

// Per-node log conditional of value given w's parent row, normalized over the
// two values.
double log_cpt(const CausalNetwork& net, const EpsilonModel& em, double log_eps, int i, World w,
               bool value) {
  const ConditionalRankTable& t = net.table(i);
  std::uint32_t row = t.row_index(w);
  double lt = log_weight(em.table_coeff(i, row, true), t.rows[row].if_true, log_eps);
  double lf = log_weight(em.table_coeff(i, row, false), t.rows[row].if_false, log_eps);
  double z = log_add(lt, lf);
  return (value ? lt : lf) - z;
}

}  // namespace

double EpsilonModel::table_coeff(int node, std::uint32_t row, bool value) const {
  if (table_coeffs.empty()) return 1.0;
  return table_coeffs[static_cast<std::size_t>(node)][row][value ? 1 : 0];
}

double EpsilonModel::level_coeff(std::int64_t level) const {
  auto it = level_coeffs.find(level);
  return it == level_coeffs.end() ? 1.0 : it->second;
}

EpsilonModel EpsilonModel::random(const CausalNetwork& net, std::uint64_t seed, double epsilon) {
  Rng rng(seed);
  EpsilonModel em;
  em.epsilon = epsilon;
  em.table_coeffs.resize(static_cast<std::size_t>(net.n_vars()));
  for (int i = 0; i < net.n_vars(); ++i) {
    auto& rows = em.table_coeffs[static_cast<std::size_t>(i)];
    rows.resize(net.table(i).rows.size());
    for (auto& row : rows) row = {rng.in(0.5, 2.0), rng.in(0.5, 2.0)};
  }
  return em;
}

std::vector<double> log_numeric_joint(const CausalNetwork& net, const EpsilonModel& em,
                                      double eps) {
  check_cap(net);
  const double log_eps = std::log(eps);
  const std::uint32_t count = world_count(net.n_vars());
  std::vector<double> out(count, 0.0);
  for (std::uint32_t w = 0; w < count; ++w) {
    double sum = 0;
    for (int i = 0; i < net.n_vars(); ++i) {
      sum += log_cpt(net, em, log_eps, i, World{w}, World{w}.value(i));
      if (sum == kNegInf) break;
    }
    out[w] = sum;
  }
  return out;
}

std::vector<double> numeric_joint(const CausalNetwork& net, const EpsilonModel& em) {
  std::vector<double> logs = log_numeric_joint(net, em, em.epsilon);
  std::vector<double> out(logs.size());
  double total = 0;
  for (std::size_t i = 0; i < logs.size(); ++i) {
    out[i] = logs[i] == kNegInf ? 0.0 : std::exp(logs[i]);
    total += out[i];
  }
  if (std::abs(total - 1.0) > 1e-9)
    throw EngineError("numeric joint sums to " + std::to_string(total) + ", expected 1");
  return out;
}

Rank leading_exponent(double p, double epsilon) {
  if (p < 0) throw EngineError("negative probability in leading_exponent");
  if (p == 0) return Rank::infinity();
  double ratio = std::log(p) / std::log(epsilon);
  double rounded = std::round(ratio);
  if (std::abs(ratio - rounded) > 0.35)
    throw AmbiguityError("leading exponent " + std::to_string(ratio) +
                         " is not near an integer");
  if (rounded < 0)
    throw AmbiguityError("leading exponent " + std::to_string(ratio) + " is negative");
  return Rank::finite(static_cast<std::int64_t>(rounded));
}

int epsilon_degree(double log_p1, double log_p2, double log_e1, double log_e2, double band) {
  double slope = (log_p1 - log_p2) / (log_e1 - log_e2);
  double rounded = std::round(slope);
  if (std::abs(slope - rounded) > band)
    throw AmbiguityError("epsilon degree " + std::to_string(slope) + " is not near an integer");
  return static_cast<int>(rounded);
}

std::vector<double> log_numeric_conditional(const CausalNetwork& net, const EpsilonModel& em,
                                            double eps, const Prop& c) {
  std::vector<double> logs = log_numeric_joint(net, em, eps);
  check_prop_vars(c, net.n_vars());
  std::vector<double> selected;
  for (std::uint32_t w = 0; w < logs.size(); ++w)
    if (c.eval(World{w})) selected.push_back(logs[w]);
  double log_pc = log_sum_exp(selected);
  if (log_pc == kNegInf) throw ConditioningError("conditioning on a probability-0 event");
  for (std::uint32_t w = 0; w < logs.size(); ++w)
    logs[w] = c.eval(World{w}) ? logs[w] - log_pc : kNegInf;
  return logs;
}

std::vector<double> log_numeric_atomic_action(const CausalNetwork& net, const EpsilonModel& em,
                                              double eps, AtomicAction a) {
  check_cap(net);
  const double log_eps = std::log(eps);
  const std::uint32_t count = world_count(net.n_vars());
  std::vector<double> out(count, kNegInf);
  for (std::uint32_t w = 0; w < count; ++w) {
    World world{w};
    if (world.value(a.variable) != a.value) continue;
    double sum = 0;
    for (int i = 0; i < net.n_vars(); ++i) {
      if (i == a.variable) continue;  // point mass on the target value
      sum += log_cpt(net, em, log_eps, i, world, world.value(i));
      if (sum == kNegInf) break;
    }
    out[w] = sum;
  }
  return out;
}

std::vector<double> log_numeric_post_action(const CausalNetwork& net, const EpsilonModel& em,
                                            double eps, const RankingFunction& belief,
                                            const ActionConjunct& a) {
  check_cap(net);
  const double log_eps = std::log(eps);
  const std::uint32_t count = world_count(net.n_vars());

  // Belief as a distribution: eps^rank, renormalized.
  std::vector<double> log_belief(count);
  for (std::uint32_t w = 0; w < count; ++w)
    log_belief[w] = log_weight(1.0, belief.at(World{w}), log_eps);
  double z = log_sum_exp(log_belief);
  for (double& lb : log_belief) lb = (lb == kNegInf) ? kNegInf : lb - z;

  std::vector<double> out(count, kNegInf);
  for (std::uint32_t wb = 0; wb < count; ++wb) {
    World w{wb};
    if (!a.satisfied_by(w)) continue;
    std::vector<double> terms;
    for (std::uint32_t pb = 0; pb < count; ++pb) {
      double term = log_belief[pb];
      if (term == kNegInf) continue;
      World prev{pb};
      for (int i = 0; i < net.n_vars() && term != kNegInf; ++i) {
        if (a.targets(i)) continue;
        // Rank of each candidate value given (parents, previous value), then
        // renormalize the pair: unforced change costs s_i on top of the
        // causal term, roots have only the persistence link.
        const bool prev_val = prev.value(i);
        double lw[2];
        for (int v = 0; v < 2; ++v) {
          bool value = v == 1;
          Rank r;
          double coeff = 1.0;
          if (net.is_root(i)) {
            r = (value != prev_val) ? Rank::finite(net.variable(i).persistence) : Rank();
          } else {
            const ConditionalRankTable& t = net.table(i);
            std::uint32_t row = t.row_index(w);
            r = t.rows[row].at(value);
            coeff = em.table_coeff(i, row, value);
            if (value != prev_val && t.rows[row].at(!value) == Rank())
              r = r + Rank::finite(net.variable(i).persistence);
          }
          lw[v] = log_weight(coeff, r, log_eps);
        }
        double pair_z = log_add(lw[0], lw[1]);
        term += lw[w.value(i) ? 1 : 0] - pair_z;
      }
      if (term != kNegInf) terms.push_back(term);
    }
    out[wb] = log_sum_exp(terms);
  }
  return out;
}

namespace {

// Degree of a log-numeric quantity evaluated at eps and eps^3.
int degree_of(double log_p1, double log_p2, double eps) {
  return epsilon_degree(log_p1, log_p2, std::log(eps), 3 * std::log(eps));
}

AgreementCheck compare_ranks(const std::string& name, const CausalNetwork& net,
                             const std::vector<double>& logs1, const std::vector<double>& logs2,
                             const RankingFunction& expected, double eps) {
  AgreementCheck out{name};
  for (std::uint32_t w = 0; w < expected.size(); ++w) {
    ++out.checks;
    Rank want = expected.at(World{w});
    std::string world = world_bitstring(World{w}, net.n_vars());
    if (logs1[w] == kNegInf || logs2[w] == kNegInf) {
      if (!want.is_infinite())
        out.failures.push_back("world " + world + ": numeric probability 0, rank " +
                               want.to_string());
      continue;
    }
    if (want.is_infinite()) {
      out.failures.push_back("world " + world + ": rank inf but numeric probability positive");
      continue;
    }
    try {
      int deg = degree_of(logs1[w], logs2[w], eps);
      if (deg != want.finite_value())
        out.failures.push_back("world " + world + ": numeric degree " + std::to_string(deg) +
                               ", rank " + want.to_string());
    } catch (const AmbiguityError& e) {
      out.failures.push_back("world " + world + ": " + e.what());
    }
  }
  return out;
}

}  // namespace

AgreementCheck check_joint_agreement(const CausalNetwork& net, const EpsilonModel& em) {
  double eps = em.epsilon;
  auto l1 = log_numeric_joint(net, em, eps);
  auto l2 = log_numeric_joint(net, em, eps * eps * eps);
  return compare_ranks("joint", net, l1, l2, net.stratified_joint(), eps);
}

AgreementCheck check_conditional_agreement(const CausalNetwork& net, const EpsilonModel& em,
                                           const Prop& c) {
  double eps = em.epsilon;
  auto l1 = log_numeric_conditional(net, em, eps, c);
  auto l2 = log_numeric_conditional(net, em, eps * eps * eps, c);
  return compare_ranks("conditional(" + c.to_string(net.variables()) + ")", net, l1, l2,
                       net.stratified_joint().condition(c), eps);
}

AgreementCheck check_atomic_action_agreement(const CausalNetwork& net, const EpsilonModel& em,
                                             AtomicAction a) {
  double eps = em.epsilon;
  auto l1 = log_numeric_atomic_action(net, em, eps, a);
  auto l2 = log_numeric_atomic_action(net, em, eps * eps * eps, a);
  std::string name = std::string("do(") + (a.value ? "" : "!") +
                     net.variable(a.variable).name + ")";
  return compare_ranks(name, net, l1, l2, net.atomic_action_update(a), eps);
}

AgreementCheck check_post_action_agreement(const CausalNetwork& net, const EpsilonModel& em,
                                           const RankingFunction& belief,
                                           const ActionConjunct& a) {
  double eps = em.epsilon;
  auto l1 = log_numeric_post_action(net, em, eps, belief, a);
  auto l2 = log_numeric_post_action(net, em, eps * eps * eps, belief, a);
  return compare_ranks("post-action(" + a.to_prop().to_string(net.variables()) + ")", net, l1, l2,
                       post_action_ranking(net, belief, a), eps);
}

NumericUtilityVerdict numeric_utility_verdict(const Prop& phi, const RankingFunction& k_post,
                                              const UtilityRanking& mu, const EpsilonModel& em,
                                              int draws, std::uint64_t seed) {
  if (draws < 1) throw EngineError("numeric utility verdict needs at least one draw");
  if (k_post.rank_of(phi) != Rank())
    throw InvalidPostRankingError("post ranking must give the evaluated proposition rank 0");

  const std::uint32_t count = k_post.size();
  const double eps1 = em.epsilon;
  const double eps2 = eps1 * eps1 * eps1;

  bool first = true;
  NumericUtilityVerdict out;
  int seen_sign = 0;

  for (int d = 0; d < draws; ++d) {
    Rng rng(mix_seed(seed, static_cast<std::uint64_t>(d)));
    std::vector<double> world_coeff(count, 1.0);
    std::map<std::int64_t, double> level_coeff;
    if (d > 0) {
      for (double& c : world_coeff) c = rng.in(0.5, 2.0);
      for (std::int64_t lvl = -mu.max_abs_level(); lvl <= mu.max_abs_level(); ++lvl)
        level_coeff[lvl] = rng.in(0.5, 2.0);
    }
    auto coeff_of = [&](std::int64_t lvl) {
      auto it = level_coeff.find(lvl);
      return it == level_coeff.end() ? em.level_coeff(lvl) : it->second;
    };

    // E[U] split into its positive part (levels >= 0) and negative part,
    // evaluated at both eps points so their degrees can be extracted.
    double log_plus[2], log_minus[2];
    for (int point = 0; point < 2; ++point) {
      const double log_eps = std::log(point == 0 ? eps1 : eps2);

      // Distribution consistent with k_post, conditioned on phi.
      std::vector<double> lp(count, kNegInf);
      std::vector<double> phi_terms;
      for (std::uint32_t w = 0; w < count; ++w) {
        lp[w] = log_weight(world_coeff[w], k_post.at(World{w}), log_eps);
        if (phi.eval(World{w}) && lp[w] != kNegInf) phi_terms.push_back(lp[w]);
      }
      double log_pphi = log_sum_exp(phi_terms);

      std::vector<double> plus_terms, minus_terms;
      for (std::uint32_t w = 0; w < count; ++w) {
        if (!phi.eval(World{w}) || lp[w] == kNegInf) continue;
        std::int64_t lvl = mu.at(World{w});
        double log_term = lp[w] - log_pphi + std::log(coeff_of(lvl)) -
                          static_cast<double>(std::abs(lvl)) * log_eps;
        (lvl >= 0 ? plus_terms : minus_terms).push_back(log_term);
      }
      log_plus[point] = log_sum_exp(plus_terms);
      log_minus[point] = log_sum_exp(minus_terms);
    }

    std::int64_t np =
        (log_plus[0] == kNegInf)
            ? 0
            : std::max<std::int64_t>(
                  0, -epsilon_degree(log_plus[0], log_plus[1], std::log(eps1), std::log(eps2)));
    std::int64_t nm =
        (log_minus[0] == kNegInf)
            ? 0
            : std::max<std::int64_t>(
                  0, -epsilon_degree(log_minus[0], log_minus[1], std::log(eps1), std::log(eps2)));
    int sign;
    if (log_minus[0] == kNegInf)
      sign = log_plus[0] == kNegInf ? 0 : +1;
    else if (log_plus[0] == kNegInf)
      sign = -1;
    else
      sign = log_plus[0] > log_minus[0] ? +1 : -1;

    if (first) {
      out.n_plus = np;
      out.n_minus = nm;
      seen_sign = sign;
      first = false;
    } else {
      if (np != out.n_plus || nm != out.n_minus) {
        out.ambiguous = true;  // draws disagree outright
      }
      if (sign != seen_sign) out.eu_sign_flipped = true;
    }
  }

  if (out.n_plus == out.n_minus && out.n_plus > 0) out.ambiguous = true;
  if (!out.ambiguous) {
    std::int64_t v = out.n_plus - out.n_minus;
    out.sign = v > 0 ? +1 : (v < 0 ? -1 : 0);
    out.exponent = static_cast<int>(std::abs(v));
  }
  return out;
}

AgreementCheck check_utility_agreement(const Prop& phi, const RankingFunction& k_post,
                                       const UtilityRanking& mu, const EpsilonModel& em,
                                       int draws, std::uint64_t seed) {
  AgreementCheck out{"utility"};
  ++out.checks;
  UtilityRankResult want = expected_utility_rank(phi, k_post, mu);
  NumericUtilityVerdict got = numeric_utility_verdict(phi, k_post, mu, em, draws, seed);
  if (want.ambiguous() != got.ambiguous) {
    out.failures.push_back("rank verdict " + want.to_string() + " vs numeric " +
                           (got.ambiguous ? "ambiguous" : std::to_string(got.sign * got.exponent)));
    return out;
  }
  if (want.ambiguous()) {
    if (got.n_plus != want.n_plus || got.n_minus != want.n_minus)
      out.failures.push_back("ambiguity level mismatch: rank " + want.to_string() +
                             " vs numeric (" + std::to_string(got.n_plus) + "," +
                             std::to_string(got.n_minus) + ")");
    return out;
  }
  std::int64_t want_value = want.value();
  int want_sign = want_value > 0 ? +1 : (want_value < 0 ? -1 : 0);
  if (got.sign != want_sign || got.exponent != std::abs(want_value))
    out.failures.push_back("rank verdict " + want.to_string() + " vs numeric sign " +
                           std::to_string(got.sign) + " exponent " +
                           std::to_string(got.exponent));
  return out;
}

}  // namespace qdt
