#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "qdt/action.hpp"
#include "qdt/decision.hpp"
#include "qdt/network.hpp"
#include "qdt/utility.hpp"

namespace qdt {

/// Numeric counterpart of the rank calculus: each rank r becomes a probability
/// proportional to coefficient * eps^r. Used purely for validation; a
/// disagreement is reported, never silently overridden.
struct EpsilonModel {
  double epsilon = 1e-3;

  /// Per-table-entry positive coefficients, [node][row][value]; empty means 1.
  std::vector<std::vector<std::array<double, 2>>> table_coeffs;

  /// Per-utility-level positive coefficients; missing levels mean 1.
  std::map<std::int64_t, double> level_coeffs;

  double table_coeff(int node, std::uint32_t row, bool value) const;
  double level_coeff(std::int64_t level) const;

  static EpsilonModel unit() { return EpsilonModel{}; }

  /// Coefficients drawn uniformly from [0.5, 2]: wide enough to flip an
  /// ambiguous sign, narrow enough that a one-exponent gap never flips a
  /// determinate verdict.
  static EpsilonModel random(const CausalNetwork& net, std::uint64_t seed, double epsilon = 1e-3);
};

/// Exact joint distribution of the network under the epsilon semantics:
/// per-node conditionals proportional to coeff * eps^rank, renormalized per
/// row, multiplied out (in log space). Sums to 1 within 1e-9. Capped at 10
/// variables.
std::vector<double> numeric_joint(const CausalNetwork& net, const EpsilonModel& em);

/// round(log p / log eps), asserted within 0.35 of an integer. p = 0 reports
/// the infinite rank. Sound when the non-power factors of p stay within a
/// third of a decade; sums and long products need epsilon_degree below.
Rank leading_exponent(double p, double epsilon);

/// Degree of p(eps) as a power series in eps, extracted as the slope of
/// log p between two evaluation points. The constant-factor slack (row
/// normalizers, sum multiplicities, coefficients) is nearly identical at both
/// points and cancels, which the single-point estimator cannot achieve.
/// Throws AmbiguityError when the slope is not within `band` of an integer.
int epsilon_degree(double log_p1, double log_p2, double log_e1, double log_e2,
                   double band = 0.25);

/// Log joint at an arbitrary epsilon (natural log; -inf for impossible
/// worlds). Building block for the agreement checks.
std::vector<double> log_numeric_joint(const CausalNetwork& net, const EpsilonModel& em,
                                      double eps);

/// Log of the Bayesian conditional given c. Throws ConditioningError when c
/// has probability 0.
std::vector<double> log_numeric_conditional(const CausalNetwork& net, const EpsilonModel& em,
                                            double eps, const Prop& c);

/// Log distribution after an atomic intervention: the acted-on node's
/// conditional is replaced by a point mass on the target value.
std::vector<double> log_numeric_atomic_action(const CausalNetwork& net, const EpsilonModel& em,
                                              double eps, AtomicAction a);

/// Log distribution after a conjunct action given a belief held as ranks:
/// sums the two-layer (previous world, next world) joint over the previous
/// layer, with per-variable persistence conditionals. The probabilistic
/// counterpart of the doubled-network construction.
std::vector<double> log_numeric_post_action(const CausalNetwork& net, const EpsilonModel& em,
                                            double eps, const RankingFunction& belief,
                                            const ActionConjunct& a);

/// Verdict of the numeric expected-utility computation: the positive and
/// negative parts of E[U] are summed as reals and their epsilon-degrees
/// recovered; the verdict combines them exactly like the rank calculus does.
struct NumericUtilityVerdict {
  bool ambiguous = false;
  int sign = 0;      // -1, 0, +1 (when !ambiguous)
  int exponent = 0;  // |n_plus - n_minus| (when !ambiguous)
  std::int64_t n_plus = 0;
  std::int64_t n_minus = 0;
  bool eu_sign_flipped = false;  // raw expected utility changed sign across draws
};

/// Evaluates the real expected utility of phi under a distribution consistent
/// with k_post, for `draws` independent coefficient vectors (worlds and
/// levels drawn from [0.5, 2]). Draw 0 uses em's fixed coefficients. Returns
/// ambiguous when the positive and negative parts tie above order 1, or when
/// draws disagree.
NumericUtilityVerdict numeric_utility_verdict(const Prop& phi, const RankingFunction& k_post,
                                              const UtilityRanking& mu, const EpsilonModel& em,
                                              int draws, std::uint64_t seed);

/// One named agreement suite: how many identities were checked and which
/// failed (with both values printed).
struct AgreementCheck {
  std::string name;
  int checks = 0;
  std::vector<std::string> failures;

  bool agreed() const { return failures.empty(); }
};

AgreementCheck check_joint_agreement(const CausalNetwork& net, const EpsilonModel& em);
AgreementCheck check_conditional_agreement(const CausalNetwork& net, const EpsilonModel& em,
                                           const Prop& c);
AgreementCheck check_atomic_action_agreement(const CausalNetwork& net, const EpsilonModel& em,
                                             AtomicAction a);
AgreementCheck check_post_action_agreement(const CausalNetwork& net, const EpsilonModel& em,
                                           const RankingFunction& belief, const ActionConjunct& a);
AgreementCheck check_utility_agreement(const Prop& phi, const RankingFunction& k_post,
                                       const UtilityRanking& mu, const EpsilonModel& em,
                                       int draws, std::uint64_t seed);

}  // namespace qdt
