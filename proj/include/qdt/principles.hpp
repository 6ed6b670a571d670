#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "qdt/generate.hpp"

namespace qdt {

enum class Principle {
  SureThing,        // O(A|C) and O(A|not C) imply O(A)
  WeakConsistency,  // O(A|C) implies not O(not A|C)
};

Principle principle_from_name(const std::string& name);
std::string principle_name(Principle p);

/// A raw violation found by the randomized search, with everything needed to
/// replay it. `oracle_validated` tells whether the numeric semantics agreed
/// with every utility rank involved: if it did, the violation is a genuine
/// finding about the calculus; if not, it is an engine bug.
struct Counterexample {
  std::uint64_t trial = 0;
  std::string model_text;   // serialized model
  std::string query_text;   // serialized reproduction queries
  std::string detail;
  bool oracle_validated = false;
};

struct PrincipleReport {
  Principle principle = Principle::SureThing;
  std::uint64_t seed = 0;
  std::uint64_t trials_requested = 0;
  std::uint64_t trials_run = 0;      // trials whose conditions were evaluable
  std::uint64_t trials_skipped = 0;  // conditioning impossible, etc.
  std::vector<Counterexample> counterexamples;
};

/// Samples random epistemic states and actions, evaluates the principle's
/// antecedent and consequent through the ought criterion (risk-averse,
/// standard mode), and records violations. Deterministic: per-trial seeds are
/// derived from the master seed, so the report is independent of evaluation
/// order.
PrincipleReport check_principle(Principle principle, const GeneratorConfig& cfg,
                                std::uint64_t trials, std::uint64_t seed);

}  // namespace qdt
