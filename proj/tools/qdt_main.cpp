#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "qdt/dsl.hpp"
#include "qdt/epsilon.hpp"
#include "qdt/errors.hpp"
#include "qdt/principles.hpp"
#include "qdt/session.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitParse = 2;
constexpr int kExitSemantic = 3;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw UsageError("cannot open file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

std::uint64_t default_seed() {
  if (const char* env = std::getenv("QDT_SEED")) {
    try {
      return std::stoull(env);
    } catch (const std::exception&) {
      throw UsageError("QDT_SEED is not an unsigned integer");
    }
  }
  return 0;
}

qdt::RiskPolicy policy_from(const std::string& name) {
  if (name == "averse") return qdt::RiskPolicy::RiskAverse;
  if (name == "strict") return qdt::RiskPolicy::Strict;
  throw UsageError("unknown policy '" + name + "' (expected averse or strict)");
}

int cmd_check(const std::string& model_path) {
  qdt::ModelDocument doc = qdt::parse_model(read_file(model_path));
  qdt::EpistemicState es = doc.epistemic_state();
  std::cout << "model " << doc.name << ": ok (" << es.network.n_vars() << " variables, "
            << es.network.edges().size() << " edges)\n";
  std::cout << "prior ranking (finite worlds):\n"
            << qdt::ranking_table_text(es.prior, es.network.variables());
  return kExitOk;
}

int run_script(const qdt::ModelDocument& doc, const qdt::QueryScript& script, bool json,
               qdt::RiskPolicy policy, bool strong) {
  qdt::SessionState session(doc.epistemic_state(), policy,
                            strong ? qdt::OughtMode::Strong : qdt::OughtMode::Standard);
  const auto& vars = session.epistemic_state().network.variables();

  nlohmann::ordered_json trace = nlohmann::ordered_json::array();
  for (const qdt::QueryCommand& cmd : script.commands) {
    qdt::TranscriptEntry entry = session.execute(cmd);
    if (json) {
      trace.push_back(std::move(entry.json));
    } else {
      std::cout << "> " << qdt::serialize_command(cmd, vars) << "\n" << entry.text;
    }
  }
  if (json) std::cout << trace.dump(2) << "\n";
  return kExitOk;
}

int cmd_run(const std::string& model_path, const std::string& script_path, bool json,
            const std::string& policy, bool strong) {
  qdt::ModelDocument doc = qdt::parse_model(read_file(model_path));
  qdt::QueryScript script = qdt::parse_query(read_file(script_path), doc);
  return run_script(doc, script, json, policy_from(policy), strong);
}

int cmd_query(const std::string& model_path, const std::vector<std::string>& observes,
              const std::vector<std::string>& oughts, const std::vector<std::string>& dmcs,
              bool json, const std::string& policy, bool strong) {
  qdt::ModelDocument doc = qdt::parse_model(read_file(model_path));
  std::string text;
  for (const std::string& o : observes) text += "observe " + o + "\n";
  for (const std::string& o : oughts) text += "ought " + o + (strong ? " strong ?" : " ?") + "\n";
  for (const std::string& d : dmcs) text += "dmc " + d + " ?\n";
  qdt::QueryScript script = qdt::parse_query(text, doc);
  return run_script(doc, script, json, policy_from(policy), false);
}

int cmd_principles(const std::string& principle, std::uint64_t trials, int vars,
                   std::uint64_t seed, const std::string& out_dir) {
  qdt::GeneratorConfig cfg;
  cfg.max_vars = vars;
  qdt::PrincipleReport report =
      qdt::check_principle(qdt::principle_from_name(principle), cfg, trials, seed);

  std::cout << "principle=" << qdt::principle_name(report.principle) << " seed=" << report.seed
            << " trials=" << report.trials_requested << " run=" << report.trials_run
            << " skipped=" << report.trials_skipped
            << " counterexamples=" << report.counterexamples.size() << "\n";
  for (const qdt::Counterexample& ce : report.counterexamples) {
    std::string base = out_dir + "/counterexample-" + std::to_string(ce.trial);
    std::ofstream model_out(base + ".qdt", std::ios::binary);
    std::ofstream query_out(base + ".qdq", std::ios::binary);
    if (!model_out || !query_out) throw UsageError("cannot write reproduction files in " + out_dir);
    model_out << ce.model_text;
    query_out << ce.query_text;
    std::cout << "counterexample trial=" << ce.trial << " oracle_validated="
              << (ce.oracle_validated ? "true" : "false") << " model=" << base + ".qdt"
              << " queries=" << base + ".qdq" << "\n  " << ce.detail << "\n";
  }
  return kExitOk;  // counterexamples are results, not failures
}

int cmd_oracle(const std::string& model_path, double epsilon, int draws, std::uint64_t seed) {
  qdt::ModelDocument doc = qdt::parse_model(read_file(model_path));
  qdt::EpistemicState es = doc.epistemic_state();
  const qdt::CausalNetwork& net = es.network;
  const int n = net.n_vars();

  qdt::EpsilonModel em;
  em.epsilon = epsilon;

  std::vector<qdt::AgreementCheck> suites;
  suites.push_back(qdt::check_joint_agreement(net, em));

  // Observations: each literal that is believable under the prior.
  std::vector<qdt::Prop> observations;
  for (int v = 0; v < n; ++v)
    for (bool val : {true, false}) {
      qdt::Prop lit = qdt::Prop::lit(v, val);
      if (es.prior.rank_of(lit).is_finite()) observations.push_back(lit);
    }
  for (const qdt::Prop& c : observations)
    suites.push_back(qdt::check_conditional_agreement(net, em, c));

  for (int v = 0; v < n; ++v)
    for (bool val : {true, false})
      suites.push_back(qdt::check_atomic_action_agreement(net, em, qdt::AtomicAction{v, val}));

  // The two-layer numeric marginal is quadratic in the world count; keep it
  // to models where that is instant.
  if (n <= 6) {
    for (const qdt::Prop& c : observations) {
      qdt::RankingFunction belief = es.prior.condition(c);
      for (int v = 0; v < n; ++v)
        for (bool val : {true, false})
          suites.push_back(qdt::check_post_action_agreement(
              net, em, belief, qdt::ActionConjunct::of({{v, val}})));
    }
  }

  suites.push_back(qdt::check_utility_agreement(qdt::Prop::top(), es.prior, es.utility, em, draws,
                                                qdt::mix_seed(seed, 1)));
  {
    int stream = 2;
    for (const qdt::Prop& c : observations)
      suites.push_back(qdt::check_utility_agreement(qdt::Prop::top(), es.prior.condition(c),
                                                    es.utility, em, draws,
                                                    qdt::mix_seed(seed, stream++)));
  }

  bool agreed = true;
  nlohmann::ordered_json out;
  out["model"] = doc.name;
  out["epsilon"] = epsilon;
  out["draws"] = draws;
  out["seed"] = seed;
  nlohmann::ordered_json arr = nlohmann::ordered_json::array();
  for (const qdt::AgreementCheck& s : suites) {
    nlohmann::ordered_json j;
    j["name"] = s.name;
    j["checks"] = s.checks;
    j["failures"] = s.failures;
    arr.push_back(std::move(j));
    agreed = agreed && s.agreed();
  }
  out["suites"] = std::move(arr);
  out["agreed"] = agreed;
  std::cout << out.dump(2) << "\n";
  return agreed ? kExitOk : kExitSemantic;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"qualitative decision engine over ranked beliefs, causal networks and "
               "integer utilities"};
  app.require_subcommand(1);

  std::string model_path, script_path;
  bool json = false;
  bool strong = false;
  std::string policy = "averse";

  CLI::App* check = app.add_subcommand("check", "validate a model and print its prior ranking");
  check->add_option("model", model_path, "model file (.qdt)")->required();

  CLI::App* run = app.add_subcommand("run", "execute a query script against a model");
  run->add_option("model", model_path, "model file (.qdt)")->required();
  run->add_option("script", script_path, "query script (.qdq)")->required();
  run->add_flag("--json", json, "emit the JSON trace instead of text");
  run->add_option("--policy", policy, "ambiguity policy: averse|strict");
  run->add_flag("--strong", strong, "require acting to also beat the opposite action");

  std::vector<std::string> observes, oughts, dmcs;
  CLI::App* query = app.add_subcommand("query", "one-shot observations and queries");
  query->add_option("model", model_path, "model file (.qdt)")->required();
  query->add_option("--observe", observes, "observation formula (repeatable)");
  query->add_option("--ought", oughts, "action DNF to test, e.g. '(u)' (repeatable)");
  query->add_option("--dmc", dmcs, "conditional to test, e.g. '(u) => l' (repeatable)");
  query->add_flag("--json", json, "emit the JSON trace instead of text");
  query->add_option("--policy", policy, "ambiguity policy: averse|strict");
  query->add_flag("--strong", strong, "strong assertability for --ought");

  std::string principle = "sure-thing";
  std::uint64_t trials = 10000;
  int vars = 4;
  std::uint64_t seed = 0;
  bool seed_given = false;
  std::string out_dir = ".";
  CLI::App* principles = app.add_subcommand("principles", "randomized search for principle "
                                                          "violations");
  principles->add_option("--principle", principle, "sure-thing|weak-consistency");
  principles->add_option("--trials", trials, "number of random epistemic states");
  principles->add_option("--vars", vars, "maximum variables per state (<= 4)")
      ->check(CLI::Range(2, 4));
  principles->add_option("--seed", seed, "master seed (default QDT_SEED or 0)")
      ->trigger_on_parse()
      ->each([&](const std::string&) { seed_given = true; });
  principles->add_option("--out-dir", out_dir, "where reproduction files are written");

  double epsilon = 1e-3;
  int draws = 20;
  CLI::App* oracle = app.add_subcommand("oracle", "numeric agreement report for a model");
  oracle->add_option("model", model_path, "model file (.qdt)")->required();
  oracle->add_option("--epsilon", epsilon, "infinitesimal base")->check(CLI::PositiveNumber);
  oracle->add_option("--draws", draws, "coefficient draws for utility checks")
      ->check(CLI::Range(1, 1000));
  oracle->add_option("--seed", seed, "master seed (default QDT_SEED or 0)")
      ->trigger_on_parse()
      ->each([&](const std::string&) { seed_given = true; });

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (!seed_given) seed = default_seed();
    if (check->parsed()) return cmd_check(model_path);
    if (run->parsed()) return cmd_run(model_path, script_path, json, policy, strong);
    if (query->parsed()) return cmd_query(model_path, observes, oughts, dmcs, json, policy, strong);
    if (principles->parsed()) return cmd_principles(principle, trials, vars, seed, out_dir);
    if (oracle->parsed()) return cmd_oracle(model_path, epsilon, draws, seed);
    return kExitUsage;
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const qdt::ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    if (!e.expected().empty()) {
      std::cerr << "expected:";
      for (const std::string& t : e.expected()) std::cerr << " " << t;
      std::cerr << "\n";
    }
    return kExitParse;
  } catch (const qdt::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitSemantic;
  }
}
