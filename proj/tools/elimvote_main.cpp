#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "elimvote/experiment.hpp"
#include "elimvote/generators.hpp"
#include "elimvote/manipulation.hpp"
#include "elimvote/profile.hpp"
#include "elimvote/reductions.hpp"
#include "elimvote/rules.hpp"

namespace {

using nlohmann::ordered_json;

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::invalid_argument("cannot read file: " + path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::invalid_argument("cannot write file: " + path);
  out << content;
}

elimvote::Profile load_profile(const std::string& path) {
  return elimvote::parse_profile(read_file(path));
}

int candidate_index(const elimvote::Profile& profile, const std::string& name) {
  const int index = profile.candidates().index_of(name);
  if (index < 0) throw std::invalid_argument("unknown candidate: " + name);
  return index;
}

std::vector<elimvote::Rational> parse_weights(const std::string& text) {
  std::vector<elimvote::Rational> weights;
  std::string item;
  std::istringstream stream(text);
  while (std::getline(stream, item, ',')) {
    if (item.empty()) throw std::invalid_argument("empty weight in list");
    weights.push_back(elimvote::Rational::from_string(item));
  }
  if (weights.empty()) throw std::invalid_argument("empty weight list");
  return weights;
}

std::uint64_t ensure_seed(std::optional<std::uint64_t> seed) {
  if (seed) return *seed;
  std::random_device device;
  const std::uint64_t chosen =
      (static_cast<std::uint64_t>(device()) << 32) ^ device();
  std::fprintf(stderr, "seed: %llu\n", static_cast<unsigned long long>(chosen));
  return chosen;
}

struct ReduceArtifacts {
  elimvote::ManipulationInstance instance;
  elimvote::IdentityReport report;
  ordered_json params;
  bool witness_available = false;
  std::vector<elimvote::LinearOrder> witness;   // one entry per coalition member
  long long witness_copies = 1;                 // >1: witness.front() repeated
};

ReduceArtifacts build_x3c(const ordered_json& input) {
  const int q = input.at("q").get<int>();
  std::vector<std::array<int, 3>> sets;
  for (const auto& entry : input.at("sets")) {
    if (!entry.is_array() || entry.size() != 3) {
      throw std::invalid_argument("each set must list exactly three elements");
    }
    sets.push_back({entry[0].get<int>(), entry[1].get<int>(), entry[2].get<int>()});
  }
  const elimvote::X3CInstance x3c(q, std::move(sets));

  ReduceArtifacts artifacts;
  artifacts.instance = elimvote::x3c_to_baldwin(x3c);
  artifacts.report = elimvote::check_x3c_identities(x3c, artifacts.instance);
  artifacts.params = ordered_json{{"q", x3c.q}, {"t", x3c.t()}};
  if (const auto cover = elimvote::x3c_solve_small(x3c)) {
    artifacts.witness_available = true;
    artifacts.witness.push_back(elimvote::x3c_witness_vote(x3c, *cover));
    artifacts.params["cover"] = *cover;
  }
  return artifacts;
}

ReduceArtifacts build_partition(const ordered_json& input) {
  const ordered_json& list = input.is_array() ? input : input.at("integers");
  std::vector<long long> integers;
  for (const auto& entry : list) integers.push_back(entry.get<long long>());
  const elimvote::PartitionInstance partition(std::move(integers));

  ReduceArtifacts artifacts;
  artifacts.instance = elimvote::partition_to_nanson(partition);
  artifacts.report = elimvote::check_partition_identities(partition, artifacts.instance);
  artifacts.params = ordered_json{{"integers", partition.integers}, {"K", partition.K}};
  if (const auto side = elimvote::partition_solve_small(partition)) {
    artifacts.witness_available = true;
    artifacts.witness = elimvote::partition_witness_votes(partition, *side);
    artifacts.params["side"] = *side;
  }
  return artifacts;
}

ReduceArtifacts build_pathology(long long n) {
  ReduceArtifacts artifacts;
  artifacts.instance = elimvote::reverse_pathology_instance(n);
  artifacts.report = elimvote::check_pathology_identities(n, artifacts.instance);
  artifacts.params = ordered_json{{"n", n}};
  artifacts.witness_available = true;
  // 18n identical coalition votes suffice for this family.
  artifacts.witness.push_back(elimvote::LinearOrder{std::vector<int>{6, 0, 1, 2, 3, 4, 5}});
  artifacts.witness_copies = 18 * n;
  return artifacts;
}

int run_reduce(const std::string& kind, const std::string& input_path, long long n,
               const std::string& out_path, bool check, bool json) {
  ReduceArtifacts artifacts;
  if (kind == "pathology") {
    artifacts = build_pathology(n);
  } else {
    if (input_path.empty()) {
      throw std::invalid_argument("--input is required for " + kind);
    }
    const ordered_json input = ordered_json::parse(read_file(input_path));
    artifacts = kind == "x3c" ? build_x3c(input) : build_partition(input);
  }

  const elimvote::ManipulationInstance& instance = artifacts.instance;
  const elimvote::CandidateSet& candidates = instance.base.candidates();
  const std::string profile_text = elimvote::serialize_profile(instance.base);

  ordered_json sidecar;
  sidecar["kind"] = kind;
  sidecar["rule"] = std::string(to_string(instance.rule));
  sidecar["preferred"] = candidates.names[static_cast<std::size_t>(instance.preferred)];
  sidecar["params"] = artifacts.params;
  if (instance.weighted()) {
    ordered_json weights = ordered_json::array();
    for (const auto& w : instance.weights) weights.push_back(w.to_string());
    sidecar["weights"] = std::move(weights);
  }
  sidecar["identities"] = artifacts.report.details;
  sidecar["identities_hold"] = artifacts.report.all_hold;
  sidecar["witness_available"] = artifacts.witness_available;
  if (artifacts.witness_available) {
    ordered_json votes = ordered_json::array();
    for (const auto& ballot : artifacts.witness) {
      votes.push_back(ordered_json{{"ballot", ballot.to_string(candidates)},
                                   {"copies", artifacts.witness_copies}});
    }
    sidecar["witness"] = std::move(votes);

    std::vector<elimvote::LinearOrder> ballots;
    if (artifacts.witness_copies == 1) {
      ballots = artifacts.witness;
    } else {
      ballots.assign(static_cast<std::size_t>(artifacts.witness_copies),
                     artifacts.witness.front());
    }
    sidecar["witness_succeeds"] = elimvote::evaluate(instance, ballots);
  }

  if (!out_path.empty()) write_file(out_path, profile_text);
  if (json) {
    ordered_json output{{"profile", profile_text}, {"sidecar", sidecar}};
    std::cout << output.dump(2) << "\n";
  } else {
    if (out_path.empty()) std::cout << profile_text << "\n";
    std::cout << sidecar.dump(2) << "\n";
  }
  if (check) return artifacts.report.all_hold ? 0 : 1;
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "Elimination-voting workbench: Borda/Nanson/Baldwin evaluation, coalition "
      "manipulation heuristics and exact searches, hardness-instance builders, "
      "profile generators and experiment protocols."};
  app.require_subcommand(1);

  // eval
  std::string eval_rule, eval_profile, eval_favor;
  bool eval_json = false;
  CLI::App* eval = app.add_subcommand("eval", "Run a rule on a profile file");
  eval->add_option("--rule", eval_rule, "borda|nanson|baldwin")->required();
  eval->add_option("--profile", eval_profile, "profile file")->required();
  eval->add_option("--favor", eval_favor, "candidate favored by the tie-break");
  eval->add_flag("--json", eval_json, "emit a single JSON object");

  // manipulate
  std::string man_rule, man_heuristic, man_profile, man_prefer;
  bool man_json = false;
  CLI::App* manipulate =
      app.add_subcommand("manipulate", "Find a small manipulating coalition");
  manipulate->add_option("--rule", man_rule, "borda|nanson|baldwin")->required();
  manipulate->add_option("--heuristic", man_heuristic, "rev|lafit|avfit|elim|revelim")
      ->required();
  manipulate->add_option("--profile", man_profile, "profile file")->required();
  manipulate->add_option("--prefer", man_prefer, "candidate the coalition backs")
      ->required();
  manipulate->add_flag("--json", man_json, "emit a single JSON object");

  // optimal
  std::string opt_rule, opt_profile, opt_prefer, opt_weights, opt_method = "brute";
  long long opt_kmax = -1;
  long long opt_budget = elimvote::OracleOptions{}.node_budget;
  bool opt_json = false;
  CLI::App* optimal =
      app.add_subcommand("optimal", "Exact manipulation search (brute force)");
  optimal->add_option("--rule", opt_rule, "borda|nanson|baldwin")->required();
  optimal->add_option("--profile", opt_profile, "profile file")->required();
  optimal->add_option("--prefer", opt_prefer, "candidate the coalition backs")
      ->required();
  optimal->add_option("--weights", opt_weights,
                      "comma-separated manipulator weights (weighted search)");
  optimal->add_option("--k-max", opt_kmax,
                      "largest coalition size to try (unweighted search)");
  optimal->add_option("--budget", opt_budget,
                      "search-node budget for the unweighted search (<=0 unlimited)");
  optimal->add_option("--method", opt_method,
                      "weighted search: brute | 3cand (Nanson, <=3 candidates)")
      ->check(CLI::IsMember({"brute", "3cand"}));
  optimal->add_flag("--json", opt_json, "emit a single JSON object");

  // reduce
  std::string red_kind, red_input, red_out;
  long long red_n = 0;
  bool red_check = false, red_json = false;
  CLI::App* reduce =
      app.add_subcommand("reduce", "Build a hardness instance as a profile + sidecar");
  reduce->add_option("kind", red_kind, "x3c | partition | pathology")
      ->required()
      ->check(CLI::IsMember({"x3c", "partition", "pathology"}));
  reduce->add_option("--input", red_input,
                     "instance JSON ({\"q\",\"sets\"} or {\"integers\"})");
  reduce->add_option("--n", red_n, "family size for pathology");
  reduce->add_option("--out", red_out, "write the profile here instead of stdout");
  reduce->add_flag("--check", red_check, "exit 0 only if all score identities hold");
  reduce->add_flag("--json", red_json, "emit a single JSON object");

  // generate
  std::string gen_model = "uniform", gen_out;
  int gen_m = 0;
  long long gen_n = 0;
  std::optional<std::uint64_t> gen_seed;
  std::optional<long long> gen_urn_a;
  CLI::App* generate = app.add_subcommand("generate", "Sample a random profile");
  generate->add_option("--model", gen_model, "uniform|urn")->required();
  generate->add_option("--candidates", gen_m, "number of candidates")->required();
  generate->add_option("--voters", gen_n, "number of votes")->required();
  generate->add_option("--seed", gen_seed, "64-bit seed (auto-chosen and printed if omitted)");
  generate->add_option("--urn-a", gen_urn_a,
                       "urn reinforcement count (default m!, needs m<=20 if set)");
  generate->add_option("--out", gen_out, "write the profile here instead of stdout");

  // experiment
  std::string exp_protocol, exp_model = "uniform", exp_out;
  std::vector<std::string> exp_rules, exp_heuristics;
  long long exp_elections = 0;
  int exp_m = 5;
  long long exp_n = 5;
  std::vector<int> exp_sizes{4, 8, 16, 32, 64, 128};
  std::optional<std::uint64_t> exp_seed;
  std::optional<long long> exp_urn_a;
  std::optional<int> exp_fixed;
  int exp_threads = 0;
  long long exp_budget = elimvote::OracleOptions{}.node_budget;
  bool exp_json = false;
  CLI::App* experiment =
      app.add_subcommand("experiment", "Run a full experiment protocol");
  experiment->add_option("--protocol", exp_protocol, "small|scaling")->required();
  experiment->add_option("--rule", exp_rules, "rule(s) to run (default all three)");
  experiment->add_option("--heuristic", exp_heuristics,
                         "heuristic(s) to run (default all five)");
  experiment->add_option("--model", exp_model, "uniform|urn");
  experiment->add_option("--elections", exp_elections,
                         "elections (per size for scaling)")
      ->required();
  experiment->add_option("--m", exp_m, "candidates (small protocol)");
  experiment->add_option("--n", exp_n, "votes (small protocol)");
  experiment->add_option("--sizes", exp_sizes, "scaling sizes (n = m)")
      ->delimiter(',');
  experiment->add_option("--seed", exp_seed,
                         "base seed (auto-chosen and printed if omitted)");
  experiment->add_option("--urn-a", exp_urn_a, "urn reinforcement count");
  experiment->add_option("--fixed-preferred", exp_fixed,
                         "always back this candidate index instead of a random one");
  experiment->add_option("--threads", exp_threads, "0 = all cores, 1 = serial");
  experiment->add_option("--budget", exp_budget, "oracle node budget per election");
  experiment->add_option("--out", exp_out, "output directory")->required();
  experiment->add_flag("--json", exp_json, "print the summary as JSON");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (*eval) {
      const elimvote::Profile profile = load_profile(eval_profile);
      elimvote::TieBreakPolicy policy = elimvote::TieBreakPolicy::fixed_order();
      if (!eval_favor.empty()) {
        policy = elimvote::TieBreakPolicy::favor(candidate_index(profile, eval_favor));
      }
      const elimvote::EliminationTrace trace =
          elimvote::run_rule(profile, elimvote::rule_from_string(eval_rule), policy);
      const ordered_json json = elimvote::trace_to_json(trace, profile.candidates());
      if (eval_json) {
        std::cout << json.dump(2) << "\n";
      } else {
        std::cout << "winner: " << json.at("winner").get<std::string>() << "\n"
                  << json.dump(2) << "\n";
      }
      return 0;
    }

    if (*manipulate) {
      const elimvote::Profile profile = load_profile(man_profile);
      elimvote::ManipulationInstance instance;
      instance.rule = elimvote::rule_from_string(man_rule);
      instance.base = profile;
      instance.preferred = candidate_index(profile, man_prefer);
      const elimvote::ManipulationResult result = elimvote::minimize_manipulators(
          instance, elimvote::heuristic_from_string(man_heuristic));
      const ordered_json json = elimvote::witness_to_json(result, instance);
      if (man_json) {
        std::cout << json.dump(2) << "\n";
      } else {
        std::cout << "manipulators: " << result.manipulators_used << "\n";
        for (const auto& ballot : result.ballots) {
          std::cout << ballot.to_string(profile.candidates()) << "\n";
        }
      }
      return result.success ? 0 : 1;
    }

    if (*optimal) {
      const elimvote::Profile profile = load_profile(opt_profile);
      elimvote::ManipulationInstance instance;
      instance.rule = elimvote::rule_from_string(opt_rule);
      instance.base = profile;
      instance.preferred = candidate_index(profile, opt_prefer);

      if (!opt_weights.empty()) {
        instance.weights = parse_weights(opt_weights);
        const elimvote::ManipulationResult result =
            opt_method == "3cand" ? elimvote::nanson_weighted_3cand(instance)
                                  : elimvote::brute_force_weighted(instance);
        const ordered_json json = elimvote::witness_to_json(result, instance);
        if (opt_json) {
          std::cout << json.dump(2) << "\n";
        } else {
          std::cout << (result.success ? "feasible" : "infeasible") << "\n";
          for (const auto& ballot : result.ballots) {
            std::cout << ballot.to_string(profile.candidates()) << "\n";
          }
        }
        return result.success ? 0 : 1;
      }

      if (opt_kmax < 0) {
        throw std::invalid_argument("--k-max is required for the unweighted search");
      }
      elimvote::OracleOptions options;
      options.node_budget = opt_budget;
      const elimvote::OracleOutcome outcome =
          elimvote::brute_force_optimal_unweighted(instance, opt_kmax, options);
      const char* status =
          outcome.status == elimvote::OracleOutcome::Status::kFound ? "found"
          : outcome.status == elimvote::OracleOutcome::Status::kInfeasible
              ? "infeasible"
              : "budget-exceeded";
      ordered_json json{{"status", status}, {"nodes", outcome.nodes}};
      json["witness"] = outcome.found()
                            ? elimvote::witness_to_json(outcome.result, instance)
                            : ordered_json();
      if (opt_json) {
        std::cout << json.dump(2) << "\n";
      } else {
        std::cout << "status: " << status << "\n";
        if (outcome.found()) {
          std::cout << "optimal: " << outcome.result.manipulators_used << "\n";
          for (const auto& ballot : outcome.result.ballots) {
            std::cout << ballot.to_string(profile.candidates()) << "\n";
          }
        }
      }
      return outcome.found() ? 0 : 1;
    }

    if (*reduce) {
      return run_reduce(red_kind, red_input, red_n, red_out, red_check, red_json);
    }

    if (*generate) {
      elimvote::GeneratorSpec spec;
      spec.model = elimvote::model_from_string(gen_model);
      spec.m = gen_m;
      spec.n = gen_n;
      spec.seed = ensure_seed(gen_seed);
      spec.urn_a = gen_urn_a;
      const std::string text =
          elimvote::serialize_profile(elimvote::generate_profile(spec));
      if (gen_out.empty()) {
        std::cout << text;
      } else {
        write_file(gen_out, text);
      }
      return 0;
    }

    if (*experiment) {
      elimvote::ExperimentConfig config;
      config.protocol = elimvote::protocol_from_string(exp_protocol);
      if (!exp_rules.empty()) {
        config.rules.clear();
        for (const auto& name : exp_rules) {
          config.rules.push_back(elimvote::rule_from_string(name));
        }
      }
      if (!exp_heuristics.empty()) {
        config.heuristics.clear();
        for (const auto& name : exp_heuristics) {
          config.heuristics.push_back(elimvote::heuristic_from_string(name));
        }
      }
      config.model = elimvote::model_from_string(exp_model);
      config.elections = exp_elections;
      config.m = exp_m;
      config.n = exp_n;
      config.sizes = exp_sizes;
      config.base_seed = ensure_seed(exp_seed);
      config.urn_a = exp_urn_a;
      config.fixed_preferred = exp_fixed;
      config.threads = exp_threads;
      config.oracle.node_budget = exp_budget;

      const elimvote::ExperimentResult result = elimvote::run_experiment(config);
      elimvote::emit_outputs(config, result, exp_out);
      if (exp_json) {
        std::cout << elimvote::summary_to_json(config, result).dump(2) << "\n";
      } else {
        std::cout << elimvote::summary_table_text(config, result);
      }
      std::fprintf(stderr, "outputs written to %s\n", exp_out.c_str());
      return 0;
    }
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  }
  return 2;
}
