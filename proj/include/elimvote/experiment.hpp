#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "elimvote/generators.hpp"
#include "elimvote/manipulation.hpp"
#include "elimvote/profile.hpp"
#include "elimvote/rules.hpp"

namespace elimvote {

enum class Protocol { kSmallOptimal, kScaling };

/// CLI spellings: "small", "scaling".
Protocol protocol_from_string(std::string_view name);
std::string_view to_string(Protocol protocol);

/// A full experiment description. Everything downstream — per-election
/// seeds, preferred-candidate draws, output files — is a pure function of
/// this struct, so equal configs give byte-identical outputs.
struct ExperimentConfig {
  Protocol protocol = Protocol::kSmallOptimal;
  std::vector<VotingRule> rules{VotingRule::kBaldwin, VotingRule::kNanson,
                                VotingRule::kBorda};
  std::vector<Heuristic> heuristics{Heuristic::kReverse, Heuristic::kLargestFit,
                                    Heuristic::kAverageFit, Heuristic::kEliminate,
                                    Heuristic::kRevEliminate};
  /// Elections per size for scaling; total elections for small-optimal.
  long long elections = 0;
  /// small-optimal election shape (the optimum is brute-forced, so m <= 9).
  int m = 5;
  long long n = 5;
  /// scaling sizes; each runs with n = m voters.
  std::vector<int> sizes{4, 8, 16, 32, 64, 128};
  RandomModel model = RandomModel::kUniform;
  std::optional<long long> urn_a;  // unset = the urn default of m!
  std::uint64_t base_seed = 0;
  /// 1 = run the serial reference loop; 0 = all available threads; other
  /// positive values pin the thread count.
  int threads = 0;
  OracleOptions oracle;
  /// Unset: the preferred candidate of election i is drawn uniformly from a
  /// stream salted with seed_i. Set: always that candidate index.
  std::optional<int> fixed_preferred;
};

/// Outcome of one election under one rule.
struct RuleOutcome {
  /// The preferred candidate already wins with zero manipulators; no
  /// counts are computed and the election leaves this rule's denominators.
  bool discarded = false;
  /// Work cap hit (heuristic iteration cap or oracle node budget); counts
  /// may be partial and the election is excluded from summary cells but
  /// reported in the flagged tally.
  bool flagged = false;
  std::string flag_reason;
  /// Parallel to ExperimentConfig::heuristics; -1 when unavailable.
  std::vector<long long> counts;
  std::optional<long long> optimal;  // small-optimal only
  long long oracle_nodes = 0;
};

/// One generated election: every configured rule evaluated on the same
/// profile and preferred candidate. records.jsonl has one line per record.
struct InstanceRecord {
  long long index = 0;
  std::uint64_t seed = 0;
  int m = 0;
  long long n = 0;
  std::string digest;  // FNV-1a of the canonical profile serialization
  int preferred = 0;
  std::vector<RuleOutcome> rules;  // parallel to ExperimentConfig::rules
};

/// Aggregate for one rule (small-optimal) or one rule × size (scaling).
struct CellStats {
  long long used = 0;  // denominator: not discarded, not flagged
  long long hits = 0;  // heuristic count equalled the optimum
  double sum = 0.0;    // of manipulator counts (scaling means)
  double sum_sq = 0.0;
};

struct RuleSummary {
  VotingRule rule = VotingRule::kBorda;
  int m = 0;
  long long n = 0;
  long long elections = 0;
  long long discarded = 0;
  long long flagged = 0;
  std::vector<CellStats> cells;  // parallel to ExperimentConfig::heuristics
};

struct ExperimentResult {
  std::vector<InstanceRecord> records;
  /// small-optimal: one per rule; scaling: rule-major over sizes.
  std::vector<RuleSummary> summaries;
};

struct WilsonInterval {
  double lo = 0.0;
  double hi = 0.0;
};

/// 95% Wilson score interval for hits successes out of n trials, as
/// percentages in [0, 100]. n = 0 yields [0, 100].
WilsonInterval wilson95(long long hits, long long n);

/// Uniform random candidate, drawn from a stream salted away from the
/// profile-generation stream of the same seed.
int choose_preferred(const Profile& profile, std::uint64_t seed);

/// FNV-1a 64-bit hash of the canonical profile serialization, as 16 hex
/// digits.
std::string profile_digest(const Profile& profile);

/// Runs `elections` small elections; per rule and heuristic, counts how
/// often the heuristic's minimal coalition matches the brute-forced
/// optimum. The oracle only ever searches below the best heuristic count —
/// if nothing smaller exists, that count is the optimum.
ExperimentResult run_small_optimal(const ExperimentConfig& config);

/// Runs `elections` elections at every configured size with n = m voters
/// and aggregates mean manipulator counts; no optimum is computed.
ExperimentResult run_scaling(const ExperimentConfig& config);

/// Dispatches on config.protocol.
ExperimentResult run_experiment(const ExperimentConfig& config);

nlohmann::ordered_json config_to_json(const ExperimentConfig& config);
nlohmann::ordered_json record_to_json(const ExperimentConfig& config,
                                      const InstanceRecord& record);
nlohmann::ordered_json summary_to_json(const ExperimentConfig& config,
                                       const ExperimentResult& result);

/// The summary.csv body: one row per rule (small-optimal) or rule × size
/// (scaling); heuristic columns appear in the configured order, then their
/// Wilson bounds (small-optimal) or standard errors (scaling).
std::string summary_csv_text(const ExperimentConfig& config,
                             const ExperimentResult& result);

/// The summary.txt body: the same table aligned for reading.
std::string summary_table_text(const ExperimentConfig& config,
                               const ExperimentResult& result);

/// Writes summary.csv, summary.txt, records.jsonl and config.json into
/// out_dir (created if missing). Reruns of the same config are
/// byte-identical.
void emit_outputs(const ExperimentConfig& config, const ExperimentResult& result,
                  const std::string& out_dir);

}  // namespace elimvote
