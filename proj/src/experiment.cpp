#include "elimvote/experiment.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <stdexcept>

#if defined(_OPENMP)
#include <omp.h>
#endif

namespace elimvote {

namespace {

// Keeps the preferred-candidate draw independent of the profile draw that
// consumed the same seed.
constexpr std::uint64_t kPreferredSalt = 0x9c0ffee5eed5a17ull;

void validate_config(const ExperimentConfig& config) {
  if (config.elections < 0) throw std::invalid_argument("election count must be >= 0");
  if (config.rules.empty()) throw std::invalid_argument("at least one rule required");
  if (config.protocol == Protocol::kSmallOptimal) {
    if (config.m < 2 || config.m > 9) {
      throw std::invalid_argument("small-optimal needs 2 <= m <= 9 for the exact search");
    }
    if (config.n < 1) throw std::invalid_argument("small-optimal needs n >= 1");
  } else {
    if (config.sizes.empty()) throw std::invalid_argument("scaling needs at least one size");
    for (int m : config.sizes) {
      if (m < 2) throw std::invalid_argument("scaling sizes must be >= 2");
    }
  }
  if (config.fixed_preferred && *config.fixed_preferred < 0) {
    throw std::invalid_argument("fixed preferred candidate must be a valid index");
  }
}

long long total_elections(const ExperimentConfig& config) {
  return config.protocol == Protocol::kSmallOptimal
             ? config.elections
             : config.elections * static_cast<long long>(config.sizes.size());
}

void election_shape(const ExperimentConfig& config, long long index, int& m,
                    long long& n) {
  if (config.protocol == Protocol::kSmallOptimal) {
    m = config.m;
    n = config.n;
  } else {
    m = config.sizes[static_cast<std::size_t>(index / config.elections)];
    n = m;
  }
}

RuleOutcome evaluate_rule(const ExperimentConfig& config, const Profile& profile,
                          int preferred, VotingRule rule) {
  RuleOutcome out;
  out.counts.assign(config.heuristics.size(), -1);

  ManipulationInstance instance;
  instance.rule = rule;
  instance.base = profile;
  instance.preferred = preferred;

  try {
    if (evaluate(instance, {})) {
      out.discarded = true;
      return out;
    }
    for (std::size_t h = 0; h < config.heuristics.size(); ++h) {
      const ManipulationResult result =
          minimize_manipulators(instance, config.heuristics[h]);
      if (!result.success) {
        out.flagged = true;
        out.flag_reason = std::string(to_string(config.heuristics[h])) + " failed";
        return out;
      }
      out.counts[h] = result.manipulators_used;
    }
    if (config.protocol == Protocol::kSmallOptimal && !config.heuristics.empty()) {
      // Cheapest exact optimum: a heuristic already achieved best_count, so
      // only coalition sizes below it need searching.
      const long long best_count =
          *std::min_element(out.counts.begin(), out.counts.end());
      const OracleOutcome oracle =
          brute_force_optimal_unweighted(instance, best_count - 1, config.oracle);
      out.oracle_nodes = oracle.nodes;
      switch (oracle.status) {
        case OracleOutcome::Status::kFound:
          out.optimal = oracle.result.manipulators_used;
          break;
        case OracleOutcome::Status::kInfeasible:
          out.optimal = best_count;
          break;
        case OracleOutcome::Status::kBudgetExceeded:
          out.flagged = true;
          out.flag_reason = "oracle node budget exceeded";
          break;
      }
    }
  } catch (const std::exception& e) {
    out.flagged = true;
    out.flag_reason = e.what();
  }
  return out;
}

InstanceRecord compute_record(const ExperimentConfig& config, long long index) {
  InstanceRecord record;
  record.index = index;
  record.seed = config.base_seed + static_cast<std::uint64_t>(index);
  long long n = 0;
  election_shape(config, index, record.m, n);
  record.n = n;

  GeneratorSpec spec;
  spec.model = config.model;
  spec.m = record.m;
  spec.n = record.n;
  spec.seed = record.seed;
  spec.urn_a = config.urn_a;
  const Profile profile = generate_profile(spec);

  record.digest = profile_digest(profile);
  record.preferred = config.fixed_preferred
                         ? std::min(*config.fixed_preferred, record.m - 1)
                         : choose_preferred(profile, record.seed);
  record.rules.reserve(config.rules.size());
  for (VotingRule rule : config.rules) {
    record.rules.push_back(evaluate_rule(config, profile, record.preferred, rule));
  }
  return record;
}

std::vector<RuleSummary> aggregate(const ExperimentConfig& config,
                                   const std::vector<InstanceRecord>& records) {
  const std::size_t size_count =
      config.protocol == Protocol::kSmallOptimal ? 1 : config.sizes.size();
  std::vector<RuleSummary> summaries(config.rules.size() * size_count);
  for (std::size_t r = 0; r < config.rules.size(); ++r) {
    for (std::size_t s = 0; s < size_count; ++s) {
      RuleSummary& summary = summaries[r * size_count + s];
      summary.rule = config.rules[r];
      if (config.protocol == Protocol::kSmallOptimal) {
        summary.m = config.m;
        summary.n = config.n;
      } else {
        summary.m = config.sizes[s];
        summary.n = summary.m;
      }
      summary.cells.assign(config.heuristics.size(), CellStats{});
    }
  }

  for (const InstanceRecord& record : records) {
    const std::size_t size_idx =
        config.protocol == Protocol::kSmallOptimal
            ? 0
            : static_cast<std::size_t>(record.index / config.elections);
    for (std::size_t r = 0; r < record.rules.size(); ++r) {
      RuleSummary& summary = summaries[r * size_count + size_idx];
      const RuleOutcome& outcome = record.rules[r];
      ++summary.elections;
      if (outcome.discarded) {
        ++summary.discarded;
        continue;
      }
      if (outcome.flagged) {
        ++summary.flagged;
        continue;
      }
      for (std::size_t h = 0; h < outcome.counts.size(); ++h) {
        if (outcome.counts[h] < 0) continue;
        CellStats& cell = summary.cells[h];
        ++cell.used;
        const double value = static_cast<double>(outcome.counts[h]);
        cell.sum += value;
        cell.sum_sq += value * value;
        if (outcome.optimal && outcome.counts[h] == *outcome.optimal) ++cell.hits;
      }
    }
  }
  return summaries;
}

ExperimentResult run_protocol(const ExperimentConfig& config) {
  validate_config(config);
  const long long total = total_elections(config);
  ExperimentResult result;
  result.records.resize(static_cast<std::size_t>(total));

  if (config.threads == 1) {
    for (long long i = 0; i < total; ++i) {
      result.records[static_cast<std::size_t>(i)] = compute_record(config, i);
    }
  } else {
#if defined(_OPENMP)
    if (config.threads > 0) omp_set_num_threads(config.threads);
#pragma omp parallel for schedule(dynamic)
    for (long long i = 0; i < total; ++i) {
      result.records[static_cast<std::size_t>(i)] = compute_record(config, i);
    }
#else
    for (long long i = 0; i < total; ++i) {
      result.records[static_cast<std::size_t>(i)] = compute_record(config, i);
    }
#endif
  }

  result.summaries = aggregate(config, result.records);
  return result;
}

double cell_mean(const CellStats& cell) {
  return cell.used > 0 ? cell.sum / static_cast<double>(cell.used) : 0.0;
}

double cell_se(const CellStats& cell) {
  if (cell.used < 2) return 0.0;
  const double n = static_cast<double>(cell.used);
  const double mean = cell.sum / n;
  double variance = (cell.sum_sq - n * mean * mean) / (n - 1.0);
  if (variance < 0.0) variance = 0.0;  // numeric guard
  return std::sqrt(variance / n);
}

double cell_percent(const CellStats& cell) {
  return cell.used > 0
             ? 100.0 * static_cast<double>(cell.hits) / static_cast<double>(cell.used)
             : 0.0;
}

std::string fmt(const char* format, double value) {
  char buffer[64];
  std::snprintf(buffer, sizeof(buffer), format, value);
  return buffer;
}

void write_file(const std::filesystem::path& path, const std::string& content) {
  std::ofstream stream(path, std::ios::binary);
  if (!stream) throw std::runtime_error("cannot write " + path.string());
  stream << content;
}

}  // namespace

std::string summary_csv_text(const ExperimentConfig& config,
                             const ExperimentResult& result) {
  const bool small = config.protocol == Protocol::kSmallOptimal;
  std::string out = "rule,model,m,n,elections,discarded,flagged,used";
  for (Heuristic h : config.heuristics) out += "," + std::string(to_string(h));
  for (Heuristic h : config.heuristics) {
    const std::string name(to_string(h));
    out += small ? ("," + name + "_lo," + name + "_hi") : ("," + name + "_se");
  }
  out += "\n";
  for (const RuleSummary& summary : result.summaries) {
    const long long used = summary.elections - summary.discarded - summary.flagged;
    out += std::string(to_string(summary.rule)) + "," +
           std::string(to_string(config.model)) + "," + std::to_string(summary.m) +
           "," + std::to_string(summary.n) + "," + std::to_string(summary.elections) +
           "," + std::to_string(summary.discarded) + "," +
           std::to_string(summary.flagged) + "," + std::to_string(used);
    for (const CellStats& cell : summary.cells) {
      out += ",";
      if (cell.used > 0) {
        out += small ? fmt("%.2f", cell_percent(cell)) : fmt("%.4f", cell_mean(cell));
      }
    }
    for (const CellStats& cell : summary.cells) {
      if (small) {
        const WilsonInterval ci = wilson95(cell.hits, cell.used);
        out += ",";
        if (cell.used > 0) out += fmt("%.2f", ci.lo);
        out += ",";
        if (cell.used > 0) out += fmt("%.2f", ci.hi);
      } else {
        out += ",";
        if (cell.used > 0) out += fmt("%.4f", cell_se(cell));
      }
    }
    out += "\n";
  }
  return out;
}

std::string summary_table_text(const ExperimentConfig& config,
                               const ExperimentResult& result) {
  const bool small = config.protocol == Protocol::kSmallOptimal;
  std::string out;
  out += "protocol: " + std::string(to_string(config.protocol)) +
         "  model: " + std::string(to_string(config.model)) +
         "  elections: " + std::to_string(config.elections) +
         (small ? "" : " per size") + "  base seed: " + std::to_string(config.base_seed) +
         "\n";
  out += small ? "cells: % of usable elections where the heuristic matched the optimum "
                 "[95% Wilson interval]\n\n"
               : "cells: mean manipulators over usable elections (+/- standard error)\n\n";

  char line[512];
  std::snprintf(line, sizeof(line), "%-9s %5s %7s %9s %8s %7s", "rule", "m", "elect",
                "discarded", "flagged", "used");
  out += line;
  for (Heuristic h : config.heuristics) {
    std::snprintf(line, sizeof(line), " %-22s", std::string(to_string(h)).c_str());
    out += line;
  }
  out += "\n";
  for (const RuleSummary& summary : result.summaries) {
    const long long used = summary.elections - summary.discarded - summary.flagged;
    std::snprintf(line, sizeof(line), "%-9s %5d %7lld %9lld %8lld %7lld",
                  std::string(to_string(summary.rule)).c_str(), summary.m,
                  summary.elections, summary.discarded, summary.flagged, used);
    out += line;
    for (const CellStats& cell : summary.cells) {
      std::string body;
      if (cell.used == 0) {
        body = "-";
      } else if (small) {
        const WilsonInterval ci = wilson95(cell.hits, cell.used);
        body = fmt("%.1f", cell_percent(cell)) + " [" + fmt("%.1f", ci.lo) + "," +
               fmt("%.1f", ci.hi) + "]";
      } else {
        body = fmt("%.2f", cell_mean(cell)) + " +/- " + fmt("%.2f", cell_se(cell));
      }
      std::snprintf(line, sizeof(line), " %-22s", body.c_str());
      out += line;
    }
    out += "\n";
  }
  return out;
}

Protocol protocol_from_string(std::string_view name) {
  if (name == "small" || name == "small-optimal") return Protocol::kSmallOptimal;
  if (name == "scaling") return Protocol::kScaling;
  throw std::invalid_argument("unknown protocol: " + std::string(name));
}

std::string_view to_string(Protocol protocol) {
  return protocol == Protocol::kSmallOptimal ? "small-optimal" : "scaling";
}

WilsonInterval wilson95(long long hits, long long n) {
  if (n <= 0) return WilsonInterval{0.0, 100.0};
  const double z = 1.959963984540054;
  const double nn = static_cast<double>(n);
  const double p = static_cast<double>(hits) / nn;
  const double z2 = z * z;
  const double denom = 1.0 + z2 / nn;
  const double center = (p + z2 / (2.0 * nn)) / denom;
  const double half =
      z * std::sqrt(p * (1.0 - p) / nn + z2 / (4.0 * nn * nn)) / denom;
  WilsonInterval interval;
  interval.lo = 100.0 * std::max(0.0, center - half);
  interval.hi = 100.0 * std::min(1.0, center + half);
  return interval;
}

int choose_preferred(const Profile& profile, std::uint64_t seed) {
  std::mt19937_64 rng = make_rng(seed ^ kPreferredSalt);
  return static_cast<int>(
      bounded_u64(rng, static_cast<std::uint64_t>(profile.candidates().size())));
}

std::string profile_digest(const Profile& profile) {
  const std::string text = serialize_profile(profile);
  std::uint64_t hash = 14695981039346656037ull;
  for (unsigned char byte : text) {
    hash ^= byte;
    hash *= 1099511628211ull;
  }
  char buffer[17];
  std::snprintf(buffer, sizeof(buffer), "%016llx",
                static_cast<unsigned long long>(hash));
  return buffer;
}

ExperimentResult run_small_optimal(const ExperimentConfig& config) {
  if (config.protocol != Protocol::kSmallOptimal) {
    throw std::invalid_argument("config does not request the small-optimal protocol");
  }
  return run_protocol(config);
}

ExperimentResult run_scaling(const ExperimentConfig& config) {
  if (config.protocol != Protocol::kScaling) {
    throw std::invalid_argument("config does not request the scaling protocol");
  }
  return run_protocol(config);
}

ExperimentResult run_experiment(const ExperimentConfig& config) {
  return config.protocol == Protocol::kSmallOptimal ? run_small_optimal(config)
                                                    : run_scaling(config);
}

nlohmann::ordered_json config_to_json(const ExperimentConfig& config) {
  nlohmann::ordered_json rules = nlohmann::ordered_json::array();
  for (VotingRule rule : config.rules) rules.push_back(std::string(to_string(rule)));
  nlohmann::ordered_json heuristics = nlohmann::ordered_json::array();
  for (Heuristic h : config.heuristics) heuristics.push_back(std::string(to_string(h)));

  nlohmann::ordered_json json;
  json["protocol"] = std::string(to_string(config.protocol));
  json["rules"] = std::move(rules);
  json["heuristics"] = std::move(heuristics);
  json["elections"] = config.elections;
  json["m"] = config.m;
  json["n"] = config.n;
  json["sizes"] = config.sizes;
  json["model"] = std::string(to_string(config.model));
  json["urn_a"] =
      config.urn_a ? nlohmann::ordered_json(*config.urn_a) : nlohmann::ordered_json();
  json["base_seed"] = config.base_seed;
  json["threads"] = config.threads;
  json["oracle_node_budget"] = config.oracle.node_budget;
  json["fixed_preferred"] = config.fixed_preferred
                                ? nlohmann::ordered_json(*config.fixed_preferred)
                                : nlohmann::ordered_json();
  return json;
}

nlohmann::ordered_json record_to_json(const ExperimentConfig& config,
                                      const InstanceRecord& record) {
  nlohmann::ordered_json json;
  json["index"] = record.index;
  json["seed"] = record.seed;
  json["m"] = record.m;
  json["n"] = record.n;
  json["digest"] = record.digest;
  json["preferred"] = "c" + std::to_string(record.preferred + 1);
  nlohmann::ordered_json rules;
  for (std::size_t r = 0; r < record.rules.size(); ++r) {
    const RuleOutcome& outcome = record.rules[r];
    nlohmann::ordered_json entry;
    entry["discarded"] = outcome.discarded;
    entry["flagged"] = outcome.flagged;
    if (outcome.flagged) entry["flag_reason"] = outcome.flag_reason;
    nlohmann::ordered_json counts;
    for (std::size_t h = 0; h < outcome.counts.size(); ++h) {
      if (outcome.counts[h] >= 0) {
        counts[std::string(to_string(config.heuristics[h]))] = outcome.counts[h];
      }
    }
    entry["counts"] = std::move(counts);
    if (config.protocol == Protocol::kSmallOptimal) {
      entry["optimal"] = outcome.optimal ? nlohmann::ordered_json(*outcome.optimal)
                                         : nlohmann::ordered_json();
      entry["oracle_nodes"] = outcome.oracle_nodes;
    }
    rules[std::string(to_string(config.rules[r]))] = std::move(entry);
  }
  json["rules"] = std::move(rules);
  return json;
}

nlohmann::ordered_json summary_to_json(const ExperimentConfig& config,
                                       const ExperimentResult& result) {
  const bool small = config.protocol == Protocol::kSmallOptimal;
  nlohmann::ordered_json json;
  json["protocol"] = std::string(to_string(config.protocol));
  json["model"] = std::string(to_string(config.model));
  nlohmann::ordered_json blocks = nlohmann::ordered_json::array();
  for (const RuleSummary& summary : result.summaries) {
    nlohmann::ordered_json block;
    block["rule"] = std::string(to_string(summary.rule));
    block["m"] = summary.m;
    block["n"] = summary.n;
    block["elections"] = summary.elections;
    block["discarded"] = summary.discarded;
    block["flagged"] = summary.flagged;
    block["used"] = summary.elections - summary.discarded - summary.flagged;
    nlohmann::ordered_json cells;
    for (std::size_t h = 0; h < summary.cells.size(); ++h) {
      const CellStats& cell = summary.cells[h];
      nlohmann::ordered_json entry;
      entry["used"] = cell.used;
      if (small) {
        const WilsonInterval ci = wilson95(cell.hits, cell.used);
        entry["hits"] = cell.hits;
        entry["percent"] = cell_percent(cell);
        entry["wilson_lo"] = ci.lo;
        entry["wilson_hi"] = ci.hi;
      } else {
        entry["mean"] = cell_mean(cell);
        entry["se"] = cell_se(cell);
      }
      cells[std::string(to_string(config.heuristics[h]))] = std::move(entry);
    }
    block["cells"] = std::move(cells);
    blocks.push_back(std::move(block));
  }
  json["rules"] = std::move(blocks);
  return json;
}

void emit_outputs(const ExperimentConfig& config, const ExperimentResult& result,
                  const std::string& out_dir) {
  const std::filesystem::path dir(out_dir);
  std::filesystem::create_directories(dir);
  write_file(dir / "config.json", config_to_json(config).dump(2) + "\n");
  write_file(dir / "summary.csv", summary_csv_text(config, result));
  write_file(dir / "summary.txt", summary_table_text(config, result));

  std::string records;
  for (const InstanceRecord& record : result.records) {
    records += record_to_json(config, record).dump();
    records += "\n";
  }
  write_file(dir / "records.jsonl", records);
}

}  // namespace elimvote
