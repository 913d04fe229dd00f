#include "elimvote/manipulation.hpp"

#include <algorithm>
#include <stdexcept>

#include "coalition.hpp"
#include "engine.hpp"

namespace elimvote {

namespace detail {

engine::Rule to_engine_rule(VotingRule rule) {
  switch (rule) {
    case VotingRule::kBorda: return engine::Rule::kBorda;
    case VotingRule::kNanson: return engine::Rule::kNanson;
    case VotingRule::kBaldwin: return engine::Rule::kBaldwin;
  }
  throw std::logic_error("unknown rule");
}

Coalition::Coalition(const ManipulationInstance& instance)
    : work_(engine::ScaledProfile::from_profile(instance.base)),
      priority_(engine::tie_break_priority(work_.m, instance.preferred)),
      rule_(to_engine_rule(instance.rule)),
      unit_(work_.scale),
      preferred_(instance.preferred) {}

void Coalition::push(const std::vector<int>& ranking) {
  work_.orders.push_back(ranking);
  work_.weights.push_back(unit_);
  work_.total_weight += unit_;
  ++pushed_;
}

void Coalition::pop() {
  work_.orders.pop_back();
  work_.weights.pop_back();
  work_.total_weight -= unit_;
  --pushed_;
}

long long iteration_cap(const Profile& base) {
  const Rational total = base.total_weight();
  const long long voters = (total.num() + total.den() - 1) / total.den();
  return 50 * (voters + 1);
}

void validate_instance(const ManipulationInstance& instance) {
  const int m = instance.base.num_candidates();
  if (instance.preferred < 0 || instance.preferred >= m) {
    throw std::invalid_argument("preferred candidate out of range");
  }
  for (const Rational& w : instance.weights) {
    if (!w.is_positive()) {
      throw std::invalid_argument("manipulator weights must be positive");
    }
  }
}

void require_unweighted(const ManipulationInstance& instance, const char* op) {
  validate_instance(instance);
  if (instance.weighted()) {
    throw std::invalid_argument(std::string(op) + " requires an unweighted coalition");
  }
}

}  // namespace detail

namespace {

Profile combined_profile(const ManipulationInstance& instance,
                         const std::vector<LinearOrder>& ballots) {
  detail::validate_instance(instance);
  if (instance.weighted() && ballots.size() != instance.weights.size()) {
    throw std::invalid_argument("ballot count does not match manipulator weights");
  }
  Profile combined = instance.base;
  for (std::size_t i = 0; i < ballots.size(); ++i) {
    combined.add_ballot(ballots[i],
                        instance.weighted() ? instance.weights[i] : Rational(1));
  }
  return combined;
}

}  // namespace

Heuristic heuristic_from_string(std::string_view name) {
  if (name == "rev") return Heuristic::kReverse;
  if (name == "lafit") return Heuristic::kLargestFit;
  if (name == "avfit") return Heuristic::kAverageFit;
  if (name == "elim") return Heuristic::kEliminate;
  if (name == "revelim") return Heuristic::kRevEliminate;
  throw std::invalid_argument("unknown heuristic: " + std::string(name));
}

std::string_view to_string(Heuristic heuristic) {
  switch (heuristic) {
    case Heuristic::kReverse: return "Rev";
    case Heuristic::kLargestFit: return "LaFit";
    case Heuristic::kAverageFit: return "AvFit";
    case Heuristic::kEliminate: return "Elim";
    case Heuristic::kRevEliminate: return "RevElim";
  }
  throw std::logic_error("unknown heuristic");
}

bool evaluate(const ManipulationInstance& instance,
              const std::vector<LinearOrder>& ballots) {
  return evaluate_trace(instance, ballots).winner == instance.preferred;
}

EliminationTrace evaluate_trace(const ManipulationInstance& instance,
                                const std::vector<LinearOrder>& ballots) {
  return run_rule(combined_profile(instance, ballots), instance.rule,
                  TieBreakPolicy::favor(instance.preferred));
}

long long fit_lower_bound(const ManipulationInstance& instance) {
  detail::require_unweighted(instance, "fit_lower_bound");
  const int m = instance.base.num_candidates();
  if (m <= 1) return 0;
  const detail::Coalition coalition(instance);
  const std::vector<long long> s = coalition.scores();
  long long gap = 0;
  for (int x = 0; x < m; ++x) {
    gap = std::max(gap, s[static_cast<std::size_t>(x)] -
                            s[static_cast<std::size_t>(instance.preferred)]);
  }
  if (gap <= 0) return 0;
  const long long per_ballot = coalition.unit() * (m - 1);
  return (gap + per_ballot - 1) / per_ballot;
}

ManipulationResult minimize_manipulators(const ManipulationInstance& instance,
                                         Heuristic heuristic) {
  detail::require_unweighted(instance, "minimize_manipulators");
  switch (heuristic) {
    case Heuristic::kReverse: return heuristic_reverse(instance);
    case Heuristic::kEliminate: return heuristic_eliminate(instance);
    case Heuristic::kRevEliminate: return heuristic_rev_eliminate(instance);
    case Heuristic::kLargestFit:
    case Heuristic::kAverageFit: break;
  }
  if (evaluate(instance, {})) {
    ManipulationResult result;
    result.success = true;
    result.trace = evaluate_trace(instance, {});
    return result;
  }
  const bool average = heuristic == Heuristic::kAverageFit;
  const long long cap = detail::iteration_cap(instance.base);
  // The Borda counting bound is only a true floor for Borda itself; the
  // elimination rules can be manipulable below it (the preferred candidate
  // need not finish with the top Borda score), so their scan starts at 1.
  long long k = instance.rule == VotingRule::kBorda
                    ? std::max<long long>(1, fit_lower_bound(instance))
                    : 1;
  for (long long tries = 0; tries <= cap; ++tries, ++k) {
    ManipulationResult result = average ? heuristic_average_fit(instance, k)
                                        : heuristic_largest_fit(instance, k);
    if (result.success) return result;
  }
  throw std::runtime_error(std::string("fit heuristic found no manipulation within ") +
                           std::to_string(cap) + " coalition sizes");
}

nlohmann::ordered_json witness_to_json(const ManipulationResult& result,
                                       const ManipulationInstance& instance) {
  nlohmann::ordered_json out;
  out["success"] = result.success;
  out["manipulators_used"] = result.manipulators_used;
  nlohmann::ordered_json ballots = nlohmann::ordered_json::array();
  for (const LinearOrder& order : result.ballots) {
    ballots.push_back(order.to_string(instance.base.candidates()));
  }
  out["ballots"] = std::move(ballots);
  out["rule"] = to_string(instance.rule);
  out["trace"] = trace_to_json(result.trace, instance.base.candidates());
  return out;
}

}  // namespace elimvote
