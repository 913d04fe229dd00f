#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

#include "elimvote/profile.hpp"
#include "elimvote/rules.hpp"

namespace elimvote {

/// A coalitional manipulation problem: fixed non-manipulator ballots, a
/// candidate the coalition wants elected, and (for the weighted variant)
/// the coalition members' weights. Unweighted coalitions leave `weights`
/// empty; their size is supplied per call.
struct ManipulationInstance {
  VotingRule rule = VotingRule::kBorda;
  Profile base;
  int preferred = 0;
  std::vector<Rational> weights;

  bool weighted() const { return !weights.empty(); }
};

struct ManipulationResult {
  bool success = false;
  std::vector<LinearOrder> ballots;
  long long manipulators_used = 0;
  EliminationTrace trace;  // final combined election (base + ballots)
};

enum class Heuristic { kReverse, kLargestFit, kAverageFit, kEliminate, kRevEliminate };

/// CLI spellings: "rev", "lafit", "avfit", "elim", "revelim".
Heuristic heuristic_from_string(std::string_view name);
/// Table spellings: "Rev", "LaFit", "AvFit", "Elim", "RevElim".
std::string_view to_string(Heuristic heuristic);

/// True iff the preferred candidate wins base + ballots under the
/// instance's rule with the tie-break favoring it. Weighted instances pair
/// ballots[i] with weights[i] and require matching sizes.
bool evaluate(const ManipulationInstance& instance,
              const std::vector<LinearOrder>& ballots);

/// Full trace of the combined election evaluated as above.
EliminationTrace evaluate_trace(const ManipulationInstance& instance,
                                const std::vector<LinearOrder>& ballots);

/// Adds ballots one at a time — preferred candidate first, the others in
/// increasing order of their current Borda score (equal scores place the
/// candidate earlier in the effective tie-break order later) — until the
/// preferred candidate wins.
ManipulationResult heuristic_reverse(const ManipulationInstance& instance);

/// Builds k ballots at once: the k·(m-1) non-top Borda scores, taken
/// largest first, each go to the candidate with the lowest current total
/// that still has one of its k slots free; ballots come out of
/// scores_to_ballots. success reflects evaluate on the result.
ManipulationResult heuristic_largest_fit(const ManipulationInstance& instance,
                                         long long k);

/// Like largest_fit, but each score goes to the candidate with the most
/// remaining headroom per unfilled slot — the largest (preferred's final
/// score − current total) / (slots still free) — so that an average-sized
/// score would fit exactly. Ties prefer the candidate with the fewest
/// scores assigned, then the latest in the effective order.
ManipulationResult heuristic_average_fit(const ManipulationInstance& instance,
                                         long long k);

/// Adds ballots one at a time: preferred candidate first, the rest in the
/// elimination order of the current combined election — the first
/// candidate eliminated lands in second place and the standing winner
/// last. Candidates leaving in the same round are ordered within the
/// sequence by that round's score (descending). Stops when the preferred
/// candidate wins.
ManipulationResult heuristic_eliminate(const ManipulationInstance& instance);

/// As eliminate, but ballots reverse the elimination order — the standing
/// winner lands in second place and the first candidate eliminated last —
/// and same-round candidates enter the sequence by ascending round score.
ManipulationResult heuristic_rev_eliminate(const ManipulationInstance& instance);

/// Smallest k whose total top-score injection k·(m-1) covers the largest
/// current Borda gap over the preferred candidate (0 when no gap). A true
/// floor for Borda — below it some candidate necessarily out-scores the
/// preferred one — but not for the elimination rules.
long long fit_lower_bound(const ManipulationInstance& instance);

/// Minimal successful coalition size for the given heuristic: iterative
/// heuristics are already minimizing; fit heuristics scan k upward from
/// fit_lower_bound under Borda and from 1 under the elimination rules.
/// Zero ballots when the preferred candidate already wins.
ManipulationResult minimize_manipulators(const ManipulationInstance& instance,
                                         Heuristic heuristic);

/// Converts per-candidate score multisets (exactly k values from {0..m-2}
/// per non-preferred candidate, each value appearing k times overall) into
/// k linear orders ranking the preferred candidate first, via one bipartite
/// perfect matching per ballot. Throws std::logic_error on an infeasible
/// multiset — that indicates a heuristic bug, not user error.
std::vector<LinearOrder> scores_to_ballots(
    const std::vector<std::vector<int>>& multisets, long long k, int preferred);

struct OracleOptions {
  /// Deterministic work cap (search-tree nodes); <= 0 means unlimited.
  long long node_budget = 50'000'000;
};

struct OracleOutcome {
  enum class Status { kFound, kInfeasible, kBudgetExceeded };
  Status status = Status::kInfeasible;
  ManipulationResult result;  // populated when status == kFound
  long long nodes = 0;        // search-tree nodes visited

  bool found() const { return status == Status::kFound; }
};

/// Exact minimum number of unweighted manipulators (≤ k_max) that can make
/// the preferred candidate win, by depth-first search over multisets of
/// all m! ballots — manipulators need not rank the preferred candidate
/// first. Requires m ≤ 9.
OracleOutcome brute_force_optimal_unweighted(const ManipulationInstance& instance,
                                             long long k_max,
                                             const OracleOptions& options = {});

/// Exact feasibility for a weighted coalition by enumerating all (m!)^l
/// per-manipulator ballot assignments (equal-weight manipulators are
/// deduplicated). Intended for m ≤ 4 and few manipulators.
ManipulationResult brute_force_weighted(const ManipulationInstance& instance);

/// Exact decision for weighted Nanson manipulation with up to three
/// candidates, without enumerating ballot assignments. The coalition first
/// tries voting uniformly, preferred candidate first, in both orders of the
/// remaining two. If both fail, the only winning route left is to land
/// every candidate exactly on the round average — the election then ends
/// with all candidates tied and the tie-break favors the preferred one —
/// which is decided by a subset-sum dynamic program over the coalition
/// weights. Throws on m > 3.
ManipulationResult nanson_weighted_3cand(const ManipulationInstance& instance);

/// {"success":…, "manipulators_used":…, "ballots":["a>b>c",…],
///  "rule":"baldwin", "trace":{…}}
nlohmann::ordered_json witness_to_json(const ManipulationResult& result,
                                       const ManipulationInstance& instance);

}  // namespace elimvote
