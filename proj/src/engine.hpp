#pragma once

// Internal election core. Ballot weights are rescaled once to integers so
// every round works in plain (checked) 64-bit arithmetic; public wrappers
// convert scores back to exact rationals via the stored scale factor.

#include <vector>

#include "elimvote/profile.hpp"

namespace elimvote::engine {

enum class Rule { kBorda, kNanson, kBaldwin };

/// priority[c] = rank of candidate c in the effective tie-break order
/// (0 = most preferred). favored < 0 yields the plain index order;
/// otherwise the favored candidate moves to the front.
std::vector<int> tie_break_priority(int m, int favored = -1);

/// Profile with weights scaled by the least common multiple of their
/// denominators, identical rankings merged. weight(order i) = weights[i] / scale.
struct ScaledProfile {
  int m = 0;
  long long scale = 1;
  std::vector<std::vector<int>> orders;
  std::vector<long long> weights;
  long long total_weight = 0;  // scaled

  static ScaledProfile from_profile(const Profile& profile);
};

/// One counting round: survivors (ascending candidate index), their scaled
/// Borda scores (parallel to survivors), and who was removed. An empty
/// eliminated list marks a final all-tied round.
struct RoundRecord {
  std::vector<int> survivors;
  std::vector<long long> scores;
  std::vector<int> eliminated;
};

struct ElectionResult {
  int winner = -1;
  std::vector<RoundRecord> rounds;
};

/// Runs one election. Round policy:
///   Borda   - single round, winner = highest score (ties to the candidate
///             earliest in the effective order).
///   Baldwin - repeatedly drop the single lowest-scoring survivor; a score
///             tie drops the tied candidate latest in the effective order.
///   Nanson  - repeatedly drop every survivor scoring strictly below the
///             round average; if nobody is strictly below (all scores equal)
///             the round is recorded with no eliminations and the surviving
///             candidate earliest in the effective order wins.
ElectionResult run_election(const ScaledProfile& profile, Rule rule,
                            const std::vector<int>& priority);

/// Scaled Borda scores of the full candidate set (single round, no
/// elimination applied).
std::vector<long long> full_scores(const ScaledProfile& profile);

}  // namespace elimvote::engine
