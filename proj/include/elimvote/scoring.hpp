#pragma once

#include <optional>
#include <vector>

#include "elimvote/profile.hpp"

namespace elimvote {

/// Strictly decreasing integer scores, index = rank position (0 = top).
struct ScoringVector {
  std::vector<long long> scores;

  explicit ScoringVector(std::vector<long long> s);

  /// (m-1, m-2, ..., 0).
  static ScoringVector borda(int m);

  int size() const { return static_cast<int>(scores.size()); }
};

/// Total (weighted) score per candidate index of the scored profile.
using ScoreTable = std::vector<Rational>;

/// score(c) = sum over ballots of weight * vec[rank of c]. Throws on a
/// length mismatch between the vector and the candidate count.
ScoreTable positional_scores(const Profile& profile, const ScoringVector& vec);

/// Borda scores with the vector (m-1, ..., 0) for the profile's current
/// candidate count.
ScoreTable borda_scores(const Profile& profile);

/// margins[i][j] = weight preferring i over j minus weight preferring j
/// over i. Antisymmetric with zero diagonal.
std::vector<std::vector<Rational>> pairwise_margins(const Profile& profile);

/// Candidate with strictly positive margin against every other, if any.
std::optional<int> condorcet_winner(const Profile& profile);

/// Candidate with strictly negative margin against every other, if any.
std::optional<int> condorcet_loser(const Profile& profile);

}  // namespace elimvote
