#include "elimvote/scoring.hpp"

#include <stdexcept>

namespace elimvote {

ScoringVector::ScoringVector(std::vector<long long> s) : scores(std::move(s)) {
  if (scores.empty()) {
    throw std::invalid_argument("scoring vector must be non-empty");
  }
  for (std::size_t i = 1; i < scores.size(); ++i) {
    if (scores[i - 1] <= scores[i]) {
      throw std::invalid_argument("scoring vector must be strictly decreasing");
    }
  }
}

ScoringVector ScoringVector::borda(int m) {
  std::vector<long long> s(static_cast<std::size_t>(m));
  for (int i = 0; i < m; ++i) s[static_cast<std::size_t>(i)] = m - 1 - i;
  return ScoringVector(std::move(s));
}

ScoreTable positional_scores(const Profile& profile, const ScoringVector& vec) {
  const int m = profile.num_candidates();
  if (vec.size() != m) {
    throw std::invalid_argument("scoring vector length does not match candidate count");
  }
  ScoreTable totals(static_cast<std::size_t>(m), Rational(0));
  for (const WeightedBallot& b : profile.ballots()) {
    for (int pos = 0; pos < m; ++pos) {
      const int cand = b.order.ranking[static_cast<std::size_t>(pos)];
      totals[static_cast<std::size_t>(cand)] +=
          b.weight * Rational(vec.scores[static_cast<std::size_t>(pos)]);
    }
  }
  return totals;
}

ScoreTable borda_scores(const Profile& profile) {
  return positional_scores(profile, ScoringVector::borda(profile.num_candidates()));
}

std::vector<std::vector<Rational>> pairwise_margins(const Profile& profile) {
  const int m = profile.num_candidates();
  std::vector<std::vector<Rational>> margins(
      static_cast<std::size_t>(m),
      std::vector<Rational>(static_cast<std::size_t>(m), Rational(0)));
  for (const WeightedBallot& b : profile.ballots()) {
    const auto& r = b.order.ranking;
    for (int i = 0; i < m; ++i) {
      for (int j = i + 1; j < m; ++j) {
        const int above = r[static_cast<std::size_t>(i)];
        const int below = r[static_cast<std::size_t>(j)];
        margins[static_cast<std::size_t>(above)][static_cast<std::size_t>(below)] += b.weight;
        margins[static_cast<std::size_t>(below)][static_cast<std::size_t>(above)] -= b.weight;
      }
    }
  }
  return margins;
}

std::optional<int> condorcet_winner(const Profile& profile) {
  const int m = profile.num_candidates();
  const auto margins = pairwise_margins(profile);
  for (int c = 0; c < m; ++c) {
    bool wins_all = true;
    for (int other = 0; other < m && wins_all; ++other) {
      if (other == c) continue;
      if (!margins[static_cast<std::size_t>(c)][static_cast<std::size_t>(other)].is_positive()) {
        wins_all = false;
      }
    }
    if (wins_all) return c;
  }
  return std::nullopt;
}

std::optional<int> condorcet_loser(const Profile& profile) {
  const int m = profile.num_candidates();
  const auto margins = pairwise_margins(profile);
  for (int c = 0; c < m; ++c) {
    bool loses_all = true;
    for (int other = 0; other < m && loses_all; ++other) {
      if (other == c) continue;
      const Rational& mco = margins[static_cast<std::size_t>(c)][static_cast<std::size_t>(other)];
      if (!(-mco).is_positive()) loses_all = false;
    }
    if (loses_all) return c;
  }
  return std::nullopt;
}

}  // namespace elimvote
