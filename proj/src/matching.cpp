#include <algorithm>
#include <stdexcept>
#include <string>
#include <vector>

#include "elimvote/manipulation.hpp"

namespace elimvote {

namespace {

[[noreturn]] void bad_multiset(const std::string& why) {
  throw std::logic_error("score multiset not ballot-realizable: " + why);
}

/// Kuhn augmenting path: candidate x claims some value with remaining
/// multiplicity, evicting earlier matches along alternating paths.
bool augment(int x, const std::vector<std::vector<long long>>& remaining,
             std::vector<char>& visited, std::vector<int>& value_owner) {
  const int values = static_cast<int>(value_owner.size());
  for (int v = values - 1; v >= 0; --v) {
    if (remaining[static_cast<std::size_t>(x)][static_cast<std::size_t>(v)] <= 0 ||
        visited[static_cast<std::size_t>(v)]) {
      continue;
    }
    visited[static_cast<std::size_t>(v)] = 1;
    if (value_owner[static_cast<std::size_t>(v)] < 0 ||
        augment(value_owner[static_cast<std::size_t>(v)], remaining, visited,
                value_owner)) {
      value_owner[static_cast<std::size_t>(v)] = x;
      return true;
    }
  }
  return false;
}

}  // namespace

std::vector<LinearOrder> scores_to_ballots(
    const std::vector<std::vector<int>>& multisets, long long k, int preferred) {
  const int m = static_cast<int>(multisets.size());
  if (m < 1) bad_multiset("no candidates");
  if (preferred < 0 || preferred >= m) bad_multiset("preferred candidate out of range");
  if (k < 1) bad_multiset("coalition size must be at least 1");
  if (!multisets[static_cast<std::size_t>(preferred)].empty()) {
    bad_multiset("preferred candidate carries explicit scores");
  }

  std::vector<std::vector<long long>> remaining(
      static_cast<std::size_t>(m), std::vector<long long>(static_cast<std::size_t>(m), 0));
  std::vector<long long> value_total(static_cast<std::size_t>(m), 0);
  for (int x = 0; x < m; ++x) {
    if (x == preferred) continue;
    if (static_cast<long long>(multisets[static_cast<std::size_t>(x)].size()) != k) {
      bad_multiset("candidate holds " +
                   std::to_string(multisets[static_cast<std::size_t>(x)].size()) +
                   " scores, expected " + std::to_string(k));
    }
    for (int v : multisets[static_cast<std::size_t>(x)]) {
      if (v < 0 || v > m - 2) bad_multiset("score value out of range");
      ++remaining[static_cast<std::size_t>(x)][static_cast<std::size_t>(v)];
      ++value_total[static_cast<std::size_t>(v)];
    }
  }
  for (int v = 0; v <= m - 2; ++v) {
    if (value_total[static_cast<std::size_t>(v)] != k) {
      bad_multiset("value " + std::to_string(v) + " appears " +
                   std::to_string(value_total[static_cast<std::size_t>(v)]) +
                   " times, expected " + std::to_string(k));
    }
  }

  // One perfect matching per ballot. The remaining scores always form a
  // j-regular bipartite multigraph, so a perfect matching exists and
  // removing it keeps the graph regular.
  std::vector<LinearOrder> ballots;
  ballots.reserve(static_cast<std::size_t>(k));
  for (long long b = 0; b < k; ++b) {
    std::vector<int> value_owner(static_cast<std::size_t>(std::max(0, m - 1)), -1);
    for (int x = 0; x < m; ++x) {
      if (x == preferred) continue;
      std::vector<char> visited(value_owner.size(), 0);
      if (!augment(x, remaining, visited, value_owner)) {
        bad_multiset("no perfect matching for ballot " + std::to_string(b + 1));
      }
    }
    std::vector<int> ranking(static_cast<std::size_t>(m), -1);
    ranking[0] = preferred;
    for (int v = 0; v <= m - 2; ++v) {
      const int x = value_owner[static_cast<std::size_t>(v)];
      ranking[static_cast<std::size_t>(m - 1 - v)] = x;
      --remaining[static_cast<std::size_t>(x)][static_cast<std::size_t>(v)];
    }
    ballots.emplace_back(LinearOrder{std::move(ranking)});
  }
  return ballots;
}

}  // namespace elimvote
