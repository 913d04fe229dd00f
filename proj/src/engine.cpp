#include "engine.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <stdexcept>

namespace elimvote::engine {

namespace {

long long checked_mul(long long a, long long b) {
  const __int128 p = static_cast<__int128>(a) * b;
  if (p > INT64_MAX || p < INT64_MIN) {
    throw std::overflow_error("weight scaling overflow");
  }
  return static_cast<long long>(p);
}

/// Scaled Borda scores restricted to alive candidates. score[c] counts, per
/// ballot, the alive candidates ranked strictly below c, weighted.
void score_round(const ScaledProfile& p, const std::vector<char>& alive,
                 std::vector<long long>& score) {
  std::fill(score.begin(), score.end(), 0LL);
  for (std::size_t i = 0; i < p.orders.size(); ++i) {
    const std::vector<int>& order = p.orders[i];
    const long long w = p.weights[i];
    long long below = 0;
    for (int pos = p.m - 1; pos >= 0; --pos) {
      const int c = order[static_cast<std::size_t>(pos)];
      if (!alive[static_cast<std::size_t>(c)]) continue;
      score[static_cast<std::size_t>(c)] += checked_mul(w, below);
      ++below;
    }
  }
}

RoundRecord make_record(const std::vector<char>& alive,
                        const std::vector<long long>& score) {
  RoundRecord rec;
  for (std::size_t c = 0; c < alive.size(); ++c) {
    if (!alive[c]) continue;
    rec.survivors.push_back(static_cast<int>(c));
    rec.scores.push_back(score[c]);
  }
  return rec;
}

}  // namespace

std::vector<int> tie_break_priority(int m, int favored) {
  if (m <= 0) throw std::invalid_argument("candidate count must be positive");
  if (favored >= m) throw std::invalid_argument("favored candidate out of range");
  std::vector<int> priority(static_cast<std::size_t>(m));
  if (favored < 0) {
    std::iota(priority.begin(), priority.end(), 0);
    return priority;
  }
  priority[static_cast<std::size_t>(favored)] = 0;
  int next = 1;
  for (int c = 0; c < m; ++c) {
    if (c != favored) priority[static_cast<std::size_t>(c)] = next++;
  }
  return priority;
}

ScaledProfile ScaledProfile::from_profile(const Profile& profile) {
  ScaledProfile sp;
  sp.m = profile.num_candidates();
  long long lcm = 1;
  for (const WeightedBallot& b : profile.ballots()) {
    const long long d = b.weight.den();
    lcm = checked_mul(lcm / std::gcd(lcm, d), d);
  }
  sp.scale = lcm;
  std::map<std::vector<int>, long long> merged;
  for (const WeightedBallot& b : profile.ballots()) {
    const long long scaled = checked_mul(b.weight.num(), lcm / b.weight.den());
    long long& slot = merged[b.order.ranking];
    const __int128 sum = static_cast<__int128>(slot) + scaled;
    if (sum > INT64_MAX) throw std::overflow_error("weight scaling overflow");
    slot = static_cast<long long>(sum);
  }
  __int128 total = 0;
  for (auto& [order, w] : merged) {
    sp.orders.push_back(order);
    sp.weights.push_back(w);
    total += w;
  }
  if (total > INT64_MAX) throw std::overflow_error("weight scaling overflow");
  sp.total_weight = static_cast<long long>(total);
  return sp;
}

std::vector<long long> full_scores(const ScaledProfile& profile) {
  std::vector<char> alive(static_cast<std::size_t>(profile.m), 1);
  std::vector<long long> score(static_cast<std::size_t>(profile.m), 0);
  score_round(profile, alive, score);
  return score;
}

ElectionResult run_election(const ScaledProfile& profile, Rule rule,
                            const std::vector<int>& priority) {
  const int m = profile.m;
  if (static_cast<int>(priority.size()) != m) {
    throw std::invalid_argument("tie-break priority length mismatch");
  }
  if (profile.orders.empty()) {
    throw std::invalid_argument("cannot run an election with no ballots");
  }
  ElectionResult result;
  std::vector<char> alive(static_cast<std::size_t>(m), 1);
  std::vector<long long> score(static_cast<std::size_t>(m), 0);
  int alive_count = m;

  if (rule == Rule::kBorda) {
    score_round(profile, alive, score);
    int best = -1;
    for (int c = 0; c < m; ++c) {
      if (best < 0 || score[static_cast<std::size_t>(c)] > score[static_cast<std::size_t>(best)] ||
          (score[static_cast<std::size_t>(c)] == score[static_cast<std::size_t>(best)] &&
           priority[static_cast<std::size_t>(c)] < priority[static_cast<std::size_t>(best)])) {
        best = c;
      }
    }
    RoundRecord rec = make_record(alive, score);
    for (int c = 0; c < m; ++c) {
      if (c != best) rec.eliminated.push_back(c);
    }
    result.rounds.push_back(std::move(rec));
    result.winner = best;
    return result;
  }

  while (alive_count > 1) {
    score_round(profile, alive, score);
    RoundRecord rec = make_record(alive, score);

    if (rule == Rule::kBaldwin) {
      int victim = -1;
      for (int c = 0; c < m; ++c) {
        if (!alive[static_cast<std::size_t>(c)]) continue;
        if (victim < 0 ||
            score[static_cast<std::size_t>(c)] < score[static_cast<std::size_t>(victim)] ||
            (score[static_cast<std::size_t>(c)] == score[static_cast<std::size_t>(victim)] &&
             priority[static_cast<std::size_t>(c)] > priority[static_cast<std::size_t>(victim)])) {
          victim = c;
        }
      }
      alive[static_cast<std::size_t>(victim)] = 0;
      --alive_count;
      rec.eliminated.push_back(victim);
      result.rounds.push_back(std::move(rec));
      continue;
    }

    // Nanson: drop everyone strictly below the round average. Comparing
    // score * alive_count against the score total avoids any division.
    __int128 total = 0;
    for (long long s : rec.scores) total += s;
    std::vector<int> below;
    for (int c = 0; c < m; ++c) {
      if (!alive[static_cast<std::size_t>(c)]) continue;
      if (static_cast<__int128>(score[static_cast<std::size_t>(c)]) * alive_count < total) {
        below.push_back(c);
      }
    }
    if (below.empty()) {
      // All survivors share the average, i.e. all scores are equal: the
      // effective tie-break order decides among them.
      int best = -1;
      for (int c = 0; c < m; ++c) {
        if (!alive[static_cast<std::size_t>(c)]) continue;
        if (best < 0 || priority[static_cast<std::size_t>(c)] < priority[static_cast<std::size_t>(best)]) {
          best = c;
        }
      }
      result.rounds.push_back(std::move(rec));
      result.winner = best;
      return result;
    }
    for (int c : below) {
      alive[static_cast<std::size_t>(c)] = 0;
      --alive_count;
    }
    rec.eliminated = below;
    result.rounds.push_back(std::move(rec));
  }

  for (int c = 0; c < m; ++c) {
    if (alive[static_cast<std::size_t>(c)]) result.winner = c;
  }
  return result;
}

}  // namespace elimvote::engine
