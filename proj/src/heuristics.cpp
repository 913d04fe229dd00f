#include <algorithm>
#include <stdexcept>
#include <vector>

#include "coalition.hpp"
#include "elimvote/manipulation.hpp"

namespace elimvote {

namespace {

using detail::Coalition;

ManipulationResult finish(const ManipulationInstance& instance,
                          std::vector<LinearOrder> ballots, bool success) {
  ManipulationResult result;
  result.success = success;
  result.manipulators_used = static_cast<long long>(ballots.size());
  result.trace = evaluate_trace(instance, ballots);
  result.ballots = std::move(ballots);
  return result;
}

[[noreturn]] void cap_exceeded(const char* op, const ManipulationInstance& instance,
                               long long cap) {
  throw std::runtime_error(
      std::string(op) + " did not converge within " + std::to_string(cap) +
      " ballots (rule=" + std::string(to_string(instance.rule)) +
      ", preferred=" +
      instance.base.candidates().names[static_cast<std::size_t>(instance.preferred)] +
      ", base weight=" + instance.base.total_weight().to_string() + ")");
}

/// Ballot tail for the reverse heuristic: every candidate except the
/// preferred one, lowest current score first; among equal scores the
/// candidate earlier in the effective tie-break order goes later.
std::vector<int> reverse_tail(const std::vector<long long>& score,
                              const std::vector<int>& priority, int preferred) {
  std::vector<int> tail;
  tail.reserve(score.size() - 1);
  for (int x = 0; x < static_cast<int>(score.size()); ++x) {
    if (x != preferred) tail.push_back(x);
  }
  std::sort(tail.begin(), tail.end(), [&](int x, int y) {
    const long long sx = score[static_cast<std::size_t>(x)];
    const long long sy = score[static_cast<std::size_t>(y)];
    if (sx != sy) return sx < sy;
    return priority[static_cast<std::size_t>(x)] > priority[static_cast<std::size_t>(y)];
  });
  return tail;
}

std::vector<int> with_preferred_first(int preferred, const std::vector<int>& tail) {
  std::vector<int> ranking;
  ranking.reserve(tail.size() + 1);
  ranking.push_back(preferred);
  ranking.insert(ranking.end(), tail.begin(), tail.end());
  return ranking;
}

/// Flattens an election into the order candidates left it: eliminated
/// candidates round by round (same-round order by round score, ascending
/// unless desc_within_round), then any never-eliminated survivors with the
/// winner last. Borda has no elimination rounds; its stand-in sequence is
/// everyone by ascending score ("weakest out first"), with ties ordered
/// exactly as the reverse heuristic orders them, so that the eliminate
/// heuristic coincides with reverse there.
std::vector<int> departure_sequence(const engine::ElectionResult& res,
                                    const std::vector<int>& priority,
                                    bool desc_within_round, bool borda) {
  const auto round_sorted = [&](const engine::RoundRecord& round,
                                std::vector<int> group, bool desc) {
    const auto score_of = [&](int c) {
      const auto it = std::find(round.survivors.begin(), round.survivors.end(), c);
      return round.scores[static_cast<std::size_t>(it - round.survivors.begin())];
    };
    std::sort(group.begin(), group.end(), [&](int x, int y) {
      const long long sx = score_of(x);
      const long long sy = score_of(y);
      if (sx != sy) return desc ? sx > sy : sx < sy;
      return priority[static_cast<std::size_t>(x)] < priority[static_cast<std::size_t>(y)];
    });
    return group;
  };

  if (borda) {
    const engine::RoundRecord& only = res.rounds.front();
    std::vector<int> order = only.survivors;
    const auto score_of = [&](int c) {
      const auto it = std::find(only.survivors.begin(), only.survivors.end(), c);
      return only.scores[static_cast<std::size_t>(it - only.survivors.begin())];
    };
    std::sort(order.begin(), order.end(), [&](int x, int y) {
      const long long sx = score_of(x);
      const long long sy = score_of(y);
      if (sx != sy) return sx < sy;
      return priority[static_cast<std::size_t>(x)] > priority[static_cast<std::size_t>(y)];
    });
    return order;
  }

  std::vector<int> sequence;
  std::vector<char> gone(priority.size(), 0);
  for (const engine::RoundRecord& round : res.rounds) {
    for (int c : round_sorted(round, round.eliminated, desc_within_round)) {
      sequence.push_back(c);
      gone[static_cast<std::size_t>(c)] = 1;
    }
  }
  // Leftover survivors exist only when the run ended in an all-tied round;
  // they precede the winner, ordered like a regular round (scores equal, so
  // effectively by tie-break order).
  std::vector<int> leftovers;
  for (int c = 0; c < static_cast<int>(priority.size()); ++c) {
    if (!gone[static_cast<std::size_t>(c)] && c != res.winner) leftovers.push_back(c);
  }
  if (!leftovers.empty()) {
    const engine::RoundRecord& last = res.rounds.back();
    for (int c : round_sorted(last, leftovers, desc_within_round)) sequence.push_back(c);
  }
  sequence.push_back(res.winner);
  return sequence;
}

ManipulationResult eliminate_style(const ManipulationInstance& instance, bool rev) {
  const char* op = rev ? "rev-eliminate heuristic" : "eliminate heuristic";
  detail::require_unweighted(instance, op);
  std::vector<LinearOrder> ballots;
  if (instance.base.num_candidates() == 1) return finish(instance, {}, true);

  Coalition coalition(instance);
  const bool borda = instance.rule == VotingRule::kBorda;
  const long long cap = detail::iteration_cap(instance.base);
  for (;;) {
    const engine::ElectionResult res = coalition.run();
    if (res.winner == coalition.preferred()) {
      return finish(instance, std::move(ballots), true);
    }
    if (static_cast<long long>(ballots.size()) >= cap) cap_exceeded(op, instance, cap);

    std::vector<int> tail =
        departure_sequence(res, coalition.priority(), /*desc_within_round=*/!rev, borda);
    std::erase(tail, coalition.preferred());
    // Eliminate ranks the sequence as is (first out ends up second, the
    // standing winner last); rev-eliminate reverses it (winner second).
    if (rev) std::reverse(tail.begin(), tail.end());
    const std::vector<int> ranking = with_preferred_first(coalition.preferred(), tail);
    coalition.push(ranking);
    ballots.emplace_back(LinearOrder{ranking});
  }
}

ManipulationResult fit_style(const ManipulationInstance& instance, long long k,
                             bool average) {
  const char* op = average ? "average-fit heuristic" : "largest-fit heuristic";
  detail::require_unweighted(instance, op);
  if (k < 1) throw std::invalid_argument("coalition size must be at least 1");

  Coalition coalition(instance);
  const int m = coalition.m();
  const int c = coalition.preferred();
  const std::vector<int>& priority = coalition.priority();
  std::vector<long long> total = coalition.scores();
  std::vector<long long> count(static_cast<std::size_t>(m), 0);
  std::vector<std::vector<int>> multisets(static_cast<std::size_t>(m));
  // The preferred candidate tops every ballot, so its final score — the
  // ceiling the others are packed under — is known up front.
  const long long ceiling = total[static_cast<std::size_t>(c)] +
                            coalition.unit() * (m - 1) * k;

  // Hand out the k copies of each non-top score, largest value first.
  for (int value = m - 2; value >= 0; --value) {
    for (long long copy = 0; copy < k; ++copy) {
      int best = -1;
      for (int x = 0; x < m; ++x) {
        if (x == c || count[static_cast<std::size_t>(x)] >= k) continue;
        if (best < 0) {
          best = x;
          continue;
        }
        const long long tx = total[static_cast<std::size_t>(x)];
        const long long tb = total[static_cast<std::size_t>(best)];
        bool better;
        if (average) {
          // Headroom per still-unassigned slot: the candidate with the
          // largest (ceiling - total)/(free slots) needs the big scores.
          // Compared exactly by cross-multiplication (denominators > 0).
          const long long free_x = k - count[static_cast<std::size_t>(x)];
          const long long free_b = k - count[static_cast<std::size_t>(best)];
          const __int128 lhs = static_cast<__int128>(ceiling - tx) * free_b;
          const __int128 rhs = static_cast<__int128>(ceiling - tb) * free_x;
          if (lhs != rhs) {
            better = lhs > rhs;
          } else if (count[static_cast<std::size_t>(x)] !=
                     count[static_cast<std::size_t>(best)]) {
            better = count[static_cast<std::size_t>(x)] <
                     count[static_cast<std::size_t>(best)];
          } else {
            better = priority[static_cast<std::size_t>(x)] >
                     priority[static_cast<std::size_t>(best)];
          }
        } else {
          if (tx != tb) {
            better = tx < tb;
          } else {
            better = priority[static_cast<std::size_t>(x)] >
                     priority[static_cast<std::size_t>(best)];
          }
        }
        if (better) best = x;
      }
      multisets[static_cast<std::size_t>(best)].push_back(value);
      total[static_cast<std::size_t>(best)] += coalition.unit() * value;
      ++count[static_cast<std::size_t>(best)];
    }
  }

  std::vector<LinearOrder> ballots = scores_to_ballots(multisets, k, c);
  for (const LinearOrder& b : ballots) coalition.push(b.ranking);
  return finish(instance, std::move(ballots), coalition.preferred_wins());
}

}  // namespace

ManipulationResult heuristic_reverse(const ManipulationInstance& instance) {
  detail::require_unweighted(instance, "reverse heuristic");
  std::vector<LinearOrder> ballots;
  if (instance.base.num_candidates() == 1) return finish(instance, {}, true);

  Coalition coalition(instance);
  const long long cap = detail::iteration_cap(instance.base);
  if (coalition.preferred_wins()) return finish(instance, {}, true);
  for (;;) {
    if (static_cast<long long>(ballots.size()) >= cap) {
      cap_exceeded("reverse heuristic", instance, cap);
    }
    const std::vector<int> ranking = with_preferred_first(
        coalition.preferred(),
        reverse_tail(coalition.scores(), coalition.priority(), coalition.preferred()));
    coalition.push(ranking);
    ballots.emplace_back(LinearOrder{ranking});
    if (coalition.preferred_wins()) {
      return finish(instance, std::move(ballots), true);
    }
  }
}

ManipulationResult heuristic_eliminate(const ManipulationInstance& instance) {
  return eliminate_style(instance, /*rev=*/false);
}

ManipulationResult heuristic_rev_eliminate(const ManipulationInstance& instance) {
  return eliminate_style(instance, /*rev=*/true);
}

ManipulationResult heuristic_largest_fit(const ManipulationInstance& instance,
                                         long long k) {
  return fit_style(instance, k, /*average=*/false);
}

ManipulationResult heuristic_average_fit(const ManipulationInstance& instance,
                                         long long k) {
  return fit_style(instance, k, /*average=*/true);
}

}  // namespace elimvote
