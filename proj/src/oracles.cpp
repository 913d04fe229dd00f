#include <algorithm>
#include <array>
#include <bit>
#include <cstdint>
#include <map>
#include <numeric>
#include <stdexcept>
#include <vector>

#include "coalition.hpp"
#include "elimvote/scoring.hpp"
#include "elimvote/manipulation.hpp"
#include "engine.hpp"

namespace elimvote {

namespace {

constexpr int kMaxOracleM = 9;

/// Allocation-free winner computation for small electorates. Each ballot
/// is stored as per-candidate bitmasks of the candidates ranked below it,
/// so a round's Borda score is a popcount against the alive mask.
struct MaskBallots {
  int m = 0;
  std::vector<std::array<std::uint16_t, kMaxOracleM>> below;
  std::vector<long long> weight;

  void add(const std::vector<int>& ranking, long long w) {
    std::array<std::uint16_t, kMaxOracleM> masks{};
    std::uint16_t seen = 0;
    for (int pos = m - 1; pos >= 0; --pos) {
      const int c = ranking[static_cast<std::size_t>(pos)];
      masks[static_cast<std::size_t>(c)] = seen;
      seen = static_cast<std::uint16_t>(seen | (1u << c));
    }
    below.push_back(masks);
    weight.push_back(w);
  }

  void pop() {
    below.pop_back();
    weight.pop_back();
  }
};

int fast_winner(const MaskBallots& ballots, engine::Rule rule,
                const std::vector<int>& priority) {
  const int m = ballots.m;
  std::uint32_t alive = (1u << m) - 1;
  int alive_count = m;
  std::array<long long, kMaxOracleM> score{};

  const auto score_round = [&] {
    score.fill(0);
    for (std::size_t i = 0; i < ballots.below.size(); ++i) {
      const long long w = ballots.weight[i];
      const auto& masks = ballots.below[i];
      for (std::uint32_t rest = alive; rest != 0; rest &= rest - 1) {
        const int c = std::countr_zero(rest);
        score[static_cast<std::size_t>(c)] +=
            w * std::popcount(static_cast<std::uint32_t>(
                    masks[static_cast<std::size_t>(c)] & alive));
      }
    }
  };

  if (rule == engine::Rule::kBorda) {
    score_round();
    int best = -1;
    for (int c = 0; c < m; ++c) {
      if (best < 0 || score[static_cast<std::size_t>(c)] > score[static_cast<std::size_t>(best)] ||
          (score[static_cast<std::size_t>(c)] == score[static_cast<std::size_t>(best)] &&
           priority[static_cast<std::size_t>(c)] < priority[static_cast<std::size_t>(best)])) {
        best = c;
      }
    }
    return best;
  }

  while (alive_count > 1) {
    score_round();
    if (rule == engine::Rule::kBaldwin) {
      int victim = -1;
      for (std::uint32_t rest = alive; rest != 0; rest &= rest - 1) {
        const int c = std::countr_zero(rest);
        if (victim < 0 ||
            score[static_cast<std::size_t>(c)] < score[static_cast<std::size_t>(victim)] ||
            (score[static_cast<std::size_t>(c)] == score[static_cast<std::size_t>(victim)] &&
             priority[static_cast<std::size_t>(c)] > priority[static_cast<std::size_t>(victim)])) {
          victim = c;
        }
      }
      alive &= ~(1u << victim);
      --alive_count;
      continue;
    }
    long long total = 0;
    for (std::uint32_t rest = alive; rest != 0; rest &= rest - 1) {
      total += score[static_cast<std::size_t>(std::countr_zero(rest))];
    }
    std::uint32_t killed = 0;
    for (std::uint32_t rest = alive; rest != 0; rest &= rest - 1) {
      const int c = std::countr_zero(rest);
      if (static_cast<__int128>(score[static_cast<std::size_t>(c)]) * alive_count <
          static_cast<__int128>(total)) {
        killed |= 1u << c;
      }
    }
    if (killed == 0) {
      int best = -1;
      for (std::uint32_t rest = alive; rest != 0; rest &= rest - 1) {
        const int c = std::countr_zero(rest);
        if (best < 0 ||
            priority[static_cast<std::size_t>(c)] < priority[static_cast<std::size_t>(best)]) {
          best = c;
        }
      }
      return best;
    }
    alive &= ~killed;
    alive_count -= std::popcount(killed);
  }
  return std::countr_zero(alive);
}

/// All m! rankings in lexicographic order, flattened.
std::vector<std::int8_t> all_permutations(int m) {
  std::vector<std::int8_t> cur(static_cast<std::size_t>(m));
  std::iota(cur.begin(), cur.end(), static_cast<std::int8_t>(0));
  std::vector<std::int8_t> flat;
  do {
    flat.insert(flat.end(), cur.begin(), cur.end());
  } while (std::next_permutation(cur.begin(), cur.end()));
  return flat;
}

std::vector<int> ranking_at(const std::vector<std::int8_t>& flat, int m, long long idx) {
  std::vector<int> ranking(static_cast<std::size_t>(m));
  for (int i = 0; i < m; ++i) {
    ranking[static_cast<std::size_t>(i)] =
        flat[static_cast<std::size_t>(idx * m + i)];
  }
  return ranking;
}

ManipulationResult infeasible_result(const ManipulationInstance& instance) {
  ManipulationResult result;
  result.success = false;
  result.manipulators_used = 0;
  result.trace = run_rule(instance.base, instance.rule,
                          TieBreakPolicy::favor(instance.preferred));
  return result;
}

ManipulationResult witness_result(const ManipulationInstance& instance,
                                  std::vector<LinearOrder> ballots) {
  ManipulationResult result;
  result.success = true;
  result.manipulators_used = static_cast<long long>(ballots.size());
  result.trace = evaluate_trace(instance, ballots);
  result.ballots = std::move(ballots);
  return result;
}

/// Depth-first search over multisets of manipulator ballots (indices into
/// the permutation table, enumerated non-increasing) with exact
/// feasibility prunes against the preferred candidate's best case.
struct UnweightedSearch {
  int m;
  int c;
  engine::Rule rule;
  std::vector<int> priority;
  long long unit;

  std::vector<std::int8_t> perms;      // m! x m rankings
  std::vector<std::int8_t> points;     // m! x m full-set points per candidate
  std::vector<std::array<std::uint16_t, kMaxOracleM>> perm_below;
  long long perm_count = 0;

  MaskBallots work;                    // base ballots + current stack
  std::size_t base_size = 0;
  long long base_weight = 0;

  std::array<long long, kMaxOracleM> cur_score{};
  std::array<long long, kMaxOracleM> cur_margin{};  // margin(c, x), scaled

  long long k = 0;
  long long nodes = 0;
  long long budget = 0;
  bool aborted = false;
  bool found = false;
  std::vector<long long> chosen;
  std::vector<long long> witness;

  void apply(long long idx, int sign) {
    for (int y = 0; y < m; ++y) {
      cur_score[static_cast<std::size_t>(y)] +=
          sign * unit * points[static_cast<std::size_t>(idx * m + y)];
    }
    const std::uint16_t below_c =
        perm_below[static_cast<std::size_t>(idx)][static_cast<std::size_t>(c)];
    for (int x = 0; x < m; ++x) {
      if (x == c) continue;
      const int dir = (below_c >> x) & 1 ? 1 : -1;
      cur_margin[static_cast<std::size_t>(x)] += sign * dir * unit;
    }
  }

  bool pruned(long long rem) const {
    const long long gain = rem * unit;
    // The preferred candidate stays a strict Condorcet loser even if every
    // remaining ballot ranks it on top: no rule here can elect it.
    bool all_negative = true;
    for (int x = 0; x < m && all_negative; ++x) {
      if (x == c) continue;
      if (cur_margin[static_cast<std::size_t>(x)] + gain >= 0) all_negative = false;
    }
    if (all_negative) return true;

    const long long best_c =
        cur_score[static_cast<std::size_t>(c)] + gain * (m - 1);
    if (rule == engine::Rule::kBorda) {
      for (int x = 0; x < m; ++x) {
        if (x != c && cur_score[static_cast<std::size_t>(x)] > best_c) return true;
      }
      return false;
    }
    if (rule == engine::Rule::kBaldwin) {
      // Guaranteed strictly lowest in round 1 -> eliminated immediately.
      for (int x = 0; x < m; ++x) {
        if (x != c && cur_score[static_cast<std::size_t>(x)] <= best_c) return false;
      }
      return true;
    }
    // Nanson round 1 average is fixed by the final electorate size.
    const long long final_weight = base_weight + k * unit;
    return 2 * best_c < final_weight * (m - 1);
  }

  void dfs(long long depth, long long max_idx) {
    if (found || aborted) return;
    if (budget > 0 && ++nodes > budget) {
      aborted = true;
      return;
    }
    if (pruned(k - depth)) return;
    if (depth == k) {
      if (fast_winner(work, rule, priority) == c) {
        found = true;
        witness = chosen;
      }
      return;
    }
    for (long long idx = max_idx; idx >= 0; --idx) {
      apply(idx, +1);
      work.below.push_back(perm_below[static_cast<std::size_t>(idx)]);
      work.weight.push_back(unit);
      chosen.push_back(idx);
      dfs(depth + 1, idx);
      chosen.pop_back();
      work.pop();
      apply(idx, -1);
      if (found || aborted) return;
    }
  }
};

}  // namespace

OracleOutcome brute_force_optimal_unweighted(const ManipulationInstance& instance,
                                             long long k_max,
                                             const OracleOptions& options) {
  detail::require_unweighted(instance, "brute_force_optimal_unweighted");
  if (k_max < 0) throw std::invalid_argument("k_max must be non-negative");
  const int m = instance.base.num_candidates();
  if (m > kMaxOracleM) {
    throw std::invalid_argument("brute-force oracle supports at most " +
                                std::to_string(kMaxOracleM) + " candidates");
  }

  OracleOutcome outcome;
  UnweightedSearch s;
  s.m = m;
  s.c = instance.preferred;
  s.rule = detail::to_engine_rule(instance.rule);
  s.priority = engine::tie_break_priority(m, instance.preferred);
  s.budget = options.node_budget;

  const engine::ScaledProfile base = engine::ScaledProfile::from_profile(instance.base);
  s.unit = base.scale;
  s.base_weight = base.total_weight;
  s.work.m = m;
  for (std::size_t i = 0; i < base.orders.size(); ++i) {
    s.work.add(base.orders[i], base.weights[i]);
  }
  s.base_size = base.orders.size();

  s.perms = all_permutations(m);
  s.perm_count = static_cast<long long>(s.perms.size()) / m;
  s.points.resize(s.perms.size());
  s.perm_below.resize(static_cast<std::size_t>(s.perm_count));
  for (long long p = 0; p < s.perm_count; ++p) {
    std::uint16_t seen = 0;
    for (int pos = m - 1; pos >= 0; --pos) {
      const int cand = s.perms[static_cast<std::size_t>(p * m + pos)];
      s.points[static_cast<std::size_t>(p * m + cand)] =
          static_cast<std::int8_t>(m - 1 - pos);
      s.perm_below[static_cast<std::size_t>(p)][static_cast<std::size_t>(cand)] = seen;
      seen = static_cast<std::uint16_t>(seen | (1u << cand));
    }
  }

  // Base scores and the preferred candidate's pairwise margins.
  s.cur_score.fill(0);
  s.cur_margin.fill(0);
  const std::uint32_t full = (1u << m) - 1;
  for (std::size_t i = 0; i < s.base_size; ++i) {
    const auto& masks = s.work.below[i];
    const long long w = s.work.weight[i];
    for (int y = 0; y < m; ++y) {
      s.cur_score[static_cast<std::size_t>(y)] +=
          w * std::popcount(static_cast<std::uint32_t>(
                  masks[static_cast<std::size_t>(y)] & full));
    }
    const std::uint16_t below_c = masks[static_cast<std::size_t>(s.c)];
    for (int x = 0; x < m; ++x) {
      if (x == s.c) continue;
      s.cur_margin[static_cast<std::size_t>(x)] += (below_c >> x) & 1 ? w : -w;
    }
  }

  for (long long k = 0; k <= k_max; ++k) {
    s.k = k;
    s.dfs(0, s.perm_count - 1);
    if (s.aborted) {
      outcome.status = OracleOutcome::Status::kBudgetExceeded;
      outcome.nodes = s.nodes;
      return outcome;
    }
    if (s.found) {
      std::vector<LinearOrder> ballots;
      ballots.reserve(s.witness.size());
      for (long long idx : s.witness) {
        ballots.emplace_back(LinearOrder{ranking_at(s.perms, m, idx)});
      }
      outcome.status = OracleOutcome::Status::kFound;
      outcome.result = witness_result(instance, std::move(ballots));
      outcome.nodes = s.nodes;
      return outcome;
    }
  }
  outcome.status = OracleOutcome::Status::kInfeasible;
  outcome.nodes = s.nodes;
  return outcome;
}

ManipulationResult brute_force_weighted(const ManipulationInstance& instance) {
  detail::validate_instance(instance);
  const int m = instance.base.num_candidates();
  if (m > 6) {
    throw std::invalid_argument("weighted brute force supports at most 6 candidates");
  }

  // Common integer scale across base ballots and manipulator weights.
  long long scale = 1;
  for (const WeightedBallot& b : instance.base.ballots()) {
    scale = std::lcm(scale, b.weight.den());
  }
  for (const Rational& w : instance.weights) {
    scale = std::lcm(scale, w.den());
  }

  MaskBallots work;
  work.m = m;
  {
    std::map<std::vector<int>, long long> merged;
    for (const WeightedBallot& b : instance.base.ballots()) {
      merged[b.order.ranking] += b.weight.num() * (scale / b.weight.den());
    }
    for (const auto& [ranking, w] : merged) work.add(ranking, w);
  }

  // Heaviest first; equal weights are interchangeable, so their ballot
  // indices are constrained non-increasing to skip permuted duplicates.
  const std::size_t l = instance.weights.size();
  std::vector<std::size_t> slot(l);
  std::iota(slot.begin(), slot.end(), 0u);
  std::stable_sort(slot.begin(), slot.end(), [&](std::size_t a, std::size_t b) {
    return instance.weights[b] < instance.weights[a];
  });
  std::vector<long long> w_scaled(l);
  for (std::size_t j = 0; j < l; ++j) {
    const Rational& w = instance.weights[slot[j]];
    w_scaled[j] = w.num() * (scale / w.den());
  }

  const std::vector<std::int8_t> perms = all_permutations(m);
  const long long perm_count = static_cast<long long>(perms.size()) / m;
  const std::vector<int> priority = engine::tie_break_priority(m, instance.preferred);
  const engine::Rule rule = detail::to_engine_rule(instance.rule);

  std::vector<std::array<std::uint16_t, kMaxOracleM>> perm_below(
      static_cast<std::size_t>(perm_count));
  for (long long p = 0; p < perm_count; ++p) {
    std::uint16_t seen = 0;
    for (int pos = m - 1; pos >= 0; --pos) {
      const int cand = perms[static_cast<std::size_t>(p * m + pos)];
      perm_below[static_cast<std::size_t>(p)][static_cast<std::size_t>(cand)] = seen;
      seen = static_cast<std::uint16_t>(seen | (1u << cand));
    }
  }

  std::vector<long long> pick(l, 0);
  std::vector<long long> found_pick;
  bool found = false;
  const auto dfs = [&](auto&& self, std::size_t depth) -> void {
    if (found) return;
    if (depth == l) {
      if (fast_winner(work, rule, priority) == instance.preferred) {
        found = true;
        found_pick = pick;
      }
      return;
    }
    const long long hi = (depth > 0 && w_scaled[depth] == w_scaled[depth - 1])
                             ? pick[depth - 1]
                             : perm_count - 1;
    for (long long idx = hi; idx >= 0 && !found; --idx) {
      pick[depth] = idx;
      work.below.push_back(perm_below[static_cast<std::size_t>(idx)]);
      work.weight.push_back(w_scaled[depth]);
      self(self, depth + 1);
      work.pop();
    }
  };
  dfs(dfs, 0);

  if (!found) return infeasible_result(instance);
  std::vector<LinearOrder> ballots(l, LinearOrder{});
  for (std::size_t j = 0; j < l; ++j) {
    ballots[slot[j]] = LinearOrder{ranking_at(perms, m, found_pick[j])};
  }
  return witness_result(instance, std::move(ballots));
}

namespace {

/// The one winning route uniform preferred-first voting cannot reach: land
/// every candidate exactly on the round average, so the election terminates
/// with all candidates tied and the tie-break elects the preferred one.
/// Hitting the three exact targets is a subset-sum-style assignment of a
/// (2,1,0)-pattern per manipulator, decided here by dynamic programming
/// over reachable (preferred, second) point sums.
ManipulationResult nanson_all_tie_route(const ManipulationInstance& instance) {
  const int c = instance.preferred;
  std::vector<int> others;
  for (int x = 0; x < 3; ++x) {
    if (x != c) others.push_back(x);
  }

  const Rational total =
      instance.base.total_weight() +
      std::accumulate(instance.weights.begin(), instance.weights.end(), Rational(0));
  const std::vector<Rational> base_scores =
      positional_scores(instance.base, ScoringVector::borda(3));

  long long scale = total.den();
  std::array<Rational, 3> target_rat;
  for (int x = 0; x < 3; ++x) {
    target_rat[static_cast<std::size_t>(x)] =
        total - base_scores[static_cast<std::size_t>(x)];
    if (!target_rat[static_cast<std::size_t>(x)].is_positive() &&
        target_rat[static_cast<std::size_t>(x)] != Rational(0)) {
      return infeasible_result(instance);  // someone is already above average
    }
    scale = std::lcm(scale, target_rat[static_cast<std::size_t>(x)].den());
  }
  for (const Rational& w : instance.weights) scale = std::lcm(scale, w.den());

  const auto scaled = [scale](const Rational& r) {
    return r.num() * (scale / r.den());
  };
  const long long tc = scaled(target_rat[static_cast<std::size_t>(c)]);
  const long long ta = scaled(target_rat[static_cast<std::size_t>(others[0])]);

  // Reachable (preferred, others[0]) sums after each manipulator, with the
  // (2,1,0)-pattern that reached them; others[1] is forced by the total.
  using State = std::pair<long long, long long>;
  using Step = std::pair<State, int>;  // parent state, pattern index
  static constexpr std::array<std::array<int, 2>, 6> kPatterns = {
      {{2, 1}, {2, 0}, {1, 2}, {0, 2}, {1, 0}, {0, 1}}};
  std::vector<std::map<State, Step>> layers(instance.weights.size() + 1);
  layers[0].emplace(State{0, 0}, Step{State{0, 0}, -1});
  for (std::size_t i = 0; i < instance.weights.size(); ++i) {
    const long long w = scaled(instance.weights[i]);
    for (const auto& [state, step] : layers[i]) {
      for (int pat = 0; pat < 6; ++pat) {
        const State next{state.first + kPatterns[static_cast<std::size_t>(pat)][0] * w,
                         state.second + kPatterns[static_cast<std::size_t>(pat)][1] * w};
        if (next.first > tc || next.second > ta) continue;
        layers[i + 1].try_emplace(next, state, pat);
      }
    }
  }
  const auto hit = layers.back().find(State{tc, ta});
  if (hit == layers.back().end()) return infeasible_result(instance);

  std::vector<LinearOrder> ballots(instance.weights.size(), LinearOrder{});
  State state = hit->first;
  for (std::size_t i = instance.weights.size(); i-- > 0;) {
    const auto& [parent, pat] = layers[i + 1].at(state);
    const auto& pattern = kPatterns[static_cast<std::size_t>(pat)];
    std::array<int, 3> points{};
    points[static_cast<std::size_t>(c)] = pattern[0];
    points[static_cast<std::size_t>(others[0])] = pattern[1];
    points[static_cast<std::size_t>(others[1])] = 3 - pattern[0] - pattern[1];
    std::vector<int> ranking(3);
    for (int x = 0; x < 3; ++x) {
      ranking[static_cast<std::size_t>(2 - points[static_cast<std::size_t>(x)])] = x;
    }
    ballots[i] = LinearOrder{ranking};
    state = parent;
  }
  return witness_result(instance, std::move(ballots));
}

}  // namespace

ManipulationResult nanson_weighted_3cand(const ManipulationInstance& instance) {
  detail::validate_instance(instance);
  if (instance.rule != VotingRule::kNanson) {
    throw std::invalid_argument("three-candidate procedure applies to Nanson only");
  }
  const int m = instance.base.num_candidates();
  if (m > 3) {
    throw std::invalid_argument("three-candidate procedure requires at most 3 candidates");
  }
  const int c = instance.preferred;
  const std::size_t l = instance.weights.size();

  std::vector<std::vector<int>> tails;
  if (m == 1) {
    tails = {{}};
  } else if (m == 2) {
    tails = {{1 - c}};
  } else {
    std::vector<int> others;
    for (int x = 0; x < 3; ++x) {
      if (x != c) others.push_back(x);
    }
    tails = {{others[0], others[1]}, {others[1], others[0]}};
  }

  for (const std::vector<int>& tail : tails) {
    std::vector<int> ranking{c};
    ranking.insert(ranking.end(), tail.begin(), tail.end());
    const std::vector<LinearOrder> ballots(l, LinearOrder{ranking});
    if (evaluate(instance, ballots)) return witness_result(instance, ballots);
  }
  if (m == 3) return nanson_all_tie_route(instance);
  return infeasible_result(instance);
}

}  // namespace elimvote
