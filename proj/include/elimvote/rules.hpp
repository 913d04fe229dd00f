#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

#include "elimvote/profile.hpp"

namespace elimvote {

enum class VotingRule { kBorda, kNanson, kBaldwin };

/// Accepts "borda", "nanson", "baldwin" (case-sensitive); throws otherwise.
VotingRule rule_from_string(std::string_view name);
std::string_view to_string(VotingRule rule);

/// fixed_order(): ties go to the lowest candidate index. favor(c): c is
/// promoted to the top of that order; the rest keep index order.
struct TieBreakPolicy {
  int favored = -1;

  static TieBreakPolicy fixed_order() { return TieBreakPolicy{}; }
  static TieBreakPolicy favor(int candidate) { return TieBreakPolicy{candidate}; }
};

/// One scoring round: survivors in ascending index order, their exact Borda
/// scores (parallel array), the round average, and the candidates removed.
/// eliminated is empty only in a terminal all-tied round.
struct ElectionRound {
  std::vector<int> survivors;
  std::vector<Rational> scores;
  Rational average;
  std::vector<int> eliminated;
};

struct EliminationTrace {
  int winner = -1;
  std::vector<ElectionRound> rounds;
};

/// Highest Borda score wins; ties resolved by the policy.
int borda_winner(const Profile& profile, TieBreakPolicy policy = {});

/// Eliminates the single lowest Borda scorer each round (m-1 rounds). On a
/// score tie the tied candidate latest in the effective order is removed,
/// so under favor(c) the coalition's candidate survives ties.
EliminationTrace baldwin_winner(const Profile& profile, TieBreakPolicy policy = {});

/// Eliminates every candidate strictly below the round's average Borda
/// score. If no one is strictly below (all scores equal), the run stops and
/// the policy picks the winner among the survivors.
EliminationTrace nanson_winner(const Profile& profile, TieBreakPolicy policy = {});

/// Uniform dispatch; Borda yields a single round eliminating everyone but
/// the winner.
EliminationTrace run_rule(const Profile& profile, VotingRule rule,
                          TieBreakPolicy policy = {});

/// Every ballot's ranking reversed, weights kept.
inline Profile reversal(const Profile& profile) { return profile.reversed(); }

/// {"winner": name, "rounds": [{"survivors": [...], "scores": {name:
/// "p/q"}, "average": "p/q", "eliminated": [...]}]}. Scores are exact
/// rational strings.
nlohmann::ordered_json trace_to_json(const EliminationTrace& trace,
                                     const CandidateSet& candidates);

}  // namespace elimvote
