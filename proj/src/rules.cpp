#include "elimvote/rules.hpp"

#include <stdexcept>

#include "engine.hpp"

namespace elimvote {

namespace {

engine::Rule to_engine(VotingRule rule) {
  switch (rule) {
    case VotingRule::kBorda: return engine::Rule::kBorda;
    case VotingRule::kNanson: return engine::Rule::kNanson;
    case VotingRule::kBaldwin: return engine::Rule::kBaldwin;
  }
  throw std::logic_error("unknown rule");
}

EliminationTrace convert(const engine::ElectionResult& result, long long scale) {
  EliminationTrace trace;
  trace.winner = result.winner;
  trace.rounds.reserve(result.rounds.size());
  for (const engine::RoundRecord& rec : result.rounds) {
    ElectionRound round;
    round.survivors = rec.survivors;
    round.eliminated = rec.eliminated;
    round.scores.reserve(rec.scores.size());
    long long sum = 0;
    for (long long s : rec.scores) {
      round.scores.emplace_back(s, scale);
      sum += s;
    }
    round.average = Rational(sum, scale * static_cast<long long>(rec.survivors.size()));
    trace.rounds.push_back(std::move(round));
  }
  return trace;
}

EliminationTrace run(const Profile& profile, engine::Rule rule, TieBreakPolicy policy) {
  const auto scaled = engine::ScaledProfile::from_profile(profile);
  const auto priority = engine::tie_break_priority(scaled.m, policy.favored);
  return convert(engine::run_election(scaled, rule, priority), scaled.scale);
}

}  // namespace

VotingRule rule_from_string(std::string_view name) {
  if (name == "borda") return VotingRule::kBorda;
  if (name == "nanson") return VotingRule::kNanson;
  if (name == "baldwin") return VotingRule::kBaldwin;
  throw std::invalid_argument("unknown voting rule: " + std::string(name));
}

std::string_view to_string(VotingRule rule) {
  switch (rule) {
    case VotingRule::kBorda: return "borda";
    case VotingRule::kNanson: return "nanson";
    case VotingRule::kBaldwin: return "baldwin";
  }
  throw std::logic_error("unknown rule");
}

int borda_winner(const Profile& profile, TieBreakPolicy policy) {
  return run(profile, engine::Rule::kBorda, policy).winner;
}

EliminationTrace baldwin_winner(const Profile& profile, TieBreakPolicy policy) {
  return run(profile, engine::Rule::kBaldwin, policy);
}

EliminationTrace nanson_winner(const Profile& profile, TieBreakPolicy policy) {
  return run(profile, engine::Rule::kNanson, policy);
}

EliminationTrace run_rule(const Profile& profile, VotingRule rule, TieBreakPolicy policy) {
  return run(profile, to_engine(rule), policy);
}

nlohmann::ordered_json trace_to_json(const EliminationTrace& trace,
                                     const CandidateSet& candidates) {
  nlohmann::ordered_json out;
  out["winner"] = candidates.names[static_cast<std::size_t>(trace.winner)];
  nlohmann::ordered_json rounds = nlohmann::ordered_json::array();
  for (const ElectionRound& round : trace.rounds) {
    nlohmann::ordered_json r;
    nlohmann::ordered_json survivors = nlohmann::ordered_json::array();
    nlohmann::ordered_json scores;
    for (std::size_t i = 0; i < round.survivors.size(); ++i) {
      const std::string& name =
          candidates.names[static_cast<std::size_t>(round.survivors[i])];
      survivors.push_back(name);
      scores[name] = round.scores[i].to_string();
    }
    r["survivors"] = std::move(survivors);
    r["scores"] = std::move(scores);
    r["average"] = round.average.to_string();
    nlohmann::ordered_json eliminated = nlohmann::ordered_json::array();
    for (int c : round.eliminated) {
      eliminated.push_back(candidates.names[static_cast<std::size_t>(c)]);
    }
    r["eliminated"] = std::move(eliminated);
    rounds.push_back(std::move(r));
  }
  out["rounds"] = std::move(rounds);
  return out;
}

}  // namespace elimvote
