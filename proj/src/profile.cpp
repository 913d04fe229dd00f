#include "elimvote/profile.hpp"

#include <algorithm>
#include <map>
#include <sstream>
#include <unordered_set>

namespace elimvote {

int CandidateSet::index_of(std::string_view name) const {
  for (int i = 0; i < size(); ++i)
    if (names[i] == name) return i;
  return -1;
}

int LinearOrder::rank_of(int candidate) const {
  for (int i = 0; i < size(); ++i)
    if (ranking[i] == candidate) return i;
  throw std::invalid_argument("candidate not in ranking");
}

bool LinearOrder::is_permutation_of(int m) const {
  if (size() != m) return false;
  std::vector<bool> seen(m, false);
  for (int c : ranking) {
    if (c < 0 || c >= m || seen[c]) return false;
    seen[c] = true;
  }
  return true;
}

LinearOrder LinearOrder::from_string(std::string_view text,
                                     const CandidateSet& candidates) {
  std::vector<int> ranking;
  size_t start = 0;
  auto take = [&](std::string_view token) {
    size_t a = token.find_first_not_of(" \t");
    size_t b = token.find_last_not_of(" \t");
    if (a == std::string_view::npos)
      throw std::invalid_argument("empty candidate name in ranking");
    token = token.substr(a, b - a + 1);
    int idx = candidates.index_of(token);
    if (idx < 0)
      throw std::invalid_argument("unknown candidate '" + std::string(token) +
                                  "'");
    ranking.push_back(idx);
  };
  while (true) {
    size_t gt = text.find('>', start);
    if (gt == std::string_view::npos) {
      take(text.substr(start));
      break;
    }
    take(text.substr(start, gt - start));
    start = gt + 1;
  }
  LinearOrder order(std::move(ranking));
  if (!order.is_permutation_of(candidates.size()))
    throw std::invalid_argument("ranking is not a permutation of the "
                                "candidate set");
  return order;
}

std::string LinearOrder::to_string(const CandidateSet& candidates) const {
  std::string out;
  for (int i = 0; i < size(); ++i) {
    if (i) out += '>';
    out += candidates.names[ranking[i]];
  }
  return out;
}

Profile::Profile(CandidateSet candidates, std::vector<WeightedBallot> ballots)
    : candidates_(std::move(candidates)), ballots_(std::move(ballots)) {
  for (const auto& b : ballots_) validate_ballot(b);
}

void Profile::validate_ballot(const WeightedBallot& b) const {
  if (!b.order.is_permutation_of(num_candidates()))
    throw std::invalid_argument("ballot is not a permutation of the "
                                "candidate set");
  if (!b.weight.is_positive())
    throw std::invalid_argument("ballot weight must be positive");
}

Rational Profile::total_weight() const {
  Rational total(0);
  for (const auto& b : ballots_) total += b.weight;
  return total;
}

void Profile::add_ballot(LinearOrder order, Rational weight) {
  WeightedBallot b{std::move(order), weight};
  validate_ballot(b);
  ballots_.push_back(std::move(b));
}

void Profile::add_copies(const LinearOrder& order, long long copies) {
  if (copies < 0) throw std::invalid_argument("negative copy count");
  if (copies == 0) return;
  add_ballot(order, Rational(copies));
}

Profile Profile::restricted(const std::vector<int>& survivors) const {
  if (survivors.empty())
    throw std::invalid_argument("restriction to empty candidate set");
  std::vector<int> new_index(num_candidates(), -1);
  std::vector<int> sorted = survivors;
  std::sort(sorted.begin(), sorted.end());
  sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
  CandidateSet subset;
  for (int c : sorted) {
    if (c < 0 || c >= num_candidates())
      throw std::invalid_argument("survivor index out of range");
    new_index[c] = subset.size();
    subset.names.push_back(candidates_.names[c]);
  }
  Profile out(std::move(subset));
  for (const auto& b : ballots_) {
    std::vector<int> kept;
    kept.reserve(sorted.size());
    for (int c : b.order.ranking)
      if (new_index[c] >= 0) kept.push_back(new_index[c]);
    out.add_ballot(LinearOrder(std::move(kept)), b.weight);
  }
  return out;
}

Profile Profile::reversed() const {
  Profile out(candidates_);
  for (const auto& b : ballots_) out.add_ballot(b.order.reversed(), b.weight);
  return out;
}

std::vector<WeightedBallot> Profile::aggregated_ballots() const {
  std::vector<WeightedBallot> agg;
  std::map<std::vector<int>, int> slot;
  for (const auto& b : ballots_) {
    auto [it, fresh] = slot.try_emplace(b.order.ranking,
                                        static_cast<int>(agg.size()));
    if (fresh)
      agg.push_back(b);
    else
      agg[it->second].weight += b.weight;
  }
  return agg;
}

bool Profile::same_election(const Profile& other) const {
  if (!(candidates_ == other.candidates_)) return false;
  auto a = aggregated_ballots();
  auto b = other.aggregated_ballots();
  if (a.size() != b.size()) return false;
  auto key = [](const WeightedBallot& w) { return w.order.ranking; };
  std::sort(a.begin(), a.end(),
            [&](auto& x, auto& y) { return key(x) < key(y); });
  std::sort(b.begin(), b.end(),
            [&](auto& x, auto& y) { return key(x) < key(y); });
  return a == b;
}

namespace {

std::string_view trim(std::string_view s) {
  size_t a = s.find_first_not_of(" \t\r");
  if (a == std::string_view::npos) return {};
  size_t b = s.find_last_not_of(" \t\r");
  return s.substr(a, b - a + 1);
}

}  // namespace

Profile parse_profile(std::string_view text) {
  CandidateSet candidates;
  bool have_candidates = false;
  Profile profile;
  int line_no = 0;
  size_t pos = 0;
  while (pos <= text.size()) {
    size_t nl = text.find('\n', pos);
    std::string_view raw = text.substr(
        pos, nl == std::string_view::npos ? text.size() - pos : nl - pos);
    pos = nl == std::string_view::npos ? text.size() + 1 : nl + 1;
    ++line_no;
    std::string_view line = raw;
    if (size_t hash = line.find('#'); hash != std::string_view::npos)
      line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;

    if (!have_candidates) {
      constexpr std::string_view kPrefix = "candidates:";
      if (!line.starts_with(kPrefix))
        throw ParseError(line_no, "expected 'candidates:' header line");
      std::string_view list = line.substr(kPrefix.size());
      size_t start = 0;
      while (true) {
        size_t comma = list.find(',', start);
        std::string_view name = trim(
            comma == std::string_view::npos ? list.substr(start)
                                            : list.substr(start, comma - start));
        if (name.empty())
          throw ParseError(line_no, "empty candidate name");
        if (candidates.index_of(name) >= 0)
          throw ParseError(line_no,
                           "duplicate candidate '" + std::string(name) + "'");
        candidates.names.emplace_back(name);
        if (comma == std::string_view::npos) break;
        start = comma + 1;
      }
      if (candidates.size() == 0)
        throw ParseError(line_no, "no candidates declared");
      profile = Profile(candidates);
      have_candidates = true;
      continue;
    }

    size_t colon = line.find(':');
    if (colon == std::string_view::npos)
      throw ParseError(line_no, "expected '<weight>: <ranking>'");
    Rational weight;
    try {
      weight = Rational::from_string(trim(line.substr(0, colon)));
    } catch (const std::exception& e) {
      throw ParseError(line_no, std::string("bad weight: ") + e.what());
    }
    if (!weight.is_positive())
      throw ParseError(line_no, "weight must be positive");
    try {
      profile.add_ballot(
          LinearOrder::from_string(trim(line.substr(colon + 1)), candidates),
          weight);
    } catch (const std::exception& e) {
      throw ParseError(line_no, e.what());
    }
  }
  if (!have_candidates) throw ParseError(line_no, "empty profile text");
  return profile;
}

std::string serialize_profile(const Profile& profile) {
  std::string out = "candidates: ";
  const auto& names = profile.candidates().names;
  for (size_t i = 0; i < names.size(); ++i) {
    if (i) out += ',';
    out += names[i];
  }
  out += '\n';
  for (const auto& b : profile.ballots()) {
    out += b.weight.to_string();
    out += ": ";
    out += b.order.to_string(profile.candidates());
    out += '\n';
  }
  return out;
}

}  // namespace elimvote
