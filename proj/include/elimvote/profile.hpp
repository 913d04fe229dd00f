#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "elimvote/rational.hpp"

namespace elimvote {

/// Candidates are addressed by index. The index order doubles as the
/// fixed tie-break order: index 0 beats index 1 beats index 2, and so on.
struct CandidateSet {
  std::vector<std::string> names;

  int size() const { return static_cast<int>(names.size()); }

  /// Index of a display name, -1 if absent.
  int index_of(std::string_view name) const;

  bool operator==(const CandidateSet&) const = default;
};

/// A strict total ranking of all candidates, most-preferred first.
struct LinearOrder {
  std::vector<int> ranking;

  LinearOrder() = default;
  explicit LinearOrder(std::vector<int> r) : ranking(std::move(r)) {}

  int size() const { return static_cast<int>(ranking.size()); }

  /// Position of a candidate, 0 = top. Linear scan; fine for the sizes here.
  int rank_of(int candidate) const;

  /// True iff ranking is a permutation of 0..m-1.
  bool is_permutation_of(int m) const;

  LinearOrder reversed() const {
    return LinearOrder(std::vector<int>(ranking.rbegin(), ranking.rend()));
  }

  bool operator==(const LinearOrder&) const = default;
  auto operator<=>(const LinearOrder&) const = default;

  /// "a>b>c" against a candidate set. Throws on unknown names or
  /// non-permutations.
  static LinearOrder from_string(std::string_view text,
                                 const CandidateSet& candidates);
  std::string to_string(const CandidateSet& candidates) const;
};

struct WeightedBallot {
  LinearOrder order;
  Rational weight;  // > 0; 1 for unweighted voters

  bool operator==(const WeightedBallot&) const = default;
};

/// A weighted multiset of linear orders over a fixed candidate set.
/// Immutable in spirit: operations return new profiles.
class Profile {
 public:
  Profile() = default;
  explicit Profile(CandidateSet candidates)
      : candidates_(std::move(candidates)) {}
  Profile(CandidateSet candidates, std::vector<WeightedBallot> ballots);

  const CandidateSet& candidates() const { return candidates_; }
  const std::vector<WeightedBallot>& ballots() const { return ballots_; }

  int num_candidates() const { return candidates_.size(); }
  int num_ballots() const { return static_cast<int>(ballots_.size()); }
  Rational total_weight() const;

  /// Appends a ballot; validates the permutation and positive weight.
  void add_ballot(LinearOrder order, Rational weight = Rational(1));
  void add_copies(const LinearOrder& order, long long copies);

  /// Restriction to a nonempty candidate subset (indices into this
  /// profile). Ballots keep their relative order and weights; surviving
  /// candidates are re-indexed in their original order, preserving the
  /// tie-break order.
  Profile restricted(const std::vector<int>& survivors) const;

  /// Every ballot reversed, weights kept.
  Profile reversed() const;

  /// Ballots aggregated by identical order (weights summed), in order of
  /// first appearance.
  std::vector<WeightedBallot> aggregated_ballots() const;

  /// Anonymous equality: same candidates and same total weight per order.
  bool same_election(const Profile& other) const;

 private:
  void validate_ballot(const WeightedBallot& b) const;

  CandidateSet candidates_;
  std::vector<WeightedBallot> ballots_;
};

/// Error with a 1-based line number for profile text problems.
class ParseError : public std::runtime_error {
 public:
  ParseError(int line, const std::string& message)
      : std::runtime_error("line " + std::to_string(line) + ": " + message),
        line_(line) {}
  int line() const { return line_; }

 private:
  int line_;
};

/// Text format:
///   # comment
///   candidates: a,b,c
///   1: a>b>c
///   2/3: c>b>a
/// First non-comment line must be the candidates line (tie-break order).
/// Weights are positive integers or p/q rationals.
Profile parse_profile(std::string_view text);
std::string serialize_profile(const Profile& profile);

}  // namespace elimvote
