#include <stdexcept>
#include <vector>

#include "doctest.h"
#include "elimvote/profile.hpp"
#include "elimvote/scoring.hpp"

using namespace elimvote;

namespace {

Profile three_voter_example() {
  // A classic Condorcet-winner profile over a, b, c:
  //   2 x a>b>c, 1 x b>c>a, 1 x c>a>b, 1 x a>c>b
  Profile p(CandidateSet{{"a", "b", "c"}});
  p.add_copies(LinearOrder({0, 1, 2}), 2);
  p.add_ballot(LinearOrder({1, 2, 0}));
  p.add_ballot(LinearOrder({2, 0, 1}));
  p.add_ballot(LinearOrder({0, 2, 1}));
  return p;
}

}  // namespace

TEST_CASE("scoring vectors must strictly decrease") {
  CHECK_NOTHROW(ScoringVector({4, 2, 1, 0}));
  CHECK_THROWS_AS(ScoringVector({}), std::invalid_argument);
  CHECK_THROWS_AS(ScoringVector({3, 3, 1}), std::invalid_argument);
  CHECK_THROWS_AS(ScoringVector({1, 2, 3}), std::invalid_argument);
  CHECK(ScoringVector::borda(4).scores == std::vector<long long>{3, 2, 1, 0});
}

TEST_CASE("positional scores sum weights by rank") {
  const Profile p = three_voter_example();
  // Custom vector (5, 2, 0): a = 2*5+0+2+5 = 17, b = 2*2+5 = 9, c = 2+5+2 = 9.
  const ScoreTable t = positional_scores(p, ScoringVector({5, 2, 0}));
  CHECK(t == ScoreTable{Rational(17), Rational(9), Rational(9)});

  CHECK_THROWS_AS(positional_scores(p, ScoringVector({1, 0})),
                  std::invalid_argument);
}

TEST_CASE("borda scores match hand computation") {
  const Profile p = three_voter_example();
  // a: 2*2 + 0 + 1 + 2 = 7; b: 2*1 + 2 + 0 + 0 = 4; c: 0 + 1 + 2 + 1 = 4.
  CHECK(borda_scores(p) == ScoreTable{Rational(7), Rational(4), Rational(4)});
}

TEST_CASE("borda scores respect fractional weights") {
  Profile p(CandidateSet{{"a", "b"}});
  p.add_ballot(LinearOrder({0, 1}), Rational(1, 3));
  p.add_ballot(LinearOrder({1, 0}), Rational(1, 6));
  CHECK(borda_scores(p) == ScoreTable{Rational(1, 3), Rational(1, 6)});
}

TEST_CASE("borda total is invariant across profiles of equal weight") {
  // Each ballot hands out 0+1+...+(m-1) points, so the grand total is
  // fixed by the total weight alone.
  const Profile p = three_voter_example();
  Rational total(0);
  for (const Rational& s : borda_scores(p)) total += s;
  CHECK(total == p.total_weight() * Rational(3));  // m(m-1)/2 = 3 for m=3
}

TEST_CASE("pairwise margins are antisymmetric with zero diagonal") {
  const Profile p = three_voter_example();
  const auto mg = pairwise_margins(p);
  for (int i = 0; i < 3; ++i) {
    CHECK(mg[i][i] == Rational(0));
    for (int j = 0; j < 3; ++j) CHECK(mg[i][j] == -mg[j][i]);
  }
  // a beats b 4-1 and beats c 3-2; b beats c 3-2.
  CHECK(mg[0][1] == Rational(3));
  CHECK(mg[0][2] == Rational(1));
  CHECK(mg[1][2] == Rational(1));
}

TEST_CASE("condorcet winner and loser are detected") {
  const Profile p = three_voter_example();
  CHECK(condorcet_winner(p) == 0);
  CHECK(condorcet_loser(p) == 2);

  // Reversing every ballot swaps the two roles.
  CHECK(condorcet_winner(p.reversed()) == 2);
  CHECK(condorcet_loser(p.reversed()) == 0);
}

TEST_CASE("cyclic majorities have no condorcet winner or loser") {
  Profile p(CandidateSet{{"a", "b", "c"}});
  p.add_ballot(LinearOrder({0, 1, 2}));
  p.add_ballot(LinearOrder({1, 2, 0}));
  p.add_ballot(LinearOrder({2, 0, 1}));
  CHECK_FALSE(condorcet_winner(p).has_value());
  CHECK_FALSE(condorcet_loser(p).has_value());
}

TEST_CASE("tied head-to-heads block both notions") {
  Profile p(CandidateSet{{"a", "b"}});
  p.add_ballot(LinearOrder({0, 1}));
  p.add_ballot(LinearOrder({1, 0}));
  CHECK_FALSE(condorcet_winner(p).has_value());
  CHECK_FALSE(condorcet_loser(p).has_value());
}
