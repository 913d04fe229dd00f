#include <array>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "doctest.h"
#include "elimvote/generators.hpp"
#include "elimvote/manipulation.hpp"
#include "elimvote/reductions.hpp"
#include "elimvote/rules.hpp"
#include "elimvote/scoring.hpp"

using namespace elimvote;

namespace {

Profile pair_profile(const CandidateSet& candidates, const GadgetVotePair& pair) {
  Profile profile(candidates);
  profile.add_ballot(pair.first);
  profile.add_ballot(pair.second);
  return profile;
}

std::array<int, 3> random_triple(int q, std::mt19937_64& rng) {
  std::vector<int> pool(static_cast<std::size_t>(q));
  for (int i = 0; i < q; ++i) pool[static_cast<std::size_t>(i)] = i;
  portable_shuffle(pool, rng);
  return {pool[0], pool[1], pool[2]};
}

}  // namespace

TEST_CASE("exact-cover instances validate their triples") {
  CHECK_THROWS_AS(X3CInstance(0, {}), std::invalid_argument);
  CHECK_THROWS_AS(X3CInstance(3, {{0, 1, 3}}), std::invalid_argument);
  CHECK_THROWS_AS(X3CInstance(3, {{0, 0, 1}}), std::invalid_argument);
  const X3CInstance ok(6, {{0, 1, 2}, {3, 4, 5}});
  CHECK(ok.t() == 2);
}

TEST_CASE("pair gadget shifts exactly one point between its endpoints") {
  const CandidateSet cands{{"u", "v", "x", "y", "z"}};
  CHECK_THROWS_AS(gadget_W(1, 1, cands), std::invalid_argument);
  CHECK_THROWS_AS(gadget_W(0, 5, cands), std::invalid_argument);

  const GadgetVotePair pair = gadget_W(0, 1, cands);
  CHECK(pair.first.ranking == std::vector<int>{0, 1, 2, 3, 4});
  CHECK(pair.second.ranking == std::vector<int>{4, 3, 2, 0, 1});

  const Profile profile = pair_profile(cands, pair);
  const ScoreTable scores = borda_scores(profile);
  for (int e = 2; e < 5; ++e) {
    CHECK(scores[0] - scores[static_cast<std::size_t>(e)] == Rational(1));
    CHECK(scores[1] - scores[static_cast<std::size_t>(e)] == Rational(-1));
  }

  // Removing the boosted endpoint lifts the other one level with the rest;
  // removing a bystander leaves both differences untouched.
  const ScoreTable without_u = borda_scores(profile.restricted({1, 2, 3, 4}));
  for (std::size_t e = 1; e < 4; ++e) {
    CHECK(without_u[0] - without_u[e] == Rational(0));
  }
  const ScoreTable without_z = borda_scores(profile.restricted({0, 1, 2, 3}));
  for (std::size_t e = 2; e < 4; ++e) {
    CHECK(without_z[0] - without_z[e] == Rational(1));
    CHECK(without_z[1] - without_z[e] == Rational(-1));
  }
}

TEST_CASE("pinned-last pair gadget keeps the special candidate at zero") {
  const CandidateSet cands{{"a", "b", "c", "d", "e", "f", "p"}};
  CHECK_THROWS_AS(gadget_R(0, 6, 6, cands), std::invalid_argument);

  const GadgetVotePair pair = gadget_R(1, 2, 6, cands);
  CHECK(pair.first.ranking.back() == 6);
  CHECK(pair.second.ranking.back() == 6);

  const Profile profile = pair_profile(cands, pair);
  const ScoreTable scores = borda_scores(profile);
  CHECK(scores[6] == Rational(0));
  for (int e : {0, 3, 4, 5}) {
    CHECK(scores[1] - scores[static_cast<std::size_t>(e)] == Rational(1));
    CHECK(scores[2] - scores[static_cast<std::size_t>(e)] == Rational(-1));
  }
}

TEST_CASE("exact-cover reduction satisfies its score identities exactly") {
  const X3CInstance tiny(3, {{0, 1, 2}, {0, 1, 2}});
  const ManipulationInstance instance = x3c_to_baldwin(tiny);
  CHECK(instance.rule == VotingRule::kBaldwin);
  CHECK(instance.preferred == 0);
  CHECK_FALSE(instance.weighted());
  CHECK(instance.base.num_candidates() == 8);

  const IdentityReport report = check_x3c_identities(tiny, instance);
  CHECK(report.all_hold);

  const ScoreTable scores = borda_scores(instance.base);
  const long long m = 8;
  for (int i = 0; i < 3; ++i) {
    CHECK(scores[static_cast<std::size_t>(3 + i)] - scores[0] == Rational(m));
  }
  for (int j = 0; j < 2; ++j) {
    CHECK(scores[static_cast<std::size_t>(6 + j)] - scores[0] == Rational(1));
  }
  CHECK(scores[2] - scores[0] == Rational(m * 3));

  CHECK_THROWS_AS(x3c_to_baldwin(X3CInstance(3, {{0, 1, 2}})), std::invalid_argument);
}

TEST_CASE("exact-cover reduction identities hold on randomized inputs") {
  std::mt19937_64 rng = make_rng(4242);
  for (int trial = 0; trial < 12; ++trial) {
    const int q = 3 * (1 + static_cast<int>(bounded_u64(rng, 4)));  // 3..12
    const int t = 2 + static_cast<int>(bounded_u64(rng, 7));        // 2..8
    std::vector<std::array<int, 3>> sets;
    for (int j = 0; j < t; ++j) sets.push_back(random_triple(q, rng));
    const X3CInstance x3c(q, std::move(sets));
    const IdentityReport report = check_x3c_identities(x3c, x3c_to_baldwin(x3c));
    CAPTURE(trial);
    CHECK(report.all_hold);
  }
}

TEST_CASE("cover witness vote has the documented shape and elects the candidate") {
  const X3CInstance tiny(3, {{0, 1, 2}, {0, 1, 2}});
  const ManipulationInstance instance = x3c_to_baldwin(tiny);

  const LinearOrder witness = x3c_witness_vote(tiny, {0});
  // c, d, the non-cover set candidate, b, the ground set, the cover set.
  CHECK(witness.ranking == std::vector<int>{0, 1, 7, 2, 3, 4, 5, 6});
  CHECK(evaluate(instance, {witness}));
  CHECK(evaluate_trace(instance, {witness}).winner == 0);

  CHECK_THROWS_AS(x3c_witness_vote(tiny, {}), std::invalid_argument);
  CHECK_THROWS_AS(x3c_witness_vote(tiny, {0, 1}), std::invalid_argument);
  CHECK_THROWS_AS(x3c_witness_vote(tiny, {5}), std::invalid_argument);
  CHECK_THROWS_AS(x3c_witness_vote(tiny, {0, 0}), std::invalid_argument);
}

TEST_CASE("solvable random exact-cover instances yield winning witnesses") {
  std::mt19937_64 rng = make_rng(777);
  for (int trial = 0; trial < 8; ++trial) {
    const int q = 6;
    // Plant a disjoint pair, then add noise triples.
    std::vector<int> pool(static_cast<std::size_t>(q));
    for (int i = 0; i < q; ++i) pool[static_cast<std::size_t>(i)] = i;
    portable_shuffle(pool, rng);
    std::vector<std::array<int, 3>> sets = {{pool[0], pool[1], pool[2]},
                                            {pool[3], pool[4], pool[5]}};
    const int noise = static_cast<int>(bounded_u64(rng, 3));
    for (int j = 0; j < noise; ++j) sets.push_back(random_triple(q, rng));

    const X3CInstance x3c(q, std::move(sets));
    const auto cover = x3c_solve_small(x3c);
    REQUIRE(cover.has_value());
    const ManipulationInstance instance = x3c_to_baldwin(x3c);
    CHECK(check_x3c_identities(x3c, instance).all_hold);
    CHECK(evaluate(instance, {x3c_witness_vote(x3c, *cover)}));
  }
}

TEST_CASE("exact-cover solver distinguishes coverable families") {
  const auto single = x3c_solve_small(X3CInstance(3, {{0, 1, 2}}));
  REQUIRE(single.has_value());
  CHECK(*single == std::vector<int>{0});

  // Two exact covers exist ({0,2} and {1,3}); the search tries set 0 first.
  const auto pair = x3c_solve_small(
      X3CInstance(6, {{0, 1, 3}, {0, 1, 2}, {2, 4, 5}, {3, 4, 5}}));
  REQUIRE(pair.has_value());
  CHECK(*pair == std::vector<int>{0, 2});

  // Every element appears somewhere, but all triples pairwise overlap.
  CHECK_FALSE(x3c_solve_small(X3CInstance(6, {{0, 1, 2}, {2, 3, 4}, {4, 5, 0}}))
                  .has_value());
  // Ground set size not a multiple of three can never be covered.
  CHECK_FALSE(x3c_solve_small(X3CInstance(4, {{0, 1, 2}, {1, 2, 3}})).has_value());
}

TEST_CASE("at desk scale the single-manipulator search mirrors solvability") {
  // With q=3 the only valid triple is the full ground set, so every
  // constructible family is solvable; the oracle must find the
  // one-manipulator strategy that the witness vote realizes.
  const X3CInstance tiny(3, {{0, 1, 2}, {0, 1, 2}, {0, 1, 2}});
  const ManipulationInstance instance = x3c_to_baldwin(tiny);
  const OracleOutcome out = brute_force_optimal_unweighted(instance, 1);
  REQUIRE(out.found());
  CHECK(out.result.manipulators_used == 1);
}

TEST_CASE("partition reduction hits the published base scores") {
  const PartitionInstance unit({1, 1});
  const ManipulationInstance instance = partition_to_nanson(unit);
  CHECK(instance.rule == VotingRule::kNanson);
  CHECK(instance.preferred == 3);
  REQUIRE(instance.weights.size() == 2);
  CHECK(instance.weights[0] == Rational(1));

  const ScoreTable scores = borda_scores(instance.base);
  CHECK(scores[0] == Rational(32));   // 14K+18 at K=1
  CHECK(scores[1] == Rational(35));   // 17K+18
  CHECK(scores[2] == Rational(35));
  CHECK(scores[3] == Rational(30));   // 12K+18
  CHECK(check_partition_identities(unit, instance).all_hold);

  for (const std::vector<long long>& integers :
       {std::vector<long long>{2, 4, 6}, {3, 5, 7, 9}, {10, 10}, {1, 2, 3, 4, 6}}) {
    const PartitionInstance p(integers);
    CHECK(check_partition_identities(p, partition_to_nanson(p)).all_hold);
  }
}

TEST_CASE("partition witness ballots force the all-candidate tie") {
  const PartitionInstance unit({1, 1});
  const ManipulationInstance instance = partition_to_nanson(unit);
  const std::vector<LinearOrder> ballots = partition_witness_votes(unit, {0});
  REQUIRE(ballots.size() == 2);
  CHECK(ballots[0].ranking == std::vector<int>{3, 0, 1, 2});  // p>a>b>c
  CHECK(ballots[1].ranking == std::vector<int>{3, 0, 2, 1});  // p>a>c>b

  const EliminationTrace trace = evaluate_trace(instance, ballots);
  CHECK(trace.winner == 3);
  REQUIRE(trace.rounds.size() == 1);
  for (const Rational& s : trace.rounds.front().scores) {
    CHECK(s == Rational(36));  // 18K+18 at K=1
  }

  const PartitionInstance mixed({3, 1, 2});
  const auto side = partition_solve_small(mixed);
  REQUIRE(side.has_value());
  const ManipulationInstance inst2 = partition_to_nanson(mixed);
  const EliminationTrace t2 =
      evaluate_trace(inst2, partition_witness_votes(mixed, *side));
  CHECK(t2.winner == 3);
  for (const Rational& s : t2.rounds.front().scores) {
    CHECK(s == Rational(18 * 3 + 18));
  }
}

TEST_CASE("partition witness sides are validated") {
  const PartitionInstance two({1, 3});  // K = 2, but no side sums to 2
  CHECK_THROWS_AS(partition_witness_votes(two, {0}), std::invalid_argument);
  CHECK_THROWS_AS(partition_witness_votes(two, {0, 0}), std::invalid_argument);
  CHECK_THROWS_AS(partition_witness_votes(two, {7}), std::invalid_argument);
  CHECK_FALSE(partition_solve_small(two).has_value());
  CHECK_FALSE(partition_solve_small(PartitionInstance({1, 1, 4})).has_value());
}

TEST_CASE("pathology family construction matches its score sheet exactly") {
  for (long long n : {1LL, 2LL, 4LL}) {
    const ManipulationInstance instance = reverse_pathology_instance(n);
    CHECK(instance.rule == VotingRule::kBaldwin);
    CHECK(instance.preferred == 6);
    CHECK(instance.base.total_weight() == Rational(42 * n));

    const IdentityReport report = check_pathology_identities(n, instance);
    CAPTURE(n);
    CHECK(report.all_hold);

    const ScoreTable scores = borda_scores(instance.base);
    CHECK(scores[0] == Rational(138 * n));
    CHECK(scores[5] == Rational(138 * n));
    for (std::size_t x = 1; x <= 4; ++x) CHECK(scores[x] == Rational(141 * n));
    CHECK(scores[6] == Rational(42 * n));
  }
  CHECK_THROWS_AS(reverse_pathology_instance(0), std::invalid_argument);
}

TEST_CASE("identity checkers flag a tampered instance") {
  const PartitionInstance unit({1, 1});
  ManipulationInstance instance = partition_to_nanson(unit);
  instance.base.add_ballot(LinearOrder({3, 2, 1, 0}));
  const IdentityReport report = check_partition_identities(unit, instance);
  CHECK_FALSE(report.all_hold);
  REQUIRE(report.details.contains("s(p)"));
  CHECK(report.details["s(p)"]["expected"].get<long long>() == 30);
  CHECK(report.details["s(p)"]["actual"].get<long long>() == 33);

  const X3CInstance tiny(3, {{0, 1, 2}, {0, 1, 2}});
  ManipulationInstance x3c_inst = x3c_to_baldwin(tiny);
  x3c_inst.base.add_ballot(LinearOrder({2, 0, 1, 3, 4, 5, 6, 7}));
  CHECK_FALSE(check_x3c_identities(tiny, x3c_inst).all_hold);
}
