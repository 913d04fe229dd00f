#include <algorithm>
#include <stdexcept>
#include <vector>

#include "doctest.h"
#include "elimvote/generators.hpp"
#include "elimvote/manipulation.hpp"
#include "elimvote/reductions.hpp"
#include "elimvote/rules.hpp"

using namespace elimvote;

namespace {

ManipulationInstance unweighted(VotingRule rule, Profile base, int preferred) {
  ManipulationInstance inst;
  inst.rule = rule;
  inst.base = std::move(base);
  inst.preferred = preferred;
  return inst;
}

ManipulationInstance random_instance(VotingRule rule, int m, long long n,
                                     std::uint64_t seed) {
  GeneratorSpec spec;
  spec.m = m;
  spec.n = n;
  spec.seed = seed;
  return unweighted(rule, uniform_profile(spec), 0);
}

const std::vector<Heuristic> kAllHeuristics = {
    Heuristic::kReverse, Heuristic::kLargestFit, Heuristic::kAverageFit,
    Heuristic::kEliminate, Heuristic::kRevEliminate};

}  // namespace

TEST_CASE("heuristic names round-trip") {
  for (Heuristic h : kAllHeuristics) {
    CHECK(heuristic_from_string(to_string(h) == "Rev"      ? "rev"
                                : to_string(h) == "LaFit"  ? "lafit"
                                : to_string(h) == "AvFit"  ? "avfit"
                                : to_string(h) == "Elim"   ? "elim"
                                                           : "revelim") == h);
  }
  CHECK_THROWS_AS(heuristic_from_string("nope"), std::invalid_argument);
}

TEST_CASE("evaluate favors the preferred candidate on ties") {
  // a and b tie at 1 point each; favor(b) hands b the win with no ballots.
  Profile base(CandidateSet{{"a", "b"}});
  base.add_ballot(LinearOrder({0, 1}));
  base.add_ballot(LinearOrder({1, 0}));
  CHECK(evaluate(unweighted(VotingRule::kBorda, base, 1), {}));
  CHECK(evaluate(unweighted(VotingRule::kBaldwin, base, 0), {}));
  // One extra a>b ballot breaks the tie against b for real.
  CHECK_FALSE(evaluate(unweighted(VotingRule::kBorda, base, 1),
                       {LinearOrder({0, 1})}));
}

TEST_CASE("evaluate rejects malformed ballots and weight mismatches") {
  Profile base(CandidateSet{{"a", "b", "c"}});
  base.add_ballot(LinearOrder({0, 1, 2}));
  ManipulationInstance inst = unweighted(VotingRule::kBorda, base, 2);
  CHECK_THROWS_AS(evaluate(inst, {LinearOrder({0, 1})}), std::invalid_argument);

  inst.weights = {Rational(2), Rational(1)};
  CHECK_THROWS_AS(evaluate(inst, {LinearOrder({2, 0, 1})}), std::invalid_argument);
  ManipulationInstance bad = inst;
  bad.weights = {Rational(0)};
  CHECK_THROWS_AS(evaluate(bad, {LinearOrder({2, 0, 1})}), std::invalid_argument);
}

TEST_CASE("weighted evaluate pairs ballots with weights exactly") {
  Profile base(CandidateSet{{"a", "b", "c"}});
  base.add_copies(LinearOrder({0, 1, 2}), 3);
  ManipulationInstance inst = unweighted(VotingRule::kBorda, base, 2);
  inst.weights = {Rational(2), Rational(5, 2)};
  // a: 6, b: 3 + 2*1 + (5/2)*0 = 5, c: 2*2 + (5/2)*2 = 9 -> c wins.
  CHECK(evaluate(inst, {LinearOrder({2, 1, 0}), LinearOrder({2, 0, 1})}));
  // Smaller weights fail: a keeps 6, c gets 2+5/2 = 4.5 plus nothing else.
  inst.weights = {Rational(1), Rational(5, 4)};
  CHECK_FALSE(evaluate(inst, {LinearOrder({2, 1, 0}), LinearOrder({2, 0, 1})}));
}

TEST_CASE("reverse heuristic builds the documented ballot") {
  // Base: b>a>c. Current scores b 2, a 1, c 0; manipulating for a the
  // ballot is a, then c (lowest), then b — and one ballot suffices.
  Profile base(CandidateSet{{"a", "b", "c"}});
  base.add_ballot(LinearOrder({1, 0, 2}));
  const ManipulationResult r =
      heuristic_reverse(unweighted(VotingRule::kBorda, base, 0));
  CHECK(r.success);
  REQUIRE(r.manipulators_used == 1);
  CHECK(r.ballots[0].ranking == std::vector<int>{0, 2, 1});
  CHECK(r.trace.winner == 0);
}

TEST_CASE("heuristics return zero ballots when the candidate already wins") {
  Profile base(CandidateSet{{"a", "b", "c"}});
  base.add_copies(LinearOrder({0, 1, 2}), 2);
  for (VotingRule rule :
       {VotingRule::kBorda, VotingRule::kNanson, VotingRule::kBaldwin}) {
    for (Heuristic h : kAllHeuristics) {
      const ManipulationResult r =
          minimize_manipulators(unweighted(rule, base, 0), h);
      CHECK(r.success);
      CHECK(r.manipulators_used == 0);
      CHECK(r.ballots.empty());
    }
  }
}

TEST_CASE("two-candidate fit heuristics reduce to stacking the opponent last") {
  // 3 x b>a: the gap is 3 and each a>b ballot closes one point, so three
  // manipulators tie it up and the favored tie-break finishes the job.
  Profile base(CandidateSet{{"a", "b"}});
  base.add_copies(LinearOrder({1, 0}), 3);
  const ManipulationInstance inst = unweighted(VotingRule::kBorda, base, 0);

  CHECK(fit_lower_bound(inst) == 3);
  CHECK_FALSE(heuristic_largest_fit(inst, 2).success);
  CHECK_FALSE(heuristic_average_fit(inst, 2).success);

  for (Heuristic h : {Heuristic::kLargestFit, Heuristic::kAverageFit}) {
    const ManipulationResult r = minimize_manipulators(inst, h);
    CHECK(r.success);
    CHECK(r.manipulators_used == 3);
    for (const LinearOrder& b : r.ballots) {
      CHECK(b.ranking == std::vector<int>{0, 1});
    }
  }
}

TEST_CASE("average fit equals largest fit with two candidates") {
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    const ManipulationInstance inst =
        random_instance(VotingRule::kBorda, 2, 7, 5000 + seed);
    for (long long k = 1; k <= 4; ++k) {
      const ManipulationResult lf = heuristic_largest_fit(inst, k);
      const ManipulationResult af = heuristic_average_fit(inst, k);
      CHECK(lf.success == af.success);
      CHECK(lf.ballots == af.ballots);
    }
  }
}

TEST_CASE("fit ballots always top the preferred candidate and verify") {
  for (std::uint64_t seed = 0; seed < 25; ++seed) {
    for (VotingRule rule :
         {VotingRule::kBorda, VotingRule::kNanson, VotingRule::kBaldwin}) {
      const ManipulationInstance inst = random_instance(rule, 4, 9, 7000 + seed);
      for (Heuristic h : {Heuristic::kLargestFit, Heuristic::kAverageFit}) {
        const ManipulationResult r = minimize_manipulators(inst, h);
        CHECK(r.success);
        CHECK(evaluate(inst, r.ballots));
        CHECK(r.trace.winner == inst.preferred);
        for (const LinearOrder& b : r.ballots) {
          CHECK(b.ranking.front() == inst.preferred);
          CHECK(b.is_permutation_of(4));
        }
      }
    }
  }
}

TEST_CASE("eliminate ballots follow the elimination order of the standing election") {
  // Base over four candidates, manipulating for d (index 3). The first
  // pushed ballot must read d, then the candidates in the order baldwin
  // (with the favor(d) tie-break) eliminates them, standing winner last.
  for (std::uint64_t seed = 100; seed < 130; ++seed) {
    const ManipulationInstance inst =
        random_instance(VotingRule::kBaldwin, 4, 7, seed);
    const EliminationTrace t =
        baldwin_winner(inst.base, TieBreakPolicy::favor(inst.preferred));
    if (t.winner == inst.preferred) continue;  // no first ballot to inspect
    std::vector<int> sequence;
    for (const ElectionRound& r : t.rounds) {
      for (int e : r.eliminated) sequence.push_back(e);
    }
    sequence.push_back(t.winner);
    std::erase(sequence, inst.preferred);

    std::vector<int> elim_expected{inst.preferred};
    elim_expected.insert(elim_expected.end(), sequence.begin(), sequence.end());
    std::vector<int> rev_expected{inst.preferred};
    rev_expected.insert(rev_expected.end(), sequence.rbegin(), sequence.rend());

    const ManipulationResult elim = heuristic_eliminate(inst);
    const ManipulationResult rev = heuristic_rev_eliminate(inst);
    REQUIRE(elim.manipulators_used >= 1);
    REQUIRE(rev.manipulators_used >= 1);
    CHECK(elim.ballots[0].ranking == elim_expected);
    CHECK(rev.ballots[0].ranking == rev_expected);
    CHECK(elim.success);
    CHECK(rev.success);
    CHECK(evaluate(inst, elim.ballots));
    CHECK(evaluate(inst, rev.ballots));
  }
}

TEST_CASE("borda eliminate coincides with reverse, ballot for ballot") {
  for (std::uint64_t seed = 0; seed < 40; ++seed) {
    const ManipulationInstance inst =
        random_instance(VotingRule::kBorda, 5, 5, 11000 + seed);
    const ManipulationResult rev = heuristic_reverse(inst);
    const ManipulationResult elim = heuristic_eliminate(inst);
    CHECK(rev.ballots == elim.ballots);
    CHECK(rev.manipulators_used == elim.manipulators_used);
  }
}

TEST_CASE("borda rev-eliminate stacks the strongest rival right after the candidate") {
  // Scores b 4, c 2 against preferred a: the rev-eliminate ballot reads
  // a, b, c — the worst possible help, needing more ballots than reverse.
  Profile base(CandidateSet{{"a", "b", "c"}});
  base.add_copies(LinearOrder({1, 2, 0}), 2);
  const ManipulationInstance inst = unweighted(VotingRule::kBorda, base, 0);
  const ManipulationResult r = heuristic_rev_eliminate(inst);
  CHECK(r.success);
  CHECK(r.ballots[0].ranking == std::vector<int>{0, 1, 2});
  CHECK(r.manipulators_used >= heuristic_reverse(inst).manipulators_used);
}

TEST_CASE("heuristic counts never beat the exact optimum") {
  for (std::uint64_t seed = 0; seed < 12; ++seed) {
    for (VotingRule rule :
         {VotingRule::kBorda, VotingRule::kNanson, VotingRule::kBaldwin}) {
      const ManipulationInstance inst = random_instance(rule, 4, 5, 900 + seed);
      long long best = -1;
      for (Heuristic h : kAllHeuristics) {
        const ManipulationResult r = minimize_manipulators(inst, h);
        REQUIRE(r.success);
        if (best < 0 || r.manipulators_used < best) best = r.manipulators_used;
      }
      const OracleOutcome oracle = brute_force_optimal_unweighted(inst, best);
      REQUIRE(oracle.found());
      CHECK(oracle.result.manipulators_used <= best);
    }
  }
}

TEST_CASE("borda reverse needs at most one manipulator over the optimum") {
  for (std::uint64_t seed = 0; seed < 25; ++seed) {
    const ManipulationInstance inst =
        random_instance(VotingRule::kBorda, 5, 5, 32000 + seed);
    const ManipulationResult rev = heuristic_reverse(inst);
    REQUIRE(rev.success);
    const OracleOutcome oracle =
        brute_force_optimal_unweighted(inst, rev.manipulators_used);
    REQUIRE(oracle.found());
    CHECK(rev.manipulators_used - oracle.result.manipulators_used <= 1);
    CHECK(rev.manipulators_used >= oracle.result.manipulators_used);
  }
}

TEST_CASE("reverse stalls by a linear factor on the pathology family") {
  // 36 identical ballots (p first, then the fixed order) already win for
  // n=2, but the reverse heuristic needs at least 38 ballots.
  const ManipulationInstance inst = reverse_pathology_instance(2);
  const int m = inst.base.num_candidates();
  REQUIRE(m == 7);

  std::vector<int> straight{inst.preferred};
  for (int c = 0; c < m - 1; ++c) straight.push_back(c);
  const std::vector<LinearOrder> witness(36, LinearOrder{straight});
  CHECK(evaluate(inst, witness));

  const ManipulationResult rev = heuristic_reverse(inst);
  CHECK(rev.success);
  CHECK(rev.manipulators_used >= 38);
}

TEST_CASE("weights are refused by the unweighted heuristics") {
  Profile base(CandidateSet{{"a", "b"}});
  base.add_ballot(LinearOrder({1, 0}));
  ManipulationInstance inst = unweighted(VotingRule::kBorda, base, 0);
  inst.weights = {Rational(3)};
  for (Heuristic h : kAllHeuristics) {
    CHECK_THROWS_AS(minimize_manipulators(inst, h), std::invalid_argument);
  }
}
