#pragma once

#include <array>
#include <optional>
#include <vector>

#include "json.hpp"

#include "elimvote/manipulation.hpp"
#include "elimvote/profile.hpp"

namespace elimvote {

/// Exact-3-cover input: ground set {0..q-1} and a family of 3-element
/// subsets. Construction validates each triple (distinct, in range).
struct X3CInstance {
  int q = 0;
  std::vector<std::array<int, 3>> sets;

  X3CInstance(int q_, std::vector<std::array<int, 3>> sets_);
  int t() const { return static_cast<int>(sets.size()); }
};

/// Positive integers with an even total; K is half the sum. Construction
/// rejects nonpositive entries and odd sums.
struct PartitionInstance {
  std::vector<long long> integers;
  long long K = 0;

  explicit PartitionInstance(std::vector<long long> integers_);
  int l() const { return static_cast<int>(integers.size()); }
};

struct GadgetVotePair {
  LinearOrder first;
  LinearOrder second;
};

/// {u > v > Others, rev(Others) > u > v} with Others in index order. The
/// pair hands u one more point than any third candidate and v one less.
GadgetVotePair gadget_W(int u, int v, const CandidateSet& candidates);

/// Like gadget_W but with candidate p pinned to last place in both votes
/// (p excluded from Others).
GadgetVotePair gadget_R(int u, int v, int p, const CandidateSet& candidates);

/// Baldwin single-manipulator instance over candidates c,d,b,v1..vq,a1..at
/// (m = q+t+3, preferred c). The base profile is tuned so that
/// s(v_i)-s(c) = m, s(a_j)-s(c) = 1 and s(b)-s(c) = m*q hold exactly; the
/// balancing gadget counts are derived from measured first-phase scores
/// rather than closed forms. Requires t >= 2.
ManipulationInstance x3c_to_baldwin(const X3CInstance& x3c);

/// The manipulator ballot built from an exact cover (validated): c, d, the
/// non-cover set candidates ascending, b, all ground candidates ascending,
/// then the cover set candidates ascending.
LinearOrder x3c_witness_vote(const X3CInstance& x3c, const std::vector<int>& cover);

/// Weighted Nanson instance over candidates a,b,c,p (preferred p) whose
/// base scores are exactly 14K+18, 17K+18, 17K+18, 12K+18; manipulator
/// weights are the partition integers.
ManipulationInstance partition_to_nanson(const PartitionInstance& partition);

/// Witness ballots from one partition side (indices into the integers,
/// summing to K): that side votes p>a>b>c, the rest p>a>c>b.
std::vector<LinearOrder> partition_witness_votes(const PartitionInstance& partition,
                                                 const std::vector<int>& side);

/// Baldwin instance over a..f,p (preferred p) with 42n base votes scoring
/// s(a)=s(f)=138n, s(b..e)=141n, s(p)=42n; 18n identical manipulators
/// suffice but the reverse heuristic needs at least 19n.
ManipulationInstance reverse_pathology_instance(long long n);

/// Exhaustive exact-cover search (intended for t <= ~20); returns sorted
/// set indices or nothing.
std::optional<std::vector<int>> x3c_solve_small(const X3CInstance& x3c);

/// Subset-sum to K by dynamic programming; returns indices of one side or
/// nothing.
std::optional<std::vector<int>> partition_solve_small(const PartitionInstance& partition);

/// Exact comparison of a constructed instance's base scores against the
/// published closed forms, as consumed by `reduce --check` and the tests.
struct IdentityReport {
  bool all_hold = true;
  nlohmann::ordered_json details;  // identity label -> {"expected", "actual"}
};

IdentityReport check_x3c_identities(const X3CInstance& x3c,
                                    const ManipulationInstance& instance);
IdentityReport check_partition_identities(const PartitionInstance& partition,
                                          const ManipulationInstance& instance);
IdentityReport check_pathology_identities(long long n,
                                          const ManipulationInstance& instance);

}  // namespace elimvote
