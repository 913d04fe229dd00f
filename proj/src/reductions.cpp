#include "elimvote/reductions.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

#include "elimvote/scoring.hpp"

namespace elimvote {

namespace {

long long integral(const Rational& r, const char* what) {
  if (!r.is_integer()) {
    throw std::logic_error(std::string(what) + " is not an integer: " + r.to_string());
  }
  return r.num();
}

void add_pair(Profile& profile, const GadgetVotePair& pair, long long copies) {
  if (copies == 0) return;
  profile.add_copies(pair.first, copies);
  profile.add_copies(pair.second, copies);
}

nlohmann::ordered_json identity_entry(long long expected, long long actual) {
  return nlohmann::ordered_json{{"expected", expected}, {"actual", actual}};
}

void record(IdentityReport& report, const std::string& label, long long expected,
            long long actual) {
  report.details[label] = identity_entry(expected, actual);
  if (expected != actual) report.all_hold = false;
}

}  // namespace

X3CInstance::X3CInstance(int q_, std::vector<std::array<int, 3>> sets_)
    : q(q_), sets(std::move(sets_)) {
  if (q < 1) throw std::invalid_argument("ground set must be non-empty");
  for (const auto& set : sets) {
    for (int v : set) {
      if (v < 0 || v >= q) throw std::invalid_argument("set element out of range");
    }
    if (set[0] == set[1] || set[0] == set[2] || set[1] == set[2]) {
      throw std::invalid_argument("sets must contain three distinct elements");
    }
  }
}

PartitionInstance::PartitionInstance(std::vector<long long> integers_)
    : integers(std::move(integers_)) {
  long long sum = 0;
  for (long long k : integers) {
    if (k <= 0) throw std::invalid_argument("partition integers must be positive");
    sum += k;
  }
  if (sum % 2 != 0) throw std::invalid_argument("partition integers must have even sum");
  K = sum / 2;
}

GadgetVotePair gadget_W(int u, int v, const CandidateSet& candidates) {
  const int m = candidates.size();
  if (u == v) throw std::invalid_argument("gadget endpoints must differ");
  if (u < 0 || u >= m || v < 0 || v >= m) {
    throw std::invalid_argument("gadget endpoint out of range");
  }
  std::vector<int> others;
  for (int x = 0; x < m; ++x) {
    if (x != u && x != v) others.push_back(x);
  }
  std::vector<int> first{u, v};
  first.insert(first.end(), others.begin(), others.end());
  std::vector<int> second(others.rbegin(), others.rend());
  second.push_back(u);
  second.push_back(v);
  return GadgetVotePair{LinearOrder{std::move(first)}, LinearOrder{std::move(second)}};
}

GadgetVotePair gadget_R(int u, int v, int p, const CandidateSet& candidates) {
  const int m = candidates.size();
  if (u == v || u == p || v == p) throw std::invalid_argument("gadget endpoints must differ");
  if (u < 0 || u >= m || v < 0 || v >= m || p < 0 || p >= m) {
    throw std::invalid_argument("gadget endpoint out of range");
  }
  std::vector<int> others;
  for (int x = 0; x < m; ++x) {
    if (x != u && x != v && x != p) others.push_back(x);
  }
  std::vector<int> first{u, v};
  first.insert(first.end(), others.begin(), others.end());
  first.push_back(p);
  std::vector<int> second(others.rbegin(), others.rend());
  second.push_back(u);
  second.push_back(v);
  second.push_back(p);
  return GadgetVotePair{LinearOrder{std::move(first)}, LinearOrder{std::move(second)}};
}

ManipulationInstance x3c_to_baldwin(const X3CInstance& x3c) {
  const int q = x3c.q;
  const int t = x3c.t();
  if (t < 2) throw std::invalid_argument("reduction requires at least two sets");
  const int m = q + t + 3;

  std::vector<std::string> names{"c", "d", "b"};
  for (int i = 1; i <= q; ++i) names.push_back("v" + std::to_string(i));
  for (int j = 1; j <= t; ++j) names.push_back("a" + std::to_string(j));
  Profile base((CandidateSet{std::move(names)}));
  const CandidateSet& cands = base.candidates();
  const int c = 0, d = 1, b = 2;
  const auto v_idx = [&](int i) { return 3 + i; };
  const auto a_idx = [&](int j) { return 3 + q + j; };

  // Phase one: raise the ground-set and set candidates against c.
  for (int j = 0; j < t; ++j) {
    for (int v : x3c.sets[static_cast<std::size_t>(j)]) {
      add_pair(base, gadget_W(v_idx(v), a_idx(j), cands), 2 * m);
    }
  }
  for (int i = 0; i < q; ++i) {
    add_pair(base, gadget_W(b, v_idx(i), cands), m);
  }
  add_pair(base, gadget_W(b, c, cands), static_cast<long long>(m) * (t + 6));

  // Phase two: balance every gap down to its target using d, with copy
  // counts read off the measured scores so the identities hold exactly.
  const ScoreTable s1 = borda_scores(base);
  const long long s1c = integral(s1[static_cast<std::size_t>(c)], "phase-one score");
  const auto gap = [&](int x) {
    return integral(s1[static_cast<std::size_t>(x)], "phase-one score") - s1c;
  };
  for (int i = 0; i < q; ++i) {
    const long long copies = gap(v_idx(i)) - m;
    if (copies < 0) throw std::logic_error("negative balancing count for ground candidate");
    add_pair(base, gadget_W(d, v_idx(i), cands), copies);
  }
  for (int j = 0; j < t; ++j) {
    const long long copies = gap(a_idx(j)) - 1;
    if (copies < 0) throw std::logic_error("negative balancing count for set candidate");
    add_pair(base, gadget_W(d, a_idx(j), cands), copies);
  }
  const long long b_copies = gap(b) - static_cast<long long>(m) * q;
  if (b_copies < 0) throw std::logic_error("negative balancing count for blocker");
  add_pair(base, gadget_W(d, b, cands), b_copies);

  ManipulationInstance instance;
  instance.rule = VotingRule::kBaldwin;
  instance.base = std::move(base);
  instance.preferred = c;
  return instance;
}

LinearOrder x3c_witness_vote(const X3CInstance& x3c, const std::vector<int>& cover) {
  const int q = x3c.q;
  const int t = x3c.t();
  if (q % 3 != 0) throw std::invalid_argument("ground set size is not a multiple of 3");

  std::vector<char> in_cover(static_cast<std::size_t>(t), 0);
  std::vector<char> covered(static_cast<std::size_t>(q), 0);
  for (int j : cover) {
    if (j < 0 || j >= t) throw std::invalid_argument("cover set index out of range");
    if (in_cover[static_cast<std::size_t>(j)]) {
      throw std::invalid_argument("cover repeats a set");
    }
    in_cover[static_cast<std::size_t>(j)] = 1;
    for (int v : x3c.sets[static_cast<std::size_t>(j)]) {
      if (covered[static_cast<std::size_t>(v)]) {
        throw std::invalid_argument("cover sets are not disjoint");
      }
      covered[static_cast<std::size_t>(v)] = 1;
    }
  }
  if (std::count(covered.begin(), covered.end(), 1) != q) {
    throw std::invalid_argument("cover does not cover the ground set");
  }

  std::vector<int> ranking{0, 1};  // c, d
  for (int j = 0; j < t; ++j) {
    if (!in_cover[static_cast<std::size_t>(j)]) ranking.push_back(3 + q + j);
  }
  ranking.push_back(2);  // b
  for (int i = 0; i < q; ++i) ranking.push_back(3 + i);
  for (int j = 0; j < t; ++j) {
    if (in_cover[static_cast<std::size_t>(j)]) ranking.push_back(3 + q + j);
  }
  return LinearOrder{std::move(ranking)};
}

ManipulationInstance partition_to_nanson(const PartitionInstance& partition) {
  const long long K = partition.K;
  Profile base((CandidateSet{{"a", "b", "c", "p"}}));
  const int a = 0, b = 1, c = 2, p = 3;

  const auto add = [&](std::initializer_list<int> ranking, long long copies) {
    base.add_copies(LinearOrder{std::vector<int>(ranking)}, copies);
  };
  add({b, p, c, a}, 2 * K + 1);
  add({a, c, b, p}, 2 * K + 1);
  add({c, p, b, a}, 2 * K + 1);
  add({a, b, c, p}, 2 * K + 1);
  add({p, a, b, c}, K + 2);
  add({c, b, p, a}, K + 2);
  add({a, b, p, c}, 1);
  add({c, p, a, b}, 1);
  add({a, c, p, b}, 1);
  add({b, p, a, c}, 1);

  ManipulationInstance instance;
  instance.rule = VotingRule::kNanson;
  instance.base = std::move(base);
  instance.preferred = p;
  for (long long k : partition.integers) instance.weights.emplace_back(k);
  return instance;
}

std::vector<LinearOrder> partition_witness_votes(const PartitionInstance& partition,
                                                 const std::vector<int>& side) {
  const int l = partition.l();
  std::vector<char> first_side(static_cast<std::size_t>(l), 0);
  long long side_sum = 0;
  for (int i : side) {
    if (i < 0 || i >= l) throw std::invalid_argument("side index out of range");
    if (first_side[static_cast<std::size_t>(i)]) {
      throw std::invalid_argument("side repeats an integer");
    }
    first_side[static_cast<std::size_t>(i)] = 1;
    side_sum += partition.integers[static_cast<std::size_t>(i)];
  }
  if (side_sum != partition.K) {
    throw std::invalid_argument("side does not sum to half the total");
  }

  const LinearOrder pabc{std::vector<int>{3, 0, 1, 2}};
  const LinearOrder pacb{std::vector<int>{3, 0, 2, 1}};
  std::vector<LinearOrder> ballots;
  ballots.reserve(static_cast<std::size_t>(l));
  for (int i = 0; i < l; ++i) {
    ballots.push_back(first_side[static_cast<std::size_t>(i)] ? pabc : pacb);
  }
  return ballots;
}

ManipulationInstance reverse_pathology_instance(long long n) {
  if (n < 1) throw std::invalid_argument("family parameter must be at least 1");
  Profile base((CandidateSet{{"a", "b", "c", "d", "e", "f", "p"}}));
  const CandidateSet& cands = base.candidates();
  const int p = 6;

  for (int u = 0; u + 1 <= 5; ++u) {
    add_pair(base, gadget_R(u, u + 1, p, cands), 3 * n);
  }
  base.add_copies(LinearOrder{std::vector<int>{6, 0, 1, 2, 3, 4, 5}}, 6 * n);
  base.add_copies(LinearOrder{std::vector<int>{5, 4, 3, 2, 1, 6, 0}}, 6 * n);

  ManipulationInstance instance;
  instance.rule = VotingRule::kBaldwin;
  instance.base = std::move(base);
  instance.preferred = p;
  return instance;
}

std::optional<std::vector<int>> x3c_solve_small(const X3CInstance& x3c) {
  if (x3c.q % 3 != 0) return std::nullopt;
  if (x3c.q > 60) throw std::invalid_argument("exact-cover search supports q <= 60");
  const int t = x3c.t();
  std::vector<std::uint64_t> masks(static_cast<std::size_t>(t), 0);
  for (int j = 0; j < t; ++j) {
    for (int v : x3c.sets[static_cast<std::size_t>(j)]) {
      masks[static_cast<std::size_t>(j)] |= 1ull << v;
    }
  }
  const std::uint64_t full = x3c.q == 64 ? ~0ull : (1ull << x3c.q) - 1;

  std::vector<int> chosen;
  const auto dfs = [&](auto&& self, std::uint64_t covered) -> bool {
    if (covered == full) return true;
    int v = 0;
    while ((covered >> v) & 1) ++v;  // first uncovered ground element
    for (int j = 0; j < t; ++j) {
      const std::uint64_t mask = masks[static_cast<std::size_t>(j)];
      if (!((mask >> v) & 1) || (mask & covered) != 0) continue;
      chosen.push_back(j);
      if (self(self, covered | mask)) return true;
      chosen.pop_back();
    }
    return false;
  };
  if (!dfs(dfs, 0)) return std::nullopt;
  std::sort(chosen.begin(), chosen.end());
  return chosen;
}

std::optional<std::vector<int>> partition_solve_small(const PartitionInstance& partition) {
  const int l = partition.l();
  const long long K = partition.K;
  // reachable[i][s]: some subset of the first i integers sums to s.
  std::vector<std::vector<char>> reachable(
      static_cast<std::size_t>(l) + 1,
      std::vector<char>(static_cast<std::size_t>(K) + 1, 0));
  reachable[0][0] = 1;
  for (int i = 1; i <= l; ++i) {
    const long long k = partition.integers[static_cast<std::size_t>(i - 1)];
    for (long long s = 0; s <= K; ++s) {
      reachable[static_cast<std::size_t>(i)][static_cast<std::size_t>(s)] =
          reachable[static_cast<std::size_t>(i - 1)][static_cast<std::size_t>(s)] ||
          (s >= k &&
           reachable[static_cast<std::size_t>(i - 1)][static_cast<std::size_t>(s - k)]);
    }
  }
  if (!reachable[static_cast<std::size_t>(l)][static_cast<std::size_t>(K)]) {
    return std::nullopt;
  }
  std::vector<int> side;
  long long s = K;
  for (int i = l; i >= 1; --i) {
    if (reachable[static_cast<std::size_t>(i - 1)][static_cast<std::size_t>(s)]) continue;
    side.push_back(i - 1);
    s -= partition.integers[static_cast<std::size_t>(i - 1)];
  }
  std::sort(side.begin(), side.end());
  return side;
}

IdentityReport check_x3c_identities(const X3CInstance& x3c,
                                    const ManipulationInstance& instance) {
  const int q = x3c.q;
  const int t = x3c.t();
  const long long m = q + t + 3;
  const ScoreTable scores = borda_scores(instance.base);
  const long long sc = integral(scores[0], "base score");

  IdentityReport report;
  for (int i = 0; i < q; ++i) {
    const long long actual = integral(scores[static_cast<std::size_t>(3 + i)], "base score") - sc;
    record(report, "s(v" + std::to_string(i + 1) + ")-s(c)", m, actual);
  }
  for (int j = 0; j < t; ++j) {
    const long long actual =
        integral(scores[static_cast<std::size_t>(3 + q + j)], "base score") - sc;
    record(report, "s(a" + std::to_string(j + 1) + ")-s(c)", 1, actual);
  }
  record(report, "s(b)-s(c)", m * q, integral(scores[2], "base score") - sc);
  return report;
}

IdentityReport check_partition_identities(const PartitionInstance& partition,
                                          const ManipulationInstance& instance) {
  const long long K = partition.K;
  const ScoreTable scores = borda_scores(instance.base);
  IdentityReport report;
  record(report, "s(a)", 14 * K + 18, integral(scores[0], "base score"));
  record(report, "s(b)", 17 * K + 18, integral(scores[1], "base score"));
  record(report, "s(c)", 17 * K + 18, integral(scores[2], "base score"));
  record(report, "s(p)", 12 * K + 18, integral(scores[3], "base score"));
  return report;
}

IdentityReport check_pathology_identities(long long n,
                                          const ManipulationInstance& instance) {
  const ScoreTable scores = borda_scores(instance.base);
  IdentityReport report;
  record(report, "s(a)", 138 * n, integral(scores[0], "base score"));
  for (int x = 1; x <= 4; ++x) {
    const std::string name(1, static_cast<char>('a' + x));
    record(report, "s(" + name + ")", 141 * n,
           integral(scores[static_cast<std::size_t>(x)], "base score"));
  }
  record(report, "s(f)", 138 * n, integral(scores[5], "base score"));
  record(report, "s(p)", 42 * n, integral(scores[6], "base score"));
  return report;
}

}  // namespace elimvote
