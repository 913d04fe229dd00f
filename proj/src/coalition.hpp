#pragma once

// Shared internals for the manipulation heuristics: a mutable
// base-plus-coalition election that accepts unit-weight ballots pushed and
// popped against the scaled base profile.

#include <vector>

#include "elimvote/manipulation.hpp"
#include "engine.hpp"

namespace elimvote::detail {

engine::Rule to_engine_rule(VotingRule rule);

class Coalition {
 public:
  explicit Coalition(const ManipulationInstance& instance);

  int m() const { return work_.m; }
  int preferred() const { return preferred_; }
  long long unit() const { return unit_; }
  const std::vector<int>& priority() const { return priority_; }
  long long pushed() const { return pushed_; }

  void push(const std::vector<int>& ranking);
  void pop();

  engine::ElectionResult run() const { return engine::run_election(work_, rule_, priority_); }
  int winner() const { return run().winner; }
  bool preferred_wins() const { return winner() == preferred_; }
  /// Scaled Borda scores of the full candidate set, base + pushed ballots.
  std::vector<long long> scores() const { return engine::full_scores(work_); }

 private:
  engine::ScaledProfile work_;
  std::vector<int> priority_;
  engine::Rule rule_;
  long long unit_ = 1;
  long long pushed_ = 0;
  int preferred_ = 0;
};

/// Hard stop for the iterative heuristics: 50 x (total base weight + 1).
/// The loops provably terminate long before this; hitting it means a bug.
long long iteration_cap(const Profile& base);

/// Validates common instance preconditions; unweighted ops additionally
/// reject weighted instances.
void require_unweighted(const ManipulationInstance& instance, const char* op);
void validate_instance(const ManipulationInstance& instance);

}  // namespace elimvote::detail
