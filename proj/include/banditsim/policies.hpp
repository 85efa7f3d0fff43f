#pragma once

#include <cmath>
#include <cstdint>
#include <limits>

#include "banditsim/arm_memory.hpp"
#include "banditsim/errors.hpp"
#include "banditsim/rng.hpp"
#include "banditsim/types.hpp"

namespace banditsim {

enum class PolicyKind { Ucb1, Moss, Thompson };

// Allocation strategy tag. eta scales the UCB1 exploration bonus and is
// ignored by the other two strategies.
struct Policy {
  PolicyKind kind = PolicyKind::Ucb1;
  double eta = 1.0;

  static Policy ucb1(double eta = 1.0) {
    if (!(eta > 0.0)) throw InvalidParameterError("ucb1 eta must be positive");
    return Policy{PolicyKind::Ucb1, eta};
  }
  static Policy moss() { return Policy{PolicyKind::Moss, 1.0}; }
  static Policy thompson() { return Policy{PolicyKind::Thompson, 1.0}; }
};

// UCB1 score mu_hat + eta * sqrt(2 ln(t) / u), with t the number of pulls
// made so far in the current forecaster invocation. Unpulled arms score
// +infinity so they are sampled before any index comparison matters.
inline double ucb_index(const ArmStats& stats, std::uint64_t t, double eta) {
  if (stats.pulls == 0) return std::numeric_limits<double>::infinity();
  if (t < 1) throw InvalidParameterError("ucb_index needs t >= 1");
  const double bonus =
      eta * std::sqrt(2.0 * std::log(static_cast<double>(t)) / static_cast<double>(stats.pulls));
  return stats.empirical_mean() + bonus;
}

// MOSS score mu_hat + sqrt(max(0, ln(T / (K u))) / u) with T the budget of
// the current invocation and K its arm count.
inline double moss_index(const ArmStats& stats, std::uint64_t budget, std::size_t n_arms) {
  if (stats.pulls == 0) return std::numeric_limits<double>::infinity();
  if (n_arms < 1) throw InvalidParameterError("moss_index needs at least one arm");
  const double u = static_cast<double>(stats.pulls);
  const double ratio = static_cast<double>(budget) / (static_cast<double>(n_arms) * u);
  const double bonus = std::sqrt(std::max(0.0, std::log(ratio)) / u);
  return stats.empirical_mean() + bonus;
}

// One draw from the Beta(successes + 1, failures + 1) posterior.
inline double thompson_draw(const ArmStats& stats, Rng& rng) {
  return rng.beta(static_cast<double>(stats.successes) + 1.0,
                  static_cast<double>(stats.failures) + 1.0);
}

struct BudgetContext {
  std::uint64_t budget = 0;    // pulls granted to the current invocation
  std::size_t n_arms = 0;      // arms in the current invocation
};

// Pick the next arm to pull: unpulled arms first in ascending id order, then
// the policy's argmax, ties to the lowest id. Only Thompson consumes rng.
inline ArmId allocate(const BoundedArmMemory& memory, std::uint64_t t, const Policy& policy,
                      const BudgetContext& ctx, Rng& rng) {
  if (memory.empty()) throw EmptyMemoryError("allocate: arm memory is empty");
  for (const ArmStats& s : memory.slots()) {
    if (s.pulls == 0) return s.arm;
  }
  ArmId best = 0;
  double best_score = -std::numeric_limits<double>::infinity();
  for (const ArmStats& s : memory.slots()) {
    double score = 0.0;
    switch (policy.kind) {
      case PolicyKind::Ucb1:
        score = ucb_index(s, t, policy.eta);
        break;
      case PolicyKind::Moss:
        score = moss_index(s, ctx.budget, ctx.n_arms);
        break;
      case PolicyKind::Thompson:
        score = thompson_draw(s, rng);
        break;
    }
    if (score > best_score) {  // strict: slots are id-ascending, ties keep the lowest
      best_score = score;
      best = s.arm;
    }
  }
  return best;
}

// Recommendation strategy: the most played arm, ties to the lowest id.
inline ArmId most_played(const BoundedArmMemory& memory) {
  if (memory.empty()) throw EmptyMemoryError("most_played: arm memory is empty");
  const ArmStats* best = nullptr;
  for (const ArmStats& s : memory.slots()) {
    if (best == nullptr || s.pulls > best->pulls) best = &s;
  }
  return best->arm;
}

}  // namespace banditsim
