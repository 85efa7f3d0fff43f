#pragma once

#include <cstdint>
#include <optional>
#include <span>

#include "banditsim/arm_memory.hpp"
#include "banditsim/errors.hpp"
#include "banditsim/policies.hpp"
#include "banditsim/regret.hpp"
#include "banditsim/rng.hpp"
#include "banditsim/types.hpp"

namespace banditsim {

// Everything one replicate owns: the reward source, its regret ledger, its
// rng stream and the regret reference values. Source must expose
// pull(ArmId, Rng&) and true_mean(ArmId).
template <typename Source>
struct SimRun {
  Source& source;
  RegretLedger& ledger;
  Rng& rng;
  double mu_star;
  std::optional<double> mu_rho;
  PullLog* pull_log = nullptr;

  double pull_and_record(ArmId arm) {
    const double reward = source.pull(arm, rng);
    record_pull(ledger, source.true_mean(arm), mu_star, mu_rho);
    if (pull_log != nullptr) pull_log->push_back(PullEvent{arm, reward});
    return reward;
  }
};

// One allocation/recommendation forecaster invocation: load `arms` into the
// store with fresh statistics, pull `budget` times under the allocation
// policy, and recommend the most played arm. The time index t passed to the
// allocation score is the number of pulls already made in this invocation.
// A budget below the arm count just round-robins in id order; budget 0
// recommends the lowest id.
template <typename Source>
ArmId run_forecaster(BoundedArmMemory& memory, std::span<const ArmId> arms,
                     std::uint64_t budget, const Policy& policy, SimRun<Source>& run) {
  if (arms.empty()) throw EmptyMemoryError("run_forecaster: no arms given");
  memory.reset_to(arms);
  const BudgetContext ctx{budget, arms.size()};
  for (std::uint64_t n = 0; n < budget; ++n) {
    const ArmId arm = allocate(memory, /*t=*/n, policy, ctx, run.rng);
    const double reward = run.pull_and_record(arm);
    memory.stats(arm).add_reward(reward);
  }
  return most_played(memory);
}

// Convenience wrapper that owns a store sized to the arm set.
template <typename Source>
ArmId run_forecaster(std::span<const ArmId> arms, std::uint64_t budget, const Policy& policy,
                     Source& source, RegretLedger& ledger, double mu_star, Rng& rng,
                     PullLog* pull_log = nullptr) {
  SimRun<Source> run{source, ledger, rng, mu_star, std::nullopt, pull_log};
  BoundedArmMemory memory(arms.empty() ? 1 : arms.size());
  return run_forecaster(memory, arms, budget, policy, run);
}

}  // namespace banditsim
