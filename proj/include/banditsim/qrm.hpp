#pragma once

#include <cmath>
#include <cstdint>
#include <optional>
#include <vector>

#include "banditsim/errors.hpp"
#include "banditsim/reservoir.hpp"
#include "banditsim/ucbm.hpp"

namespace banditsim {

struct QrmScheduleEntry {
  std::uint64_t base_horizon = 0;  // B = ceil((M^2 (M+2))^(1/(1-alpha)))
  std::uint64_t round_horizon = 0; // t_r = 2^r B
  std::uint64_t arm_target = 0;    // n_r = ceil(t_r^alpha)
};

// Round schedule of the meta-algorithm. B is evaluated in full double
// precision and then ceiled to an integer pull count; t_r and n_r build on
// the ceiled value.
inline QrmScheduleEntry qrm_schedule(double alpha, std::size_t memory_size, int round) {
  if (!(alpha > 0.0) || !(alpha < 1.0)) {
    throw InvalidParameterError("qrm_schedule needs alpha in (0,1)");
  }
  if (memory_size < 2) throw UnsupportedCapacityError("qrm_schedule needs M >= 2");
  if (round < 1) throw InvalidParameterError("qrm_schedule needs round >= 1");
  const double m = static_cast<double>(memory_size);
  const double base_real = std::pow(m * m * (m + 2.0), 1.0 / (1.0 - alpha));
  QrmScheduleEntry entry;
  entry.base_horizon = static_cast<std::uint64_t>(std::ceil(base_real));
  entry.round_horizon = entry.base_horizon << round;
  entry.arm_target =
      static_cast<std::uint64_t>(std::ceil(std::pow(static_cast<double>(entry.round_horizon), alpha)));
  return entry;
}

struct RoundRecord {
  int round = 0;
  std::uint64_t round_horizon = 0;   // scheduled t_r
  std::uint64_t pulls = 0;           // granted, min(t_r, remaining)
  std::uint64_t arm_target = 0;      // n_r
  std::vector<ArmId> new_arms;       // ids sampled for this round
  double regret_star_end = 0.0;
  bool unconstrained = false;        // n_r <= M: the round ran the plain policy
};

struct QrmResult {
  std::vector<RoundRecord> rounds;
  std::size_t max_memory_slots = 0;
};

// Quantile-regret meta-algorithm over an infinite reservoir: round r samples
// arms up to n_r = ceil(t_r^alpha), then runs the bounded-memory engine from
// scratch on the accumulated set for min(t_r, remaining) pulls. Only the arm
// ids carry over between rounds; all statistics reset.
inline QrmResult run_qrm(ArmReservoir& reservoir, std::size_t memory_size, double alpha,
                         const Policy& policy, std::uint64_t horizon, RegretLedger& ledger,
                         Rng& rng, std::optional<double> mu_rho = std::nullopt,
                         UcbmTrace* subphase_trace = nullptr, PullLog* pull_log = nullptr) {
  if (memory_size < 2) throw UnsupportedCapacityError("run_qrm needs arm memory M >= 2");
  if (!(alpha > 0.0) || !(alpha < 1.0)) {
    throw InvalidParameterError("run_qrm needs alpha in (0,1)");
  }
  if (horizon < 1) throw InvalidParameterError("run_qrm needs horizon >= 1");

  SimRun<ArmReservoir> run{reservoir, ledger, rng, reservoir.mu_star(), mu_rho, pull_log};
  QrmResult result;
  std::vector<ArmId> arm_set;
  std::uint64_t remaining = horizon;
  for (int round = 1; remaining > 0; ++round) {
    const QrmScheduleEntry entry = qrm_schedule(alpha, memory_size, round);
    RoundRecord record;
    record.round = round;
    record.round_horizon = entry.round_horizon;
    record.arm_target = entry.arm_target;
    while (arm_set.size() < entry.arm_target) {
      const ArmId fresh = sample_arm(reservoir, rng);
      arm_set.push_back(fresh);
      record.new_arms.push_back(fresh);
    }
    const std::uint64_t budget = std::min(entry.round_horizon, remaining);
    const UcbmResult round_result =
        run_ucbm(run, arm_set, memory_size, policy, budget, subphase_trace);
    remaining -= budget;
    record.pulls = budget;
    record.regret_star_end = ledger.regret_star();
    record.unconstrained = round_result.unconstrained;
    result.max_memory_slots = std::max(result.max_memory_slots, round_result.max_memory_slots);
    result.rounds.push_back(std::move(record));
  }
  return result;
}

}  // namespace banditsim
