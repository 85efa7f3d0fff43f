#pragma once

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <span>
#include <string>
#include <vector>

#include "banditsim/errors.hpp"
#include "banditsim/forecaster.hpp"
#include "banditsim/instance.hpp"
#include "banditsim/theory.hpp"
#include "banditsim/types.hpp"

namespace banditsim {

// Budget of each sub-phase in phase w: 2^(w-1) * M(M+2).
inline std::uint64_t subphase_budget(std::uint64_t phase, std::uint64_t memory) {
  if (phase < 1) throw InvalidParameterError("subphase_budget needs phase >= 1");
  const std::uint64_t first = memory * (memory + 2);
  return first << (phase - 1);
}

struct SubphaseWindow {
  std::vector<std::size_t> members;  // 1-based positions, ascending
  std::size_t next_start = 0;        // the l value for the following window
};

// Window of the next sub-phase over positions 1..K: take the M positions
// after l (capped at K), then make room for the carried recommendation if it
// is not already present by dropping the highest fresh position.
inline SubphaseWindow subphase_window(std::size_t l, std::size_t carried, std::size_t num_arms,
                                      std::size_t memory) {
  if (memory < 2 || memory >= num_arms) {
    throw InvalidParameterError("subphase_window needs 2 <= M < K");
  }
  if (carried < 1 || carried > num_arms) {
    throw InvalidParameterError("subphase_window: carried recommendation out of range");
  }
  if (l >= num_arms) {
    throw ScheduleExhaustedError("subphase_window: every arm position is consumed");
  }
  SubphaseWindow window;
  const std::size_t hi = std::min(l + memory, num_arms);
  for (std::size_t p = l + 1; p <= hi; ++p) window.members.push_back(p);
  window.next_start = hi;
  const bool has_carried =
      std::find(window.members.begin(), window.members.end(), carried) != window.members.end();
  if (!has_carried) {
    window.members.pop_back();  // drop the highest position
    window.members.insert(
        std::lower_bound(window.members.begin(), window.members.end(), carried), carried);
    window.next_start -= 1;
  }
  return window;
}

struct SubphaseRecord {
  int phase = 0;
  int subphase = 0;
  std::vector<ArmId> window;          // original arm ids, in window order
  std::uint64_t budget = 0;           // pulls actually granted
  std::vector<std::uint64_t> pulls;   // aligned with window
  ArmId recommended = 0;
};

struct UcbmTrace {
  std::vector<SubphaseRecord> subphases;
};

struct UcbmResult {
  bool unconstrained = false;
  int phases_started = 0;
  std::size_t max_memory_slots = 0;
};

// The phase/sub-phase engine. Shuffles the arm order once, then sweeps
// windows of M arms per sub-phase, carrying the most played arm of each
// window into the next. Budgets double at every phase boundary. With M >= K
// the constraint is vacuous and the plain policy runs on all arms instead.
// Exactly `horizon` pulls are recorded either way.
template <typename Source>
UcbmResult run_ucbm(SimRun<Source>& run, std::span<const ArmId> arms, std::size_t memory_size,
                    const Policy& policy, std::uint64_t horizon, UcbmTrace* trace = nullptr) {
  const std::size_t num_arms = arms.size();
  if (num_arms < 2) throw InvalidInstanceError("run_ucbm needs at least 2 arms");
  if (memory_size < 2) throw UnsupportedCapacityError("run_ucbm needs arm memory M >= 2");
  if (policy.kind == PolicyKind::Ucb1 && !(policy.eta > 0.0)) {
    throw InvalidParameterError("run_ucbm: ucb1 eta must be positive");
  }

  UcbmResult result;
  if (memory_size >= num_arms) {
    result.unconstrained = true;
    BoundedArmMemory memory(num_arms);
    run_forecaster(memory, arms, horizon, policy, run);
    result.max_memory_slots = memory.high_water();
    return result;
  }

  // perm[p-1] indexes `arms`; windows live in position space, pulls and
  // traces use the original ids.
  std::vector<std::size_t> perm(num_arms);
  std::iota(perm.begin(), perm.end(), std::size_t{0});
  shuffle(perm, run.rng);

  BoundedArmMemory memory(memory_size);
  const std::uint64_t subphases_per_phase = subphase_count(num_arms, memory_size);
  std::uint64_t remaining = horizon;
  std::uint64_t budget_per_subphase = subphase_budget(1, memory_size);
  std::size_t carried_pos = 1;
  int phase = 0;
  std::vector<ArmId> window_ids;

  while (remaining > 0) {
    phase += 1;
    std::size_t l = 0;
    for (std::uint64_t j = 1; j <= subphases_per_phase && remaining > 0; ++j) {
      const SubphaseWindow window = subphase_window(l, carried_pos, num_arms, memory_size);
      l = window.next_start;
      window_ids.clear();
      for (std::size_t pos : window.members) window_ids.push_back(arms[perm[pos - 1]]);

      const std::uint64_t budget = std::min(budget_per_subphase, remaining);
      const ArmId recommended = run_forecaster(memory, window_ids, budget, policy, run);
      remaining -= budget;

      for (std::size_t i = 0; i < window_ids.size(); ++i) {
        if (window_ids[i] == recommended) {
          carried_pos = window.members[i];
          break;
        }
      }
      if (trace != nullptr) {
        SubphaseRecord record;
        record.phase = phase;
        record.subphase = static_cast<int>(j);
        record.window = window_ids;
        record.budget = budget;
        record.pulls.reserve(window_ids.size());
        for (ArmId id : window_ids) record.pulls.push_back(memory.stats(id).pulls);
        record.recommended = recommended;
        trace->subphases.push_back(std::move(record));
      }
    }
    budget_per_subphase *= 2;
  }
  result.phases_started = phase;
  result.max_memory_slots = memory.high_water();
  return result;
}

// Spec entry point for finite instances.
inline UcbmResult run_ucbm(const FiniteInstance& instance, std::size_t memory_size,
                           const Policy& policy, std::uint64_t horizon, RegretLedger& ledger,
                           Rng& rng, UcbmTrace* trace = nullptr, PullLog* pull_log = nullptr) {
  SimRun<const FiniteInstance> run{instance, ledger, rng, instance.mu_star(), std::nullopt,
                                   pull_log};
  const std::vector<ArmId> ids = instance.arm_ids();
  return run_ucbm(run, ids, memory_size, policy, horizon, trace);
}

}  // namespace banditsim
