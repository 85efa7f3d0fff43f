#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "banditsim/errors.hpp"
#include "banditsim/types.hpp"

namespace banditsim {

// Per-arm sufficient statistics. Rewards are Bernoulli, so reward_sum equals
// the success count; both are kept because the posterior draw wants counts
// and the index policies want the running mean.
struct ArmStats {
  ArmId arm = 0;
  std::uint64_t pulls = 0;
  double reward_sum = 0.0;
  std::uint64_t successes = 0;
  std::uint64_t failures = 0;

  double empirical_mean() const { return reward_sum / static_cast<double>(pulls); }

  void add_reward(double reward) {
    pulls += 1;
    reward_sum += reward;
    if (reward >= 0.5) {
      successes += 1;
    } else {
      failures += 1;
    }
  }
};

// The capacity-enforced arm memory: at most `capacity` ArmStats slots exist
// at any time, and an arm can only be pulled while it occupies a slot.
// Growing past capacity requires an explicit replace. The high-water mark is
// kept so a full run can prove it never held more than M slots.
class BoundedArmMemory {
 public:
  explicit BoundedArmMemory(std::size_t capacity) : capacity_(capacity) {
    if (capacity == 0) throw UnsupportedCapacityError("arm memory capacity must be >= 1");
    slots_.reserve(capacity);
  }

  std::size_t capacity() const { return capacity_; }
  std::size_t size() const { return slots_.size(); }
  bool empty() const { return slots_.empty(); }
  std::size_t high_water() const { return high_water_; }

  // Slots in ascending ArmId order; iteration order is the tie-break order.
  std::span<const ArmStats> slots() const { return slots_; }

  bool contains(ArmId arm) const { return find(arm) != slots_.end(); }

  ArmStats& stats(ArmId arm) {
    auto it = find(arm);
    if (it == slots_.end()) {
      throw MissingArmError("arm " + std::to_string(arm) + " is not in memory");
    }
    return *it;
  }

  const ArmStats& stats(ArmId arm) const {
    return const_cast<BoundedArmMemory*>(this)->stats(arm);
  }

  void insert(ArmId arm) {
    if (slots_.size() >= capacity_) {
      throw CapacityError("arm memory is full (capacity " + std::to_string(capacity_) +
                          "); evict before inserting arm " + std::to_string(arm));
    }
    auto it = lower_bound(arm);
    if (it != slots_.end() && it->arm == arm) {
      throw CapacityError("arm " + std::to_string(arm) + " already occupies a slot");
    }
    slots_.insert(it, ArmStats{arm});
    high_water_ = std::max(high_water_, slots_.size());
  }

  void replace(ArmId evict, ArmId incoming) {
    auto it = find(evict);
    if (it == slots_.end()) {
      throw MissingArmError("cannot evict arm " + std::to_string(evict) + ": not in memory");
    }
    slots_.erase(it);
    insert(incoming);
  }

  void erase(ArmId arm) {
    auto it = find(arm);
    if (it == slots_.end()) {
      throw MissingArmError("cannot erase arm " + std::to_string(arm) + ": not in memory");
    }
    slots_.erase(it);
  }

  void clear() { slots_.clear(); }

  // Drop everything and load `arms` with zeroed statistics.
  void reset_to(std::span<const ArmId> arms) {
    if (arms.size() > capacity_) {
      throw CapacityError("cannot hold " + std::to_string(arms.size()) + " arms in " +
                          std::to_string(capacity_) + " slots");
    }
    slots_.clear();
    for (ArmId arm : arms) insert(arm);
  }

 private:
  std::vector<ArmStats>::iterator lower_bound(ArmId arm) {
    return std::lower_bound(slots_.begin(), slots_.end(), arm,
                            [](const ArmStats& s, ArmId id) { return s.arm < id; });
  }

  std::vector<ArmStats>::iterator find(ArmId arm) {
    auto it = lower_bound(arm);
    return (it != slots_.end() && it->arm == arm) ? it : slots_.end();
  }

  std::vector<ArmStats>::const_iterator find(ArmId arm) const {
    return const_cast<BoundedArmMemory*>(this)->find(arm);
  }

  std::size_t capacity_;
  std::size_t high_water_ = 0;
  std::vector<ArmStats> slots_;
};

}  // namespace banditsim
