#pragma once

#include <cstdint>
#include <vector>

namespace banditsim {

// Arms are identified by 1-based ids. For a finite instance the id is the
// position in the instance definition; for a reservoir it is the sampling
// order.
using ArmId = std::uint32_t;

struct PullEvent {
  ArmId arm = 0;
  double reward = 0.0;

  friend bool operator==(const PullEvent&, const PullEvent&) = default;
};

using PullLog = std::vector<PullEvent>;

}  // namespace banditsim
