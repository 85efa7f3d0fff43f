#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "banditsim/errors.hpp"
#include "banditsim/rng.hpp"
#include "banditsim/types.hpp"

namespace banditsim {

enum class DistributionKind { Bernoulli };

struct ArmDistribution {
  DistributionKind kind = DistributionKind::Bernoulli;
  double mean = 0.0;
};

// A fixed K-armed Bernoulli instance. Arms are addressed by 1-based id.
// Immutable after construction; algorithms see rewards only through pull().
class FiniteInstance {
 public:
  explicit FiniteInstance(std::vector<double> means) {
    if (means.size() < 2) {
      throw InvalidInstanceError("finite instance needs at least 2 arms");
    }
    arms_.reserve(means.size());
    for (double m : means) {
      if (!(m >= 0.0) || !(m <= 1.0)) {
        throw InvalidInstanceError("arm mean must lie in [0,1], got " + std::to_string(m));
      }
      arms_.push_back(ArmDistribution{DistributionKind::Bernoulli, m});
    }
    mu_star_ = 0.0;
    for (const ArmDistribution& a : arms_) mu_star_ = std::max(mu_star_, a.mean);
  }

  std::size_t num_arms() const { return arms_.size(); }
  double mu_star() const { return mu_star_; }

  double true_mean(ArmId arm) const {
    check_arm(arm);
    return arms_[arm - 1].mean;
  }

  double pull(ArmId arm, Rng& rng) const {
    check_arm(arm);
    return rng.bernoulli(arms_[arm - 1].mean);
  }

  std::vector<ArmId> arm_ids() const {
    std::vector<ArmId> ids(arms_.size());
    for (std::size_t i = 0; i < ids.size(); ++i) ids[i] = static_cast<ArmId>(i + 1);
    return ids;
  }

 private:
  void check_arm(ArmId arm) const {
    if (arm < 1 || arm > arms_.size()) {
      throw MissingArmError("no arm with id " + std::to_string(arm));
    }
  }

  std::vector<ArmDistribution> arms_;
  double mu_star_ = 0.0;
};

// K arms with means linearly spaced from 0.99 down to 0.01.
inline FiniteInstance make_linear_instance(std::size_t num_arms) {
  if (num_arms < 2) throw InvalidInstanceError("linear instance needs K >= 2");
  std::vector<double> means(num_arms);
  for (std::size_t i = 0; i < num_arms; ++i) {
    means[i] = 0.99 - 0.98 * static_cast<double>(i) / static_cast<double>(num_arms - 1);
  }
  return FiniteInstance(std::move(means));
}

// K arms with a power-law gap profile: mu_1 = 0.99 and for i > 1
// mu_i = 0.01 + 0.99 - 0.98 * ((i-1)/(K-1))^alpha. The i > 1 formula is used
// verbatim; its i -> 1 limit exceeds mu_1, so very small exponents produce an
// instance whose best arm is not arm 1. mu_star always reflects the actual
// maximum.
inline FiniteInstance make_alpha_instance(std::size_t num_arms, double alpha) {
  if (num_arms < 2) throw InvalidInstanceError("alpha instance needs K >= 2");
  if (!(alpha > 0.0)) throw InvalidParameterError("alpha instance needs alpha > 0");
  constexpr double kTopMean = 0.99;
  std::vector<double> means(num_arms);
  means[0] = kTopMean;
  for (std::size_t i = 1; i < num_arms; ++i) {
    const double frac = static_cast<double>(i) / static_cast<double>(num_arms - 1);
    means[i] = 0.01 + kTopMean - (kTopMean - 0.01) * std::pow(frac, alpha);
  }
  return FiniteInstance(std::move(means));
}

inline double pull(const FiniteInstance& instance, ArmId arm, Rng& rng) {
  return instance.pull(arm, rng);
}

}  // namespace banditsim
