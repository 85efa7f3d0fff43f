#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "banditsim/beta_math.hpp"
#include "banditsim/errors.hpp"
#include "banditsim/rng.hpp"
#include "banditsim/types.hpp"

namespace banditsim {

// Prior over the (normalized) mean of a freshly sampled arm. PointMass puts
// every arm exactly at mu_star and exists for degenerate-regret tests.
enum class MeanPrior { Beta05_2, Uniform, PointMass };

// An infinite pool of Bernoulli arms. Sampling an arm draws its hidden mean
// as mu_star * X with X from the prior, assigns the next id, and remembers
// the mean so pulls and regret accounting can refer back to it. Algorithms
// never see the means directly.
class ArmReservoir {
 public:
  ArmReservoir(MeanPrior prior, double mu_star) : prior_(prior), mu_star_(mu_star) {
    if (!(mu_star > 0.0) || !(mu_star <= 1.0)) {
      throw InvalidParameterError("reservoir mu_star must lie in (0,1]");
    }
  }

  MeanPrior prior() const { return prior_; }
  double mu_star() const { return mu_star_; }
  std::size_t arms_sampled() const { return means_.size(); }

  ArmId sample_arm(Rng& rng) {
    means_.push_back(mu_star_ * draw_normalized_mean(rng));
    return static_cast<ArmId>(means_.size());
  }

  double true_mean(ArmId arm) const {
    check_arm(arm);
    return means_[arm - 1];
  }

  double pull(ArmId arm, Rng& rng) const {
    check_arm(arm);
    return rng.bernoulli(means_[arm - 1]);
  }

 private:
  double draw_normalized_mean(Rng& rng) {
    switch (prior_) {
      case MeanPrior::Uniform:
        return rng.uniform();
      case MeanPrior::Beta05_2:
        // Inverse-CDF draw; one uniform per arm keeps the stream layout simple.
        return inverse_regularized_incomplete_beta(0.5, 2.0, rng.uniform(), 1e-15);
      case MeanPrior::PointMass:
        return 1.0;
    }
    throw InvalidParameterError("unknown mean prior");
  }

  void check_arm(ArmId arm) const {
    if (arm < 1 || arm > means_.size()) {
      throw MissingArmError("no sampled arm with id " + std::to_string(arm));
    }
  }

  MeanPrior prior_;
  double mu_star_;
  std::vector<double> means_;
};

inline ArmId sample_arm(ArmReservoir& reservoir, Rng& rng) { return reservoir.sample_arm(rng); }

inline double pull(const ArmReservoir& reservoir, ArmId arm, Rng& rng) {
  return reservoir.pull(arm, rng);
}

// The (1-rho)-th quantile of the arm-mean distribution:
// mu_rho = inf{x : Pr{mu_a <= x} >= 1 - rho}. Closed form for the uniform
// prior, numeric inverse CDF (bisection, 1e-9 absolute) for Beta(0.5, 2).
inline double quantile_mu_rho(const ArmReservoir& reservoir, double rho) {
  if (!(rho > 0.0) || !(rho < 1.0)) {
    throw InvalidParameterError("quantile_mu_rho: rho must lie in (0,1)");
  }
  switch (reservoir.prior()) {
    case MeanPrior::Uniform:
      return reservoir.mu_star() * (1.0 - rho);
    case MeanPrior::Beta05_2:
      return reservoir.mu_star() *
             inverse_regularized_incomplete_beta(0.5, 2.0, 1.0 - rho, 1e-9);
    case MeanPrior::PointMass:
      return reservoir.mu_star();
  }
  throw InvalidParameterError("unknown mean prior");
}

}  // namespace banditsim
