#pragma once

#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

#include "banditsim/errors.hpp"

namespace banditsim {

// Closed-form schedule and bound quantities. The regret bounds set every
// unknown universal constant to 1, so they are useful as shape and
// monotonicity references, never as absolute pass/fail values.
//
// Log convention: log2 is written out explicitly, std::log is natural.

struct BoundTerm {
  std::string name;
  double value = 0.0;
};

struct BoundReport {
  double value = 0.0;
  std::vector<BoundTerm> terms;
};

// Sub-phases per phase: ceil((K-1)/(M-1)). Only defined for the constrained
// regime M < K.
inline std::uint64_t subphase_count(std::uint64_t num_arms, std::uint64_t memory) {
  if (memory < 2) throw PreconditionError("subphase_count needs M >= 2");
  if (memory >= num_arms) {
    throw PreconditionError("subphase_count is not applicable for M >= K");
  }
  return (num_arms - 2) / (memory - 1) + 1;
}

// Upper bound on the number of phases for horizon T: ceil(log2(2T/(MK))),
// valid for T > 2MK. Computed by exact integer comparison, not floating log.
inline std::uint64_t phase_count_bound(std::uint64_t num_arms, std::uint64_t memory,
                                       std::uint64_t horizon) {
  if (memory < 2 || memory >= num_arms) {
    throw PreconditionError("phase_count_bound needs 2 <= M < K");
  }
  const std::uint64_t mk = memory * num_arms;
  if (horizon <= 2 * mk) {
    throw PreconditionError("phase_count_bound needs T > 2MK");
  }
  if (horizon > (std::uint64_t{1} << 62)) {
    throw PreconditionError("phase_count_bound: horizon too large");
  }
  // smallest x with 2^x * MK >= 2T, by exact integer doubling
  std::uint64_t x = 0;
  std::uint64_t value = mk;
  while (value < 2 * horizon) {
    value *= 2;
    ++x;
  }
  return x;
}

// Finite-instance regret bound shape: KM + (K^{3/2}/M) sqrt(T log2(T/(KM))).
inline BoundReport finite_regret_bound(std::uint64_t num_arms, std::uint64_t memory,
                                       std::uint64_t horizon) {
  if (num_arms < 3) throw PreconditionError("finite_regret_bound needs K >= 3");
  if (memory < 2 || memory >= num_arms) {
    throw PreconditionError("finite_regret_bound needs 2 <= M < K");
  }
  if (horizon <= num_arms * memory * memory * (memory + 2)) {
    throw PreconditionError("finite_regret_bound needs T > K*M^2*(M+2)");
  }
  const double k = static_cast<double>(num_arms);
  const double m = static_cast<double>(memory);
  const double t = static_cast<double>(horizon);
  const double memory_term = k * m;
  const double exploration_term =
      std::pow(k, 1.5) / m * std::sqrt(t * std::log2(t / (k * m)));
  return BoundReport{memory_term + exploration_term,
                     {{"memory", memory_term}, {"exploration", exploration_term}}};
}

struct GammaMax {
  double value = 0.0;   // max of log2(log2 x) / log2 x
  double arg = 0.0;     // the maximizing x
};

// Numeric maximization of log2(log2 x) / log2 x. In y = log2 x the target
// log2(y)/y is unimodal with its peak near y = e, so ternary search on
// y in [1.5, 10] nails it.
inline GammaMax gamma_constant_detail() {
  auto g = [](double y) { return std::log2(y) / y; };
  double lo = 1.5;
  double hi = 10.0;
  for (int i = 0; i < 200; ++i) {
    const double m1 = lo + (hi - lo) / 3.0;
    const double m2 = hi - (hi - lo) / 3.0;
    if (g(m1) < g(m2)) {
      lo = m1;
    } else {
      hi = m2;
    }
  }
  const double y = 0.5 * (lo + hi);
  return GammaMax{g(y), std::exp2(y)};
}

inline double gamma_constant() { return gamma_constant_detail().value; }

// First round index from which the sampled arm set is provably large enough:
// ceil((1/alpha) log2((1/rho) log2(1/rho)) - log2 B), floored at 1.
inline int r_star(double rho, double alpha, double base_horizon) {
  if (!(rho > 0.0) || !(rho < 1.0)) throw PreconditionError("r_star needs rho in (0,1)");
  if (!(alpha > 0.0) || !(alpha < 1.0)) throw PreconditionError("r_star needs alpha in (0,1)");
  if (!(base_horizon >= 1.0)) throw PreconditionError("r_star needs B >= 1");
  const double inner = (1.0 / rho) * std::log2(1.0 / rho);
  const double raw = std::ceil(std::log2(inner) / alpha - std::log2(base_horizon));
  return raw < 1.0 ? 1 : static_cast<int>(raw);
}

// Probability that a set of n sampled arms misses the top rho fraction.
inline double pr_empty(double rho, std::uint64_t n) {
  if (!(rho > 0.0) || !(rho < 1.0)) throw PreconditionError("pr_empty needs rho in (0,1)");
  return std::pow(1.0 - rho, static_cast<double>(n));
}

// Quantile-regret bound shape:
// ((1/rho) log2(1/rho))^(1/alpha) + M T^alpha
//   + T^((1+3 alpha)/2) sqrt(log2(M)/M^2 * log2(T/M)).
inline BoundReport quantile_regret_bound(double rho, std::uint64_t memory,
                                         std::uint64_t horizon, double alpha) {
  if (!(rho > 0.0) || !(rho < 1.0)) throw PreconditionError("quantile_regret_bound needs rho in (0,1)");
  if (!(alpha > 0.0) || !(alpha < 1.0)) {
    throw PreconditionError("quantile_regret_bound needs alpha in (0,1)");
  }
  if (memory < 2) throw PreconditionError("quantile_regret_bound needs M >= 2");
  const double m = static_cast<double>(memory);
  const double t = static_cast<double>(horizon);
  const double quantile_term = std::pow((1.0 / rho) * std::log2(1.0 / rho), 1.0 / alpha);
  const double memory_term = m * std::pow(t, alpha);
  const double exploration_term =
      std::pow(t, (1.0 + 3.0 * alpha) / 2.0) * std::sqrt(std::log2(m) / (m * m) * std::log2(t / m));
  return BoundReport{quantile_term + memory_term + exploration_term,
                     {{"quantile", quantile_term},
                      {"memory", memory_term},
                      {"exploration", exploration_term}}};
}

}  // namespace banditsim
