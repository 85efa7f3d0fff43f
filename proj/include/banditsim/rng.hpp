#pragma once

#include <cmath>
#include <cstdint>
#include <random>

#include "banditsim/errors.hpp"

namespace banditsim {

// Deterministic random stream for one simulation run. The whole stream is a
// function of the 64-bit seed alone, so replicate i of an experiment
// (seed_i = base_seed + i) can be replayed in isolation and runs can be
// fanned out across threads without changing any output byte.
//
// The engine is std::mt19937_64, whose raw output is pinned by the standard.
// The distribution transforms live here instead of going through
// <random>'s distribution classes, because those are free to differ between
// standard libraries.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next_u64() { return engine_(); }

  // Uniform on [0, 1) with 53-bit resolution.
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  // Uniform integer in [0, n), rejection-sampled so every value is equally
  // likely.
  std::uint64_t uniform_below(std::uint64_t n) {
    if (n == 0) throw InvalidParameterError("uniform_below: n must be positive");
    const std::uint64_t threshold = (~n + 1) % n;  // 2^64 mod n
    for (;;) {
      const std::uint64_t r = engine_();
      if (r >= threshold) return r % n;
    }
  }

  // Bernoulli reward in {0, 1}. p = 1 always succeeds, p = 0 never does.
  double bernoulli(double p) { return uniform() < p ? 1.0 : 0.0; }

  // Standard normal via Box-Muller; two uniforms per draw, no cached spare.
  double normal() {
    const double u1 = 1.0 - uniform();  // (0, 1]
    const double u2 = uniform();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586476925286766559 * u2);
  }

  // Gamma(shape, 1) by Marsaglia-Tsang squeeze; shape < 1 is boosted through
  // Gamma(shape + 1).
  double gamma(double shape) {
    if (shape <= 0.0) throw InvalidParameterError("gamma: shape must be positive");
    if (shape < 1.0) {
      const double u = 1.0 - uniform();
      return gamma(shape + 1.0) * std::pow(u, 1.0 / shape);
    }
    const double d = shape - 1.0 / 3.0;
    const double c = 1.0 / std::sqrt(9.0 * d);
    for (;;) {
      double x;
      double v;
      do {
        x = normal();
        v = 1.0 + c * x;
      } while (v <= 0.0);
      v = v * v * v;
      const double u = 1.0 - uniform();
      if (u < 1.0 - 0.0331 * x * x * x * x) return d * v;
      if (std::log(u) < 0.5 * x * x + d * (1.0 - v + std::log(v))) return d * v;
    }
  }

  // Beta(a, b) as a ratio of gammas.
  double beta(double a, double b) {
    const double ga = gamma(a);
    const double gb = gamma(b);
    return ga / (ga + gb);
  }

 private:
  std::mt19937_64 engine_;
};

// Fisher-Yates shuffle driven by the run's stream; std::shuffle is not used
// because its draw sequence is implementation-defined.
template <typename T>
void shuffle(std::vector<T>& values, Rng& rng) {
  for (std::size_t i = values.size(); i > 1; --i) {
    const std::size_t j = static_cast<std::size_t>(rng.uniform_below(i));
    std::swap(values[i - 1], values[j]);
  }
}

}  // namespace banditsim
